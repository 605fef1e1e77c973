//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use freeharm::harmonic::harmonic_kernel_basis_in;
use freeharm::{CommPoly, FreePoly, Letter, Mode, Scalar, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// A small Gaussian rational, zero excluded.
pub fn scalar(r: &mut SplitMix64, complex: bool) -> Scalar {
    loop {
        let re = Scalar::ratio(r.gen_range(-4..=4), r.gen_range(1..=3));
        let c = if complex && r.gen_bool(0.3) {
            Scalar::complex(re, Scalar::from_int(r.gen_range(-2..=2)))
        } else {
            re
        };
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn small_int(r: &mut SplitMix64) -> Scalar {
    loop {
        let v = r.gen_range(-3..=3);
        if v != 0 {
            return Scalar::from_int(v);
        }
    }
}

pub fn letter(r: &mut SplitMix64, g: usize, mode: Mode) -> Letter {
    let l = Letter::x(r.gen_range(1..=g));
    if mode == Mode::Nonsymmetric && r.gen_bool(0.5) {
        l.toggled()
    } else {
        l
    }
}

pub fn word(r: &mut SplitMix64, g: usize, d: usize, mode: Mode) -> Word {
    Word::from_letters((0..d).map(|_| letter(r, g, mode)))
}

/// Up to `terms` words of length at most `max_d`.
pub fn poly(
    r: &mut SplitMix64,
    g: usize,
    mode: Mode,
    max_d: usize,
    terms: usize,
    complex: bool,
) -> FreePoly {
    let mut p = FreePoly::zero(g, mode);
    for _ in 0..r.gen_range(1..=terms) {
        let d = r.gen_range(0..=max_d);
        let m = FreePoly::monomial(g, mode, word(r, g, d, mode), scalar(r, complex)).unwrap();
        p = &p + &m;
    }
    p
}

pub fn homogeneous(
    r: &mut SplitMix64,
    g: usize,
    mode: Mode,
    d: usize,
    terms: usize,
    complex: bool,
) -> FreePoly {
    let mut p = FreePoly::zero(g, mode);
    for _ in 0..r.gen_range(1..=terms) {
        let m = FreePoly::monomial(g, mode, word(r, g, d, mode), scalar(r, complex)).unwrap();
        p = &p + &m;
    }
    p
}

/// A commuting polynomial with up to `terms` monomials of degree at most `max_d`.
pub fn comm(r: &mut SplitMix64, g: usize, max_d: u32, terms: usize) -> CommPoly {
    let t: Vec<(Vec<u32>, Scalar)> = (0..r.gen_range(1..=terms))
        .map(|_| {
            let deg = r.gen_range(1..=max_d);
            let mut e = vec![0u32; g];
            for _ in 0..deg {
                e[r.gen_range(0..g)] += 1;
            }
            (e, small_int(r))
        })
        .collect();
    CommPoly::from_terms(g, t).unwrap()
}

pub fn homogeneous_comm(r: &mut SplitMix64, g: usize, deg: u32, terms: usize) -> CommPoly {
    let t: Vec<(Vec<u32>, Scalar)> = (0..r.gen_range(1..=terms))
        .map(|_| {
            let mut e = vec![0u32; g];
            for _ in 0..deg {
                e[r.gen_range(0..g)] += 1;
            }
            (e, small_int(r))
        })
        .collect();
    CommPoly::from_terms(g, t).unwrap()
}

/// A random combination of the degree-`d` ℓ-harmonic kernel basis.
pub fn harmonic(
    r: &mut SplitMix64,
    g: usize,
    d: usize,
    ell: u32,
    mode: Mode,
    real: bool,
) -> FreePoly {
    let basis = harmonic_kernel_basis_in(g, d, ell, mode).unwrap();
    assert!(
        !basis.is_empty(),
        "no degree-{d} {ell}-harmonics in {g} variables"
    );
    let mut p = FreePoly::zero(g, mode);
    while p.is_zero() {
        for b in &basis {
            if r.gen_bool(0.5) {
                let c = if real { small_int(r) } else { scalar(r, true) };
                p = &p + &b.scale(&c);
            }
        }
    }
    p
}

/// Renames `x_k` to `x_{map[k-1]}` inside an alphabet of size `g`.
pub fn relabel(p: &FreePoly, map: &[usize], g: usize) -> FreePoly {
    let terms = p.terms().map(|(w, c)| {
        let w = Word::from_letters(w.iter().map(|l| match *l {
            Letter::Var { index, adjoint } => {
                Letter::x(map[index as usize - 1]).with_adjoint(adjoint)
            }
            other => other,
        }));
        (w, c.clone())
    });
    FreePoly::from_terms(g, p.mode(), terms).unwrap()
}

pub fn shuffle<T>(r: &mut SplitMix64, v: &mut [T]) {
    v.shuffle(r);
}
