//! Randomized invariants, seeded through proptest.

mod common;

use freeharm::calculus::{dird, laplacian_ell};
use freeharm::cert::{psd_certificate_doc, subharmonic_doc, verify_cert};
use freeharm::harmonic::{decompose_main, harmonic_kernel_basis, try_is_ell_harmonic};
use freeharm::nonsym::{alpha_components, apply_alpha, sx_collapse, AlphaTuple};
use freeharm::subharmonic::{
    gram_rep, is_subharmonic, psd_check, random_tuple, sample_matrix_positivity, split_sym_harm,
    Verdict,
};
use freeharm::{evaluate, format_poly, parse_poly, FreePoly, Letter, Matrix, Mode, Scalar};
use proptest::prelude::*;
use rand::Rng;

fn mode(nonsym: bool) -> Mode {
    if nonsym {
        Mode::Nonsymmetric
    } else {
        Mode::Symmetric
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(seed in any::<u64>(), g in 1usize..4, nonsym in any::<bool>()) {
        let mut r = common::rng(seed);
        let p = common::poly(&mut r, g, mode(nonsym), 4, 5, true);
        let back = parse_poly(&format_poly(&p), mode(nonsym), Some(g)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gram_rep_is_exact_and_unique(seed in any::<u64>(), g in 1usize..4, nonsym in any::<bool>()) {
        let mut r = common::rng(seed);
        let f = common::homogeneous(&mut r, g, mode(nonsym), 2, 3, false);
        let q = common::homogeneous(&mut r, g, mode(nonsym), 4, 2, false);
        let p = &(&f.transpose() * &f) + &(&q + &q.transpose());
        let rep = gram_rep(&p).unwrap();
        prop_assert_eq!(rep.expand().unwrap(), p.clone());
        prop_assert_eq!(rep.m.transpose(), rep.m.clone());
        // Any matrix expanding to p over the same basis must equal the Gram matrix.
        let n = rep.basis.len();
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        let mut other = rep.clone();
        other.m[(a, b)] = &other.m[(a, b)] + &Scalar::one();
        prop_assert_ne!(other.expand().unwrap(), p);
    }

    #[test]
    fn psd_certificates_replay(seed in any::<u64>(), k in 1usize..6) {
        let mut r = common::rng(seed);
        let b = Matrix::from_rows((0..k).map(|_| (0..k).map(|_| Scalar::ratio(r.gen_range(-3..=3), r.gen_range(1..=2))).collect()).collect()).unwrap();
        let m = if r.gen_bool(0.5) { b.transpose().mul(&b).unwrap() } else { b.add(&b.transpose()).unwrap() };
        let c = psd_check(&m).unwrap();
        prop_assert!(c.verify(&m));
        // Oracle: floating eigenvalues agree with the exact verdict away from zero.
        let f = nalgebra::DMatrix::from_fn(k, k, |i, j| m[(i, j)].to_f64().unwrap());
        let lo = nalgebra::SymmetricEigen::new(f).eigenvalues.min();
        if lo < -1e-9 { prop_assert!(!c.is_psd()); }
        if lo > 1e-9 { prop_assert!(c.is_psd()); }
        let doc = psd_certificate_doc(&m, &c);
        prop_assert!(verify_cert(&doc).is_ok());
        let mut forged = doc.clone();
        forged["verdict"] = serde_json::json!(if c.is_psd() { "not-psd" } else { "psd" });
        prop_assert!(verify_cert(&forged).is_err());
    }

    #[test]
    fn subharmonic_certificates_are_sound(seed in any::<u64>(), g in 1usize..4) {
        let mut r = common::rng(seed);
        let p = common::poly(&mut r, g, Mode::Symmetric, 4, 4, false);
        let report = is_subharmonic(&p).unwrap();
        prop_assert!(verify_cert(&subharmonic_doc(&p, &report)).is_ok());
        if report.verdict == Verdict::Subharmonic {
            for n in [2, 3] {
                prop_assert!(sample_matrix_positivity(&p, n, 20, seed).unwrap().is_none());
            }
        }
        if sample_matrix_positivity(&p, 2, 20, seed).unwrap().is_some() {
            prop_assert_ne!(report.verdict, Verdict::Subharmonic);
        }
    }

    #[test]
    fn squares_plus_harmonics_are_subharmonic(seed in any::<u64>(), g in 2usize..4, d in 1usize..3) {
        let mut r = common::rng(seed);
        let f = common::harmonic(&mut r, g, d, 2, Mode::Symmetric, true);
        let h = common::harmonic(&mut r, g, 2 * d, 2, Mode::Symmetric, true);
        let p = &(&f.transpose() * &f) + &h;
        prop_assert_eq!(is_subharmonic(&p).unwrap().verdict, Verdict::Subharmonic);
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), g in 1usize..4) {
        let mut r = common::rng(seed);
        let p = common::poly(&mut r, g, Mode::Symmetric, 3, 4, false);
        let q = common::poly(&mut r, g, Mode::Symmetric, 3, 4, false);
        let (x, _) = random_tuple(g, 3, true, seed);
        let lhs = evaluate(&(&p * &q), &x).unwrap();
        let rhs = evaluate(&p, &x).unwrap() * evaluate(&q, &x).unwrap();
        prop_assert!((lhs - &rhs).abs().max() <= 1e-9 * (1.0 + rhs.abs().max()));
        let t = evaluate(&p.transpose(), &x).unwrap();
        prop_assert!((t - evaluate(&p, &x).unwrap().transpose()).abs().max() < 1e-9 * (1.0 + rhs.abs().max()));
    }

    #[test]
    fn laplacian_is_the_sum_of_second_derivatives(seed in any::<u64>(), g in 1usize..4, nonsym in any::<bool>()) {
        let mut r = common::rng(seed);
        let p = common::poly(&mut r, g, mode(nonsym), 4, 4, true);
        let mut sum = FreePoly::zero(g, mode(nonsym));
        for i in 1..=g {
            sum = &sum + &dird(&dird(&p, i, Letter::h()).unwrap(), i, Letter::h()).unwrap();
        }
        prop_assert_eq!(laplacian_ell(&p, 2).unwrap(), sum);
    }

    #[test]
    fn alpha_conjugation(seed in any::<u64>(), d in 1usize..5) {
        let mut r = common::rng(seed);
        let p = common::homogeneous(&mut r, 2, Mode::Symmetric, d, 4, true);
        let alphas = AlphaTuple::all(d);
        let a = &alphas[r.gen_range(0..alphas.len())];
        let lhs = apply_alpha(&p, a).unwrap().transpose();
        prop_assert_eq!(lhs, apply_alpha(&p.transpose(), &a.transpose()).unwrap());
        prop_assert_eq!(sx_collapse(&apply_alpha(&p, a).unwrap()), p.clone());
    }

    #[test]
    fn symmetric_patterns_preserve_subharmonicity(seed in any::<u64>(), d in 1usize..3) {
        let mut r = common::rng(seed);
        let p = if r.gen_bool(0.5) {
            let f = common::harmonic(&mut r, 2, d, 2, Mode::Symmetric, true);
            &(&f.transpose() * &f) + &common::harmonic(&mut r, 2, 2 * d, 2, Mode::Symmetric, true)
        } else {
            let q = common::homogeneous(&mut r, 2, Mode::Symmetric, 2 * d, 3, false);
            &q + &q.transpose()
        };
        let symmetric: Vec<AlphaTuple> = AlphaTuple::all(2 * d).into_iter().filter(|a| a.is_symmetric()).collect();
        let a = &symmetric[r.gen_range(0..symmetric.len())];
        let base = is_subharmonic(&p).unwrap().verdict;
        let conj = is_subharmonic(&apply_alpha(&p, a).unwrap()).unwrap().verdict;
        prop_assert_eq!(base, conj, "pattern {}", a);
    }

    #[test]
    fn laplacian_of_a_harmonic_square(seed in any::<u64>(), g in 2usize..4, d in 1usize..4) {
        let mut r = common::rng(seed);
        let p = common::harmonic(&mut r, g, d, 2, Mode::Symmetric, false);
        let mut rhs = FreePoly::zero(g, Mode::Symmetric);
        for i in 1..=g {
            let di = dird(&p, i, Letter::h()).unwrap();
            rhs = &rhs + &(&di.transpose() * &di).scale(&Scalar::from_int(2));
        }
        prop_assert_eq!(laplacian_ell(&(&p.transpose() * &p), 2).unwrap(), rhs);
    }

    #[test]
    fn nonsym_components_collapse_consistently(seed in any::<u64>(), g in 1usize..3, d in 1usize..4) {
        let mut r = common::rng(seed);
        let p = common::homogeneous(&mut r, g, Mode::Nonsymmetric, d, 6, true);
        for (a, piece) in alpha_components(&p) {
            prop_assert_eq!(apply_alpha(&sx_collapse(&piece), &a).unwrap(), piece);
        }
    }

    #[test]
    fn symmetric_harmonic_split(seed in any::<u64>(), g in 2usize..4) {
        let mut r = common::rng(seed);
        let f = common::harmonic(&mut r, g, 2, 2, Mode::Symmetric, true);
        let w = common::harmonic(&mut r, g, 4, 2, Mode::Symmetric, true);
        let p = &(&f.transpose() * &f) + &w;
        let (s, h) = split_sym_harm(&p).unwrap();
        prop_assert_eq!(&s + &h, p);
        prop_assert_eq!(s.transpose(), s.clone());
        prop_assert_eq!(h.transpose(), h.scale(&Scalar::from_int(-1)));
        prop_assert!(try_is_ell_harmonic(&h, 2).unwrap());
    }
}

#[test]
fn random_kernel_combinations_decompose() {
    let mut r = common::rng(11);
    for (g, d, ell) in [(2, 3, 2), (3, 3, 2), (3, 2, 3), (2, 4, 3)] {
        let basis = harmonic_kernel_basis(g, d, ell).unwrap();
        for _ in 0..5 {
            let mut p = FreePoly::zero(g, Mode::Symmetric);
            for b in &basis {
                p = &p + &b.scale(&common::scalar(&mut r, true));
            }
            let dec = decompose_main(&p, ell).unwrap();
            assert_eq!(
                dec.expand().unwrap(),
                p.with_alphabet(dec.alphabet()).unwrap()
            );
        }
    }
}
