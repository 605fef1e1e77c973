//! Subharmonicity: word Gram matrices, exact PSD certificates, harmonic Gram
//! forms, sum-of-squares structure and sampling-based refutation.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::calculus::laplacian_ell;
use crate::error::{Error, Result};
use crate::eval::{evaluate_with_direction, MatrixTuple};
use crate::harmonic::{harmonic_kernel_basis_in, try_is_ell_harmonic};
use crate::linalg::Matrix;
use crate::poly::FreePoly;
use crate::scalar::Scalar;
use crate::word::{Letter, Mode, Word};

/// `p = Σ_{u,v} M_{u,v} uᵀv` over a basis of words of half the degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GramRep {
    pub basis: Vec<Word>,
    pub m: Matrix,
    pub poly: FreePoly,
}

impl GramRep {
    pub fn expand(&self) -> Result<FreePoly> {
        let toggle = self.poly.mode() == Mode::Nonsymmetric;
        let mut out = FreePoly::zero(self.poly.g(), self.poly.mode());
        for (r, u) in self.basis.iter().enumerate() {
            let ut = u.transpose(toggle);
            for (c, v) in self.basis.iter().enumerate() {
                out.add_term(ut.concat(v), self.m[(r, c)].clone());
            }
        }
        Ok(out)
    }

    /// Drops basis words whose row and column vanish.
    pub fn trimmed(&self) -> GramRep {
        let keep: Vec<usize> = (0..self.basis.len())
            .filter(|&r| self.m.row(r).iter().any(|x| !x.is_zero()))
            .collect();
        let mut m = Matrix::zeros(keep.len(), keep.len());
        for (a, &r) in keep.iter().enumerate() {
            for (b, &c) in keep.iter().enumerate() {
                m[(a, b)] = self.m[(r, c)].clone();
            }
        }
        GramRep {
            basis: keep.iter().map(|&k| self.basis[k].clone()).collect(),
            m,
            poly: self.poly.clone(),
        }
    }
}

fn half_degree(p: &FreePoly) -> Result<usize> {
    p.require_real()?;
    if p.is_zero() {
        return Ok(0);
    }
    let d = p
        .homogeneous_degree()
        .ok_or(Error::NotHomogeneous(p.degree()))?;
    if d % 2 == 1 {
        return Err(Error::Precondition(format!(
            "Gram representations need even degree, found {d}"
        )));
    }
    Ok(d / 2)
}

/// The unique word Gram matrix of a symmetric homogeneous polynomial of even
/// degree over every word of half length in its active letters (plus their
/// adjoints in nonsymmetric mode); `h` counts as a letter.
pub fn gram_rep(p: &FreePoly) -> Result<GramRep> {
    let d = half_degree(p)?;
    if p.transpose() != *p {
        return Err(Error::NotSymmetric);
    }
    let toggle = p.mode() == Mode::Nonsymmetric;
    let mut letters: BTreeSet<Letter> = p.terms().flat_map(|(w, _)| w.0.clone()).collect();
    if toggle {
        letters = letters.iter().flat_map(|&l| [l, l.toggled()]).collect();
    }
    let basis: Vec<Word> = if d == 0 {
        vec![Word::empty()]
    } else {
        use itertools::Itertools;
        (0..d)
            .map(|_| letters.iter().copied())
            .multi_cartesian_product()
            .map(Word)
            .collect()
    };
    let index = |w: &Word| {
        basis
            .binary_search(w)
            .expect("basis covers the active letters")
    };
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (w, c) in p.terms() {
        let u = Word(w[..d].to_vec()).transpose(toggle);
        let v = Word(w[d..].to_vec());
        m[(index(&u), index(&v))] = c.clone();
    }
    Ok(GramRep {
        basis,
        m,
        poly: p.clone(),
    })
}

pub fn gram_rep_trimmed(p: &FreePoly) -> Result<GramRep> {
    Ok(gram_rep(p)?.trimmed())
}

/// Outcome of [`psd_check`], replayable by exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum PsdCertificate {
    /// `M = Pᵀ·diag(D)·P` with every `D_k ≥ 0`.
    Psd { p: Matrix, d: Vec<Scalar> },
    /// `vᵀ M v < 0`.
    NotPsd { witness: Vec<Scalar> },
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCertificate::Psd { .. })
    }

    pub fn verify(&self, m: &Matrix) -> bool {
        match self {
            PsdCertificate::Psd { p, d } => {
                if d.iter().any(|x| !x.is_real() || x.is_negative_real()) || p.rows() != d.len() {
                    return false;
                }
                p.transpose()
                    .mul(&Matrix::diagonal(d))
                    .and_then(|t| t.mul(p))
                    .map(|r| r == *m)
                    .unwrap_or(false)
            }
            PsdCertificate::NotPsd { witness } => matches!(
                m.quadratic_form(witness)
                    .map(|q| q.is_real() && q.is_negative_real()),
                Ok(true)
            ),
        }
    }
}

/// Exact symmetric elimination `M = L·D·Lᵀ`. A negative pivot, or a zero pivot
/// with a nonzero entry left in its row, yields a witness in the reduced
/// coordinates which is pulled back through `Lᵀ`.
pub fn psd_check(m: &Matrix) -> Result<PsdCertificate> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !m.is_real() {
        return Err(Error::ComplexCoefficient);
    }
    let n = m.rows();
    let mut s = m.clone();
    let mut l = Matrix::identity(n);
    let mut d = vec![Scalar::zero(); n];
    for k in 0..n {
        let pivot = s[(k, k)].clone();
        match pivot.real_sign()? {
            Ordering::Less => {
                let mut y = vec![Scalar::zero(); n];
                y[k] = Scalar::one();
                return Ok(PsdCertificate::NotPsd {
                    witness: pull_back(&l, &y)?,
                });
            }
            Ordering::Equal => {
                if let Some(j) = (k + 1..n).find(|&j| !s[(k, j)].is_zero()) {
                    // (t e_k + e_j)ᵀ S (t e_k + e_j) = 2 t b + S_jj, set to −1.
                    let b = s[(k, j)].clone();
                    let t = &(-&(&s[(j, j)] + &Scalar::one())) / &(&b * &Scalar::from_int(2));
                    let mut y = vec![Scalar::zero(); n];
                    y[k] = t;
                    y[j] = Scalar::one();
                    return Ok(PsdCertificate::NotPsd {
                        witness: pull_back(&l, &y)?,
                    });
                }
            }
            Ordering::Greater => {
                let inv = pivot.inv()?;
                for j in k + 1..n {
                    if s[(j, k)].is_zero() {
                        continue;
                    }
                    let f = &s[(j, k)] * &inv;
                    l[(j, k)] = f.clone();
                    for c in k..n {
                        if s[(k, c)].is_zero() {
                            continue;
                        }
                        let v = &s[(j, c)] - &(&f * &s[(k, c)]);
                        s[(j, c)] = v;
                    }
                }
                for j in k + 1..n {
                    s[(k, j)] = Scalar::zero();
                }
                for j in k + 1..n {
                    s[(j, k)] = Scalar::zero();
                }
                d[k] = pivot;
            }
        }
    }
    Ok(PsdCertificate::Psd {
        p: l.transpose(),
        d,
    })
}

/// Solves `Lᵀ x = y` for unit lower-triangular `L`.
fn pull_back(l: &Matrix, y: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = y.len();
    let mut x = y.to_vec();
    for i in (0..n).rev() {
        let mut acc = y[i].clone();
        for j in i + 1..n {
            if !l[(j, i)].is_zero() {
                acc -= &(&l[(j, i)] * &x[j]);
            }
        }
        x[i] = acc;
    }
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Subharmonic,
    NotSubharmonic,
    /// A non-homogeneous Laplacian whose inner blocks do not settle the question.
    Undecided,
}

/// One joint `(x, h)`-homogeneous block of the Laplacian. Odd blocks carry no
/// Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GramBlock {
    pub degree: usize,
    pub gram: Option<GramRep>,
    pub certificate: Option<PsdCertificate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubharmonicReport {
    pub verdict: Verdict,
    pub laplacian: FreePoly,
    /// A word whose coefficient differs from that of its transpose.
    pub asymmetry: Option<Word>,
    pub blocks: Vec<GramBlock>,
}

impl SubharmonicReport {
    pub fn is_subharmonic(&self) -> bool {
        self.verdict == Verdict::Subharmonic
    }

    fn block_ok(b: &GramBlock) -> bool {
        b.certificate
            .as_ref()
            .map(PsdCertificate::is_psd)
            .unwrap_or(false)
    }
}

/// Decides whether the Laplacian of `p` is a sum of squares, blockwise by
/// joint degree. The top and bottom blocks of a matrix-positive polynomial
/// must be matrix positive themselves, so a failure there is decisive; a
/// failure only in an inner block is reported as undecided.
pub fn is_subharmonic(p: &FreePoly) -> Result<SubharmonicReport> {
    p.require_real()?;
    let lap = laplacian_ell(p, 2)?;
    let lt = lap.transpose();
    if lt != lap {
        let word = lap
            .terms()
            .find(|(w, c)| lt.coeff(w) != **c)
            .or_else(|| lt.terms().find(|(w, _)| lap.coeff(w).is_zero()))
            .map(|(w, _)| w.clone());
        return Ok(SubharmonicReport {
            verdict: Verdict::NotSubharmonic,
            laplacian: lap,
            asymmetry: word,
            blocks: vec![],
        });
    }
    let mut blocks = Vec::new();
    for (degree, comp) in lap.components() {
        if degree % 2 == 1 {
            blocks.push(GramBlock {
                degree,
                gram: None,
                certificate: None,
            });
            continue;
        }
        let gram = gram_rep_trimmed(&comp)?;
        let cert = psd_check(&gram.m)?;
        blocks.push(GramBlock {
            degree,
            gram: Some(gram),
            certificate: Some(cert),
        });
    }
    let verdict = if blocks.iter().all(SubharmonicReport::block_ok) {
        Verdict::Subharmonic
    } else if !SubharmonicReport::block_ok(&blocks[0])
        || !SubharmonicReport::block_ok(blocks.last().expect("nonempty"))
    {
        Verdict::NotSubharmonic
    } else {
        Verdict::Undecided
    };
    Ok(SubharmonicReport {
        verdict,
        laplacian: lap,
        asymmetry: None,
        blocks,
    })
}

fn require_subharmonic(p: &FreePoly) -> Result<()> {
    if is_subharmonic(p)?.is_subharmonic() {
        Ok(())
    } else {
        Err(Error::NotSubharmonic)
    }
}

/// `p = Bᵀ·A·B` over a list of polynomials `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicGramRep {
    pub basis: Vec<FreePoly>,
    pub a: Matrix,
    pub poly: FreePoly,
}

impl HarmonicGramRep {
    pub fn expand(&self) -> Result<FreePoly> {
        quadratic_form_poly(&self.basis, &self.a, self.poly.g(), self.poly.mode())
    }
}

/// `Σ_{i,j} A_ij B_iᵀ B_j`.
pub fn quadratic_form_poly(
    basis: &[FreePoly],
    a: &Matrix,
    g: usize,
    mode: Mode,
) -> Result<FreePoly> {
    let mut out = FreePoly::zero(g, mode);
    for (i, bi) in basis.iter().enumerate() {
        let bt = bi.transpose();
        for (j, bj) in basis.iter().enumerate() {
            if !a[(i, j)].is_zero() {
                out = out.checked_add(&bt.checked_mul(bj)?.scale(&a[(i, j)]))?;
            }
        }
    }
    Ok(out)
}

/// Solves `p = Bᵀ A B` exactly for a general square `A`.
fn solve_gram(basis: &[FreePoly], p: &FreePoly) -> Result<Matrix> {
    let k = basis.len();
    let mut cols: Vec<FreePoly> = Vec::with_capacity(k * k);
    for bi in basis {
        let bt = bi.transpose();
        for bj in basis {
            cols.push(bt.checked_mul(bj)?);
        }
    }
    let mut rows: std::collections::BTreeMap<Word, usize> = std::collections::BTreeMap::new();
    for q in cols.iter().chain(std::iter::once(p)) {
        for (w, _) in q.terms() {
            let n = rows.len();
            rows.entry(w.clone()).or_insert(n);
        }
    }
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (c, q) in cols.iter().enumerate() {
        for (w, v) in q.terms() {
            m[(rows[w], c)] = v.clone();
        }
    }
    let mut rhs = vec![Scalar::zero(); rows.len()];
    for (w, v) in p.terms() {
        rhs[rows[w]] = v.clone();
    }
    let x = m.solve(&rhs)?.ok_or(Error::NoRepresentation)?;
    let mut a = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            a[(i, j)] = x[i * k + j].clone();
        }
    }
    Ok(a)
}

/// `p = H(x)ᵀ A H(x)` over the kernel basis of degree-`d` harmonics.
pub fn harmonic_gram_rep(p: &FreePoly) -> Result<HarmonicGramRep> {
    let d = half_degree(p)?;
    let basis = harmonic_kernel_basis_in(p.g(), d, 2, p.mode())?;
    harmonic_gram_rep_with_basis(p, &basis)
}

/// Same, over a caller-supplied basis of the degree-`d` harmonics.
pub fn harmonic_gram_rep_with_basis(p: &FreePoly, basis: &[FreePoly]) -> Result<HarmonicGramRep> {
    let d = half_degree(p)?;
    for b in basis {
        b.require_real()?;
        if !b.is_zero() && b.homogeneous_degree() != Some(d) {
            return Err(Error::DegreeMismatch {
                expected: d,
                found: b.degree(),
            });
        }
    }
    let a = solve_gram(basis, p)?;
    let rep = HarmonicGramRep {
        basis: basis.to_vec(),
        a,
        poly: p.clone(),
    };
    if rep.expand()? != *p {
        return Err(Error::NoRepresentation);
    }
    Ok(rep)
}

/// Weighted harmonic squares `Σ w_i h_iᵀ h_i = p` when the harmonic Gram
/// matrix is PSD; `None` otherwise, in which case `p` is not bounded below.
pub fn bounded_below_sos(p: &FreePoly) -> Result<Option<Vec<(Scalar, FreePoly)>>> {
    require_subharmonic(p)?;
    let rep = harmonic_gram_rep(p)?;
    if !rep.a.is_symmetric() {
        return Ok(None);
    }
    match psd_check(&rep.a)? {
        PsdCertificate::NotPsd { .. } => Ok(None),
        PsdCertificate::Psd { p: factor, d } => Ok(Some(weighted_rows(
            &factor,
            &d,
            &rep.basis,
            p.g(),
            p.mode(),
        ))),
    }
}

/// `(d_k, Σ_j P_kj B_j)` for the nonzero weights of a congruence `PᵀDP`.
fn weighted_rows(
    factor: &Matrix,
    d: &[Scalar],
    basis: &[FreePoly],
    g: usize,
    mode: Mode,
) -> Vec<(Scalar, FreePoly)> {
    let mut out = Vec::new();
    for (k, w) in d.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let mut h = FreePoly::zero(g, mode);
        for (j, b) in basis.iter().enumerate() {
            if !factor[(k, j)].is_zero() {
                h = &h + &b.scale(&factor[(k, j)]);
            }
        }
        out.push((w.clone(), h));
    }
    out
}

/// `p = Σ c_i R_iᵀ R_i + H` with harmonic `R_i` and `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoVarSos {
    pub squares: Vec<(Scalar, FreePoly)>,
    pub harmonic: FreePoly,
}

impl TwoVarSos {
    pub fn expand(&self) -> Result<FreePoly> {
        let mut acc = self.harmonic.clone();
        for (c, r) in &self.squares {
            acc = acc.checked_add(&r.transpose().checked_mul(r)?.scale(c))?;
        }
        Ok(acc)
    }
}

/// The degree-4 frame `(x1² − x2², x1x2 + x2x1, x1x2)`.
pub fn two_var_degree4_frame() -> Vec<FreePoly> {
    let m = Mode::Symmetric;
    let w = |i: &[usize]| FreePoly::word(2, m, i);
    vec![
        &w(&[1, 1]) - &w(&[2, 2]),
        &w(&[1, 2]) + &w(&[2, 1]),
        w(&[1, 2]),
    ]
}

/// Real and imaginary parts of `(x1 + i x2)^d`.
pub fn re_im_power(d: usize) -> Result<(FreePoly, FreePoly)> {
    let m = Mode::Symmetric;
    let z = &FreePoly::var(2, m, 1) + &FreePoly::var(2, m, 2).scale(&Scalar::i());
    let zd = z.pow(d as u32)?;
    let mut re = FreePoly::zero(2, m);
    let mut im = FreePoly::zero(2, m);
    for (w, c) in zd.terms() {
        re.add_term(w.clone(), Scalar::real(c.re().clone()));
        im.add_term(w.clone(), Scalar::real(c.im().clone()));
    }
    Ok((re, im))
}

/// Two-variable subharmonics as harmonic squares plus a harmonic.
///
/// For `d = 2` the symmetric part is written over the degree-4 frame as
/// `[[0,0,a],[0,b,c],[a,c,d]]` plus a harmonic, and replaced by the rank-one
/// completion `[[b a²/ρ², b a c/ρ², a],[b a c/ρ², b c²/ρ², c],[a,c,d]]`
/// with `ρ² = a² + c²`; the two differ by a harmonic frame matrix, so
/// everything stays rational.
pub fn two_var_sos_decompose(p: &FreePoly) -> Result<TwoVarSos> {
    if p.g() != 2 || p.mode() != Mode::Symmetric {
        return Err(Error::Precondition(
            "two symmetric variables expected".into(),
        ));
    }
    let d = half_degree(p)?;
    require_subharmonic(p)?;
    let (g, mode) = (2, Mode::Symmetric);
    let squares: Vec<(Scalar, FreePoly)> = match d {
        0 => vec![],
        1 => match deg2_normal_form(p)? {
            Deg2NormalForm::Symmetric { a, .. } if !a.is_zero() => {
                vec![(a, FreePoly::var(g, mode, 1))]
            }
            _ => vec![],
        },
        2 => {
            let frame = two_var_degree4_frame();
            let psym = (p + &p.transpose()).scale(&Scalar::ratio(1, 2));
            let s = harmonic_gram_rep_with_basis(&psym, &frame)?.a;
            let s = s.add(&s.transpose())?.scale(&Scalar::ratio(1, 2));
            let b = &s[(1, 1)] + &s[(0, 0)];
            let (a, c, dd) = (s[(0, 2)].clone(), s[(1, 2)].clone(), s[(2, 2)].clone());
            let rho2 = &(&a * &a) + &(&c * &c);
            let completed = if rho2.is_zero() {
                Matrix::from_rows(vec![
                    vec![Scalar::zero(), Scalar::zero(), Scalar::zero()],
                    vec![Scalar::zero(), b, Scalar::zero()],
                    vec![Scalar::zero(), Scalar::zero(), dd],
                ])?
            } else {
                let k = &b / &rho2;
                Matrix::from_rows(vec![
                    vec![&k * &(&a * &a), &k * &(&a * &c), a.clone()],
                    vec![&k * &(&a * &c), &k * &(&c * &c), c.clone()],
                    vec![a, c, dd],
                ])?
            };
            match psd_check(&completed)? {
                PsdCertificate::Psd { p: factor, d } => weighted_rows(&factor, &d, &frame, g, mode),
                PsdCertificate::NotPsd { .. } => return Err(Error::NotSubharmonic),
            }
        }
        _ => {
            let (re, im) = re_im_power(d)?;
            let a = harmonic_gram_rep_with_basis(p, &[re.clone(), im])?.a;
            let c = &a[(0, 0)] - &a[(1, 1)];
            if c.is_negative_real() {
                return Err(Error::NotSubharmonic);
            }
            if c.is_zero() {
                vec![]
            } else {
                vec![(c, re)]
            }
        }
    };
    let mut rest = p.clone();
    for (c, r) in &squares {
        rest = rest.checked_sub(&r.transpose().checked_mul(r)?.scale(c))?;
    }
    if !try_is_ell_harmonic(&rest, 2)? {
        return Err(Error::Precondition(
            "remainder after removing squares is not harmonic".into(),
        ));
    }
    Ok(TwoVarSos {
        squares,
        harmonic: rest,
    })
}

/// `((p + pᵀ)/2, (p − pᵀ)/2)` with the first part subharmonic and the second
/// harmonic.
pub fn split_sym_harm(p: &FreePoly) -> Result<(FreePoly, FreePoly)> {
    require_subharmonic(p)?;
    let pt = p.transpose();
    let half = Scalar::ratio(1, 2);
    let sym = (p + &pt).scale(&half);
    let anti = (p - &pt).scale(&half);
    if !try_is_ell_harmonic(&anti, 2)? || !is_subharmonic(&sym)?.is_subharmonic() {
        return Err(Error::Precondition(
            "symmetric/antisymmetric split failed its checks".into(),
        ));
    }
    Ok((sym, anti))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Deg2NormalForm {
    /// `p = a·x1² + harmonic`.
    Symmetric { a: Scalar, harmonic: FreePoly },
    /// `p = A x1ᵀx1 + B1 x1x1 + B2 x1ᵀx1ᵀ + C x1x1ᵀ + harmonic`, with the
    /// Laplacian `2 (hᵀ, h) [[A, B2], [B1, C]] (h, hᵀ)ᵀ`.
    Nonsymmetric { matrix: Matrix, harmonic: FreePoly },
}

impl Deg2NormalForm {
    pub fn is_subharmonic(&self) -> Result<bool> {
        match self {
            Deg2NormalForm::Symmetric { a, .. } => {
                Ok(!a.to_real().map(|_| a.is_negative_real())?)
            }
            Deg2NormalForm::Nonsymmetric { matrix, .. } => {
                Ok(matrix.is_symmetric() && psd_check(matrix)?.is_psd())
            }
        }
    }
}

pub fn deg2_normal_form(p: &FreePoly) -> Result<Deg2NormalForm> {
    if p.degree() > 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: p.degree(),
        });
    }
    let g = p.g();
    let mode = p.mode();
    let sum = |a: bool, b: bool| -> Scalar {
        (1..=g).fold(Scalar::zero(), |acc, i| {
            &acc + &p.coeff(&Word::from_letters([
                Letter::x(i).with_adjoint(a),
                Letter::x(i).with_adjoint(b),
            ]))
        })
    };
    let word = |a: bool, b: bool| {
        FreePoly::monomial(
            g,
            mode,
            Word::from_letters([Letter::x(1).with_adjoint(a), Letter::x(1).with_adjoint(b)]),
            Scalar::one(),
        )
    };
    let out = match mode {
        Mode::Symmetric => {
            let a = sum(false, false);
            let harmonic = p - &word(false, false)?.scale(&a);
            Deg2NormalForm::Symmetric { a, harmonic }
        }
        Mode::Nonsymmetric => {
            let (a, b1, b2, c) = (
                sum(true, false),
                sum(false, false),
                sum(true, true),
                sum(false, true),
            );
            let harmonic = p - &(&(&word(true, false)?.scale(&a)
                + &word(false, false)?.scale(&b1))
                + &(&word(true, true)?.scale(&b2) + &word(false, true)?.scale(&c)));
            Deg2NormalForm::Nonsymmetric {
                matrix: Matrix::from_rows(vec![vec![a, b2], vec![b1, c]])?,
                harmonic,
            }
        }
    };
    let h = match &out {
        Deg2NormalForm::Symmetric { harmonic, .. }
        | Deg2NormalForm::Nonsymmetric { harmonic, .. } => harmonic,
    };
    debug_assert!(try_is_ell_harmonic(h, 2)?);
    Ok(out)
}

/// A tuple at which the evaluated Laplacian has a negative eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub trial: u64,
    pub x: MatrixTuple,
    pub h: DMatrix<f64>,
    pub min_eigenvalue: f64,
}

pub const SAMPLING_TOLERANCE: f64 = -1e-9;

fn random_matrix(rng: &mut SplitMix64, n: usize, symmetric: bool) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if symmetric && j < i {
                m[(i, j)] = m[(j, i)];
            } else {
                m[(i, j)] = rng.gen_range(-1.0..=1.0);
            }
        }
    }
    m
}

/// Random `(X, H)` with entries uniform in `[−1, 1]`; trial `t` uses a
/// SplitMix64 stream seeded with `seed + t`.
pub fn random_tuple(g: usize, n: usize, symmetric: bool, seed: u64) -> (MatrixTuple, DMatrix<f64>) {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mats: Vec<DMatrix<f64>> = (0..g)
        .map(|_| random_matrix(&mut rng, n, symmetric))
        .collect();
    let h = random_matrix(&mut rng, n, symmetric);
    (
        MatrixTuple::new(mats, symmetric).expect("generated shapes agree"),
        h,
    )
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let s = (m + m.transpose()) * 0.5;
    SymmetricEigen::new(s)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Looks for a tuple refuting matrix positivity of the Laplacian of `p`.
pub fn sample_matrix_positivity(
    p: &FreePoly,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<Option<Counterexample>> {
    p.require_real()?;
    let lap = laplacian_ell(p, 2)?;
    if lap.is_zero() {
        return Ok(None);
    }
    let symmetric = p.mode() == Mode::Symmetric;
    for trial in 0..trials {
        let (x, h) = random_tuple(p.g(), n, symmetric, seed.wrapping_add(trial));
        let value = evaluate_with_direction(&lap, &x, Some(&h))?;
        let e = min_eigenvalue(&value);
        if e < SAMPLING_TOLERANCE {
            return Ok(Some(Counterexample {
                trial,
                x,
                h,
                min_eigenvalue: e,
            }));
        }
    }
    Ok(None)
}

/// Central-difference Laplacian of `y1ᵀ p(X) y2` in the entry coordinates of
/// `X` (upper-triangular entries for symmetric tuples, all entries
/// otherwise), relative to the sum of the absolute second differences.
pub fn numeric_laplacian_bridge(
    p: &FreePoly,
    x: &MatrixTuple,
    y1: &DVector<f64>,
    y2: &DVector<f64>,
    t: f64,
) -> Result<f64> {
    let n = x.n();
    let f = |mats: &[DMatrix<f64>]| -> Result<f64> {
        let tuple = MatrixTuple::new(mats.to_vec(), x.is_symmetric())?;
        let v = crate::eval::evaluate(p, &tuple)?;
        Ok((y1.transpose() * v * y2)[(0, 0)])
    };
    let base = f(x.matrices())?;
    let mut total = 0.0;
    let mut scale = 0.0;
    for k in 0..x.g() {
        for i in 0..n {
            for j in 0..n {
                if x.is_symmetric() && j < i {
                    continue;
                }
                let mut e = DMatrix::zeros(n, n);
                e[(i, j)] = 1.0;
                if x.is_symmetric() {
                    e[(j, i)] = 1.0;
                }
                let mut plus = x.matrices().to_vec();
                let mut minus = x.matrices().to_vec();
                plus[k] += &e * t;
                minus[k] -= &e * t;
                let second = (f(&plus)? + f(&minus)? - 2.0 * base) / (t * t);
                total += second;
                scale += second.abs();
            }
        }
    }
    Ok(total.abs() / scale.max(1.0))
}
