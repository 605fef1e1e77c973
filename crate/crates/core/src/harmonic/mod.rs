//! ℓ-harmonic polynomials: decisions, the kernel oracle, constructive bases,
//! the `Hm` extension and the recursive decomposition.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::calculus::{dird_symbol, laplacian_ell, substitute_linear, LinearSubst};
use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::perm::Permutation;
use crate::poly::{size_cap, FreePoly};
use crate::scalar::Scalar;
use crate::symmetry::{coset_reps_pld, lift_symm, permute, placement, DEFAULT_ENUM_CAP};
use crate::word::{Letter, Mode, Word};

mod decompose;

pub use decompose::{
    decompose_main, fully_span_decompose, Decomposition, SpanDecomposition, SpanTerm, Summand,
};

/// `laplacian_ell(p, ell) == 0`, reporting size-cap failures.
pub fn try_is_ell_harmonic(p: &FreePoly, ell: u32) -> Result<bool> {
    Ok(laplacian_ell(p, ell)?.is_zero())
}

/// Panics if `ell` is 0 or the Laplacian exceeds the size cap.
pub fn is_ell_harmonic(p: &FreePoly, ell: u32) -> bool {
    try_is_ell_harmonic(p, ell).expect("ell-Laplacian")
}

pub fn is_harmonic(p: &FreePoly) -> bool {
    is_ell_harmonic(p, 2)
}

fn alphabet_letters(g: usize, mode: Mode) -> Vec<Letter> {
    (1..=g)
        .flat_map(|i| match mode {
            Mode::Symmetric => vec![Letter::x(i)],
            Mode::Nonsymmetric => vec![Letter::x(i), Letter::xt(i)],
        })
        .collect()
}

fn check_cap(base: usize, d: usize) -> Result<()> {
    let cap = size_cap();
    let mut n: usize = 1;
    for _ in 0..d {
        n = n.saturating_mul(base);
        if n > cap {
            return Err(Error::SizeCap { cap });
        }
    }
    Ok(())
}

/// All words of length `d`, ascending.
pub fn words(g: usize, d: usize, mode: Mode) -> Result<Vec<Word>> {
    let letters = alphabet_letters(g, mode);
    check_cap(letters.len(), d)?;
    if d == 0 {
        return Ok(vec![Word::empty()]);
    }
    Ok((0..d)
        .map(|_| letters.iter().copied())
        .multi_cartesian_product()
        .map(Word)
        .collect())
}

/// Exact basis of the degree-`d` ℓ-harmonic polynomials in `g` symmetric
/// variables: the nullspace of the Laplacian on the monomial basis.
///
/// The Laplacian only links words whose variable counts agree modulo `ℓ`, so
/// the matrix is eliminated one residue class at a time; classes come in
/// ascending order of their residue vectors, words ascending within a class.
pub fn harmonic_kernel_basis(g: usize, d: usize, ell: u32) -> Result<Vec<FreePoly>> {
    harmonic_kernel_basis_in(g, d, ell, Mode::Symmetric)
}

pub fn harmonic_kernel_basis_in(g: usize, d: usize, ell: u32, mode: Mode) -> Result<Vec<FreePoly>> {
    let all = words(g, d, mode)?;
    let l = ell as usize;
    let mut classes: BTreeMap<Vec<usize>, Vec<Word>> = BTreeMap::new();
    for w in all {
        let key = (1..=g).map(|i| w.count(i) % l).collect();
        classes.entry(key).or_default().push(w);
    }
    let mut out = Vec::new();
    for cols in classes.values() {
        out.extend(kernel_of_columns(g, mode, cols, ell)?);
    }
    Ok(out)
}

/// Basis of `{p ∈ span(cols) : lap_ℓ p = 0}`.
fn kernel_of_columns(g: usize, mode: Mode, cols: &[Word], ell: u32) -> Result<Vec<FreePoly>> {
    let mut row_index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(cols.len());
    for w in cols {
        let lap = laplacian_ell(&FreePoly::monomial(g, mode, w.clone(), Scalar::one())?, ell)?;
        for (r, _) in lap.terms() {
            let n = row_index.len();
            row_index.entry(r.clone()).or_insert(n);
        }
        images.push(lap);
    }
    let mut m = Matrix::zeros(row_index.len(), cols.len());
    for (c, lap) in images.iter().enumerate() {
        for (r, v) in lap.terms() {
            m[(row_index[r], c)] = v.clone();
        }
    }
    Ok(m.nullspace()
        .into_iter()
        .map(|v| {
            let mut p = FreePoly::zero(g, mode);
            for (w, c) in cols.iter().zip(v) {
                p.add_term(w.clone(), c);
            }
            p
        })
        .collect())
}

pub fn harmonic_kernel_dimension(g: usize, d: usize, ell: u32) -> Result<usize> {
    Ok(harmonic_kernel_basis(g, d, ell)?.len())
}

/// Basis of the ℓ-harmonic polynomials supported on fully degree-ℓ words of
/// degree `ℓ·dd`.
pub fn fully_degree_kernel_basis(g: usize, ell: u32, dd: usize) -> Result<Vec<FreePoly>> {
    let l = ell as usize;
    let cols: Vec<Word> = words(g, l * dd, Mode::Symmetric)?
        .into_iter()
        .filter(|w| (1..=g).all(|i| w.count(i) == 0 || w.count(i) == l))
        .collect();
    kernel_of_columns(g, Mode::Symmetric, &cols, ell)
}

fn coefficient_matrix(polys: &[&FreePoly]) -> Matrix {
    let mut index: BTreeMap<&Word, usize> = BTreeMap::new();
    for p in polys {
        for (w, _) in p.terms() {
            let n = index.len();
            index.entry(w).or_insert(n);
        }
    }
    let mut m = Matrix::zeros(index.len(), polys.len());
    for (c, p) in polys.iter().enumerate() {
        for (w, v) in p.terms() {
            m[(index[w], c)] = v.clone();
        }
    }
    m
}

/// Dimension of the span, by exact rank.
pub fn span_rank(polys: &[FreePoly]) -> usize {
    coefficient_matrix(&polys.iter().collect::<Vec<_>>()).rank()
}

pub fn in_span(basis: &[FreePoly], p: &FreePoly) -> bool {
    let mut all: Vec<&FreePoly> = basis.iter().collect();
    let r = coefficient_matrix(&all).rank();
    all.push(p);
    coefficient_matrix(&all).rank() == r
}

pub fn same_span(a: &[FreePoly], b: &[FreePoly]) -> bool {
    let ra = span_rank(a);
    ra == span_rank(b) && {
        let mut both = a.to_vec();
        both.extend_from_slice(b);
        span_rank(&both) == ra
    }
}

/// `Hm[q, x_i, ℓ] = Σ_r Σ_k (−1)^k/(ℓk+r)! · x_i^{ℓk+r} (Δ_ℓ − ∂^ℓ/∂x_i^ℓ)^k [q_r]`
/// where `q = Σ_r x_i^r q_r`.
pub fn hm_extend(q: &CommPoly, i: usize, ell: u32) -> Result<CommPoly> {
    if i == 0 || i > q.g() {
        return Err(Error::IndexOutOfRange { index: i, g: q.g() });
    }
    if ell == 0 || q.degree_in(i) >= ell {
        return Err(Error::Precondition(format!(
            "degree of q in x{i} must be below ell = {ell}"
        )));
    }
    let g = q.g();
    let mut parts: BTreeMap<u32, CommPoly> = BTreeMap::new();
    for (e, c) in q.terms() {
        let mut f = e.clone();
        let r = f[i - 1];
        f[i - 1] = 0;
        parts
            .entry(r)
            .or_insert_with(|| CommPoly::zero(g))
            .add_term(f, c.clone());
    }
    let mut out = CommPoly::zero(g);
    for (r, qr) in parts {
        let mut cur = qr;
        let mut k = 0u32;
        while !cur.is_zero() {
            let n = ell * k + r;
            let mut c = Scalar::factorial(n).inv()?;
            if k % 2 == 1 {
                c = -c;
            }
            out = &out + &(&CommPoly::var_pow(g, i, n) * &cur).scale(&c);
            cur = cur.laplacian(ell, Some(i));
            k += 1;
        }
    }
    Ok(out)
}

/// `(−1)^Q (ℓQ+r)! / (Q! (ℓ!)^Q) · Hm[x_i^r x_{a1}^ℓ … x_{aQ}^ℓ, x_i, ℓ]`, whose
/// `x_i^{ℓQ+r}` coefficient is 1.
pub fn hm_normalized_power(
    g: usize,
    i: usize,
    r: u32,
    aux: &[usize],
    ell: u32,
) -> Result<CommPoly> {
    if r >= ell {
        return Err(Error::Precondition(format!(
            "r = {r} must be below ell = {ell}"
        )));
    }
    let mut e = vec![0u32; g];
    for &a in aux.iter().chain(std::iter::once(&i)) {
        if a == 0 || a > g {
            return Err(Error::IndexOutOfRange { index: a, g });
        }
    }
    if aux.contains(&i) || aux.iter().duplicates().next().is_some() {
        return Err(Error::Precondition(
            "auxiliary variables must be distinct and differ from x_i".into(),
        ));
    }
    e[i - 1] = r;
    for &a in aux {
        e[a - 1] = ell;
    }
    let q = aux.len() as u32;
    let mut scale =
        &Scalar::factorial(ell * q + r) / &(&Scalar::factorial(q) * &Scalar::factorial(ell).pow(q));
    if q % 2 == 1 {
        scale = -scale;
    }
    Ok(hm_extend(&CommPoly::monomial(e, Scalar::one()), i, ell)?.scale(&scale))
}

/// `{x_k^ℓ − x_1^ℓ : 2 ≤ k ≤ g} ∪ {words of length ℓ other than x_i^ℓ}`.
pub fn basis_degree_ell(g: usize, ell: u32) -> Result<Vec<FreePoly>> {
    let l = ell as usize;
    let mode = Mode::Symmetric;
    let mut out: Vec<FreePoly> = (2..=g)
        .map(|k| &FreePoly::word(g, mode, &vec![k; l]) - &FreePoly::word(g, mode, &vec![1; l]))
        .collect();
    for w in words(g, l, mode)? {
        if !(1..=g).any(|i| w.count(i) == l) {
            out.push(FreePoly::monomial(g, mode, w, Scalar::one())?);
        }
    }
    Ok(out)
}

/// The two-variable basis: words with both degrees below `ℓ`, together with
/// `Symm[Hm[x1^r x2^{d−r}, x1, ℓ]]` for `0 ≤ r < ℓ ≤ d − r`.
pub fn basis_two_var(d: usize, ell: u32) -> Result<Vec<FreePoly>> {
    let l = ell as usize;
    let mut out = Vec::new();
    for w in words(2, d, Mode::Symmetric)? {
        if w.count(1) < l && w.count(2) < l {
            out.push(FreePoly::monomial(2, Mode::Symmetric, w, Scalar::one())?);
        }
    }
    for r in 0..l.min(d + 1) {
        if d - r >= l {
            let q = CommPoly::monomial(vec![r as u32, (d - r) as u32], Scalar::one());
            out.push(lift_symm(&hm_extend(&q, 1, ell)?, Mode::Symmetric));
        }
    }
    Ok(out)
}

/// A `d × g` matrix of coefficients for the product `Π_i Σ_j a_ij x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix {
    rows: Vec<Vec<Scalar>>,
}

impl LinearFormMatrix {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<LinearFormMatrix> {
        let g = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || g == 0 || rows.iter().any(|r| r.len() != g) {
            return Err(Error::Dimension(
                "linear form matrix needs positive, consistent dimensions".into(),
            ));
        }
        Ok(LinearFormMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<LinearFormMatrix> {
        LinearFormMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn g(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Row `k` of the result is row `σ(k)` of `self`, so that expanding
    /// commutes with the action of `σ`.
    pub fn permute_rows(&self, sigma: &Permutation) -> LinearFormMatrix {
        LinearFormMatrix {
            rows: (1..=self.d())
                .map(|k| self.rows[sigma.image(k) - 1].clone())
                .collect(),
        }
    }
}

pub fn expand_linear_product(l: &LinearFormMatrix) -> Result<FreePoly> {
    let (g, mode) = (l.g(), Mode::Symmetric);
    let cap = size_cap();
    let mut acc = FreePoly::one(g, mode);
    for row in l.rows() {
        let mut form = FreePoly::zero(g, mode);
        for (j, c) in row.iter().enumerate() {
            form.add_term(Word::vars(&[j + 1]), c.clone());
        }
        acc = acc.checked_mul_capped(&form, cap)?;
    }
    Ok(acc)
}

/// `Σ_j a_{k1 j} ⋯ a_{kℓ j} = 0` for every strictly increasing `k1 < … < kℓ`.
pub fn check_main_condition(l: &LinearFormMatrix, ell: u32) -> bool {
    (0..l.d()).combinations(ell as usize).all(|ks| {
        let mut sum = Scalar::zero();
        for j in 0..l.g() {
            let mut prod = Scalar::one();
            for &k in &ks {
                prod = &prod * &l.rows()[k][j];
            }
            sum += &prod;
        }
        sum.is_zero()
    })
}

/// Degree-`d` 1-harmonic basis: all products of `d` forms from
/// `x_k − x_1` (`2 ≤ k ≤ g`), which span the zero-sum linear forms.
pub fn one_harmonic_basis(g: usize, d: usize) -> Result<Vec<FreePoly>> {
    check_cap(g, d)?;
    let mode = Mode::Symmetric;
    if g < 2 && d > 0 {
        return Ok(vec![]);
    }
    if d == 0 {
        return Ok(vec![FreePoly::one(g, mode)]);
    }
    let forms: Vec<FreePoly> = (2..=g)
        .map(|k| &FreePoly::var(g, mode, k) - &FreePoly::var(g, mode, 1))
        .collect();
    (0..d)
        .map(|_| forms.iter())
        .multi_cartesian_product()
        .map(|fs| FreePoly::product(g, mode, &fs.into_iter().cloned().collect::<Vec<_>>()))
        .collect()
}

/// The generators `σ[(x_{τ1}^ℓ − x_{τ2}^ℓ)⋯(x_{τ(2D−1)}^ℓ − x_{τ(2D)}^ℓ)]`,
/// `σ` over coset representatives and `τ` over ordered choices of `2D`
/// distinct variables.
pub fn fully_basis_generators(g: usize, ell: u32, dd: usize) -> Result<Vec<FreePoly>> {
    let l = ell as usize;
    let mode = Mode::Symmetric;
    if 2 * dd > g {
        return Err(Error::Precondition(format!(
            "need g >= {} variables",
            2 * dd
        )));
    }
    let reps = coset_reps_pld(l, dd, DEFAULT_ENUM_CAP)?;
    let mut out = Vec::new();
    for tau in (1..=g).permutations(2 * dd) {
        let factors: Vec<FreePoly> = tau
            .chunks(2)
            .map(|ab| {
                &FreePoly::word(g, mode, &vec![ab[0]; l])
                    - &FreePoly::word(g, mode, &vec![ab[1]; l])
            })
            .collect();
        let prod = FreePoly::product(g, mode, &factors)?;
        for s in &reps {
            out.push(permute(s, &prod)?);
        }
    }
    Ok(out)
}

/// One piece `σ[left · right]` of [`partial_symbol_decompose`].
#[derive(Clone, Debug, PartialEq)]
pub struct PartialTerm {
    pub sigma: Permutation,
    pub left: FreePoly,
    pub right: FreePoly,
}

impl PartialTerm {
    pub fn expand(&self) -> Result<FreePoly> {
        permute(&self.sigma, &self.left.checked_mul(&self.right)?)
    }
}

/// Writes `p = Σ σ_k[p1_k(x_1..x_a) · p2_k(x_{a+1}..x_g)]` when
/// `D[p, Σ_{i>a} x_i^ℓ, h] = 0`; every `p2_k` is then ℓ-harmonic.
pub fn partial_symbol_decompose(p: &FreePoly, a: usize, ell: u32) -> Result<Vec<PartialTerm>> {
    let g = p.g();
    let mut q = CommPoly::zero(g);
    for i in a + 1..=g {
        q = &q + &CommPoly::var_pow(g, i, ell);
    }
    if !dird_symbol(p, &q)?.is_zero() {
        return Err(Error::Precondition(format!(
            "the symbol on variables above {a} does not annihilate p"
        )));
    }
    let mut groups: BTreeMap<(Permutation, Word), Vec<(Word, Scalar)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        let pos: Vec<usize> = (0..w.len()).filter(|&k| w[k].index() <= a).collect();
        let left = Word(pos.iter().map(|&k| w[k]).collect());
        let right = Word(
            (0..w.len())
                .filter(|k| !pos.contains(k))
                .map(|k| w[k])
                .collect(),
        );
        groups
            .entry((placement(w.len(), &pos), left))
            .or_default()
            .push((right, c.clone()));
    }
    groups
        .into_iter()
        .map(|((sigma, left), right)| {
            Ok(PartialTerm {
                sigma,
                left: FreePoly::monomial(g, p.mode(), left, Scalar::one())?,
                right: p.collect_like(right),
            })
        })
        .collect()
}

/// Whether `D[p, Σ_i (Σ_j b_ij x_j)^ℓ, h] = 0`, decided by testing
/// ℓ-harmonicity of `p(Bᵀx)`.
pub fn change_of_variables_transport(p: &FreePoly, b: &LinearSubst, ell: u32) -> Result<bool> {
    if !b.is_invertible() {
        return Err(Error::Singular);
    }
    try_is_ell_harmonic(&substitute_linear(p, &b.transpose())?, ell)
}

/// The symbol `Σ_i (Σ_j b_ij x_j)^ℓ` whose derivative the transport decides.
pub fn transported_symbol(b: &LinearSubst, ell: u32) -> CommPoly {
    let mut q = CommPoly::zero(b.g());
    for row in b.matrix().to_rows() {
        q = &q + &CommPoly::linear(&row).pow(ell);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn sym(s: &str) -> FreePoly {
        parse_poly(s, Mode::Symmetric, None).unwrap()
    }

    fn symg(s: &str, g: usize) -> FreePoly {
        parse_poly(s, Mode::Symmetric, Some(g)).unwrap()
    }

    fn comm(g: usize, terms: &[(&[u32], i64)]) -> CommPoly {
        CommPoly::from_terms(
            g,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Scalar::from_int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn harmonicity() {
        assert!(is_ell_harmonic(&sym("(x1 + i x2)^2 (x3 + i x4)^2"), 2));
        assert!(is_ell_harmonic(&sym("x1^2 x2 + 7 x2"), 4));
        assert!(!is_ell_harmonic(&sym("x1^2"), 2));
    }

    #[test]
    fn kernel_dimensions() {
        let b = harmonic_kernel_basis(2, 2, 2).unwrap();
        assert_eq!(b, vec![symg("x2^2 - x1^2", 2), sym("x1 x2"), sym("x2 x1")]);
        assert_eq!(harmonic_kernel_dimension(2, 4, 2).unwrap(), 2);
        assert_eq!(harmonic_kernel_dimension(3, 2, 2).unwrap(), 8);
        assert_eq!(harmonic_kernel_dimension(2, 0, 2).unwrap(), 1);
        for p in harmonic_kernel_basis(3, 3, 2).unwrap() {
            assert!(is_harmonic(&p));
        }
    }

    #[test]
    fn hm_examples() {
        assert_eq!(
            hm_extend(&comm(2, &[(&[0, 2], 1)]), 1, 2).unwrap(),
            comm(2, &[(&[0, 2], 1), (&[2, 0], -1)])
        );
        let want = comm(2, &[(&[0, 4], 1), (&[2, 2], -6), (&[4, 0], 1)]);
        assert_eq!(hm_extend(&comm(2, &[(&[0, 4], 1)]), 1, 2).unwrap(), want);
        assert_eq!(
            hm_extend(&CommPoly::one(3), 2, 3).unwrap(),
            CommPoly::one(3)
        );
        assert!(hm_extend(&comm(2, &[(&[2, 0], 1)]), 1, 2).is_err());
    }

    #[test]
    fn normalized_power() {
        assert_eq!(
            hm_normalized_power(2, 1, 0, &[2], 2).unwrap(),
            comm(2, &[(&[2, 0], 1), (&[0, 2], -1)])
        );
        assert_eq!(
            hm_normalized_power(2, 1, 1, &[], 2).unwrap(),
            comm(2, &[(&[1, 0], 1)])
        );
        for (q, r, ell) in [(2usize, 1u32, 2u32), (2, 0, 3), (1, 2, 3), (3, 1, 2)] {
            let aux: Vec<usize> = (2..2 + q).collect();
            let h = hm_normalized_power(q + 1, 1, r, &aux, ell).unwrap();
            let top = ell * q as u32 + r;
            assert_eq!(h.degree_in(1), top);
            let mut e = vec![0; q + 1];
            e[0] = top;
            assert_eq!(h.coeff(&e), Scalar::one());
            assert!(h.laplacian(ell, None).is_zero());
        }
        assert!(hm_normalized_power(2, 1, 0, &[1], 2).is_err());
    }

    #[test]
    fn constructive_bases() {
        assert_eq!(
            basis_degree_ell(2, 2).unwrap(),
            vec![symg("x2^2 - x1^2", 2), sym("x1 x2"), sym("x2 x1")]
        );
        assert!(basis_degree_ell(1, 2).unwrap().is_empty());
        assert_eq!(basis_degree_ell(3, 2).unwrap().len(), 8);
        assert_eq!(basis_two_var(3, 2).unwrap().len(), 2);
        assert_eq!(basis_two_var(3, 3).unwrap().len(), 7);
        assert_eq!(
            basis_two_var(1, 2).unwrap(),
            vec![symg("x1", 2), symg("x2", 2)]
        );
        for (d, ell) in [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3)] {
            let b = basis_two_var(d, ell).unwrap();
            let k = harmonic_kernel_basis(2, d, ell).unwrap();
            assert!(same_span(&b, &k), "d={d} ell={ell}");
            assert_eq!(span_rank(&b), b.len());
        }
    }

    #[test]
    fn linear_products() {
        let i = Scalar::i();
        let l = LinearFormMatrix::new(vec![vec![Scalar::one(), i.clone()], vec![Scalar::one(), i]])
            .unwrap();
        assert_eq!(expand_linear_product(&l).unwrap(), sym("(x1 + i x2)^2"));
        assert!(check_main_condition(&l, 2));
        let l = LinearFormMatrix::from_ints(&[&[1, 1], &[1, -1]]).unwrap();
        assert!(check_main_condition(&l, 2));
        assert!(is_harmonic(&expand_linear_product(&l).unwrap()));
        let l = LinearFormMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0]]).unwrap();
        assert_eq!(expand_linear_product(&l).unwrap(), symg("x2 x1", 3));
        assert!(check_main_condition(&l, 3));
        let s = Permutation::from_images(&[2, 1]).unwrap();
        assert_eq!(
            permute(&s, &expand_linear_product(&l).unwrap()).unwrap(),
            expand_linear_product(&l.permute_rows(&s)).unwrap()
        );
    }

    #[test]
    fn one_harmonic() {
        assert_eq!(one_harmonic_basis(2, 1).unwrap(), vec![sym("x2 - x1")]);
        let b = one_harmonic_basis(2, 2).unwrap();
        assert_eq!(b, vec![sym("(x2 - x1)^2")]);
        assert!(one_harmonic_basis(1, 2).unwrap().is_empty());
        for d in 1..=3 {
            let b = one_harmonic_basis(3, d).unwrap();
            assert!(same_span(&b, &harmonic_kernel_basis(3, d, 1).unwrap()));
        }
    }

    #[test]
    fn fully_generators_span_fully_kernel() {
        let gens = fully_basis_generators(4, 2, 2).unwrap();
        let kernel = fully_degree_kernel_basis(4, 2, 2).unwrap();
        assert!(same_span(&gens, &kernel));
        let gens = fully_basis_generators(2, 2, 1).unwrap();
        assert_eq!(span_rank(&gens), 1);
    }

    #[test]
    fn partial_splits() {
        let s = partial_symbol_decompose(&symg("x1^3", 2), 1, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].right, FreePoly::one(2, Mode::Symmetric));
        let p = sym("x1 (x3^2 - x2^2)");
        let s = partial_symbol_decompose(&p, 1, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].sigma.is_identity());
        assert_eq!(s[0].right, symg("x3^2 - x2^2", 3));
        assert!(partial_symbol_decompose(&symg("x2^2", 2), 1, 2).is_err());
        let p = sym("x2 x1 x3 - x3 x1 x2 + x1^2 (x2 x3 + x3 x3 - x2 x2)");
        let mut acc = FreePoly::zero(3, Mode::Symmetric);
        for t in partial_symbol_decompose(&p, 1, 2).unwrap() {
            assert!(is_harmonic(&t.right));
            acc = &acc + &t.expand().unwrap();
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn transport_agrees_with_symbol() {
        let b = LinearSubst::new(Matrix::from_ints(2, 2, &[1, 1, 1, -1])).unwrap();
        let p = sym("x1 x2 + x2 x1");
        let direct = dird_symbol(&p, &transported_symbol(&b, 2))
            .unwrap()
            .is_zero();
        assert_eq!(change_of_variables_transport(&p, &b, 2).unwrap(), direct);
        assert!(direct);
        let p = sym("x1^2 + x2 x1");
        assert_eq!(
            change_of_variables_transport(&p, &b, 2).unwrap(),
            dird_symbol(&p, &transported_symbol(&b, 2))
                .unwrap()
                .is_zero()
        );
        let id = LinearSubst::identity(2);
        assert_eq!(
            change_of_variables_transport(&p, &id, 2).unwrap(),
            is_harmonic(&p)
        );
        let sing = LinearSubst::new(Matrix::from_ints(2, 2, &[1, 1, 1, 1])).unwrap();
        assert_eq!(
            change_of_variables_transport(&p, &sing, 2),
            Err(Error::Singular)
        );
    }
}
