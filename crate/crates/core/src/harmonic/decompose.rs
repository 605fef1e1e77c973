//! The recursive decomposition of ℓ-harmonic polynomials into permuted
//! independent products of symmetrized ℓ-harmonic factors.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::FreePoly;
use crate::scalar::Scalar;
use crate::symmetry::{
    fully_degree_ell_split, gather_letters, is_fully_degree, is_independent_product,
    is_symmetrized, lift_symm, mod_ell_split, neighbor_decompose, permute,
};
use crate::word::{Mode, Word};

use super::{hm_normalized_power, try_is_ell_harmonic};

/// `σ[f_1 ⋯ f_M]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    pub sigma: Permutation,
    pub factors: Vec<FreePoly>,
}

impl Summand {
    pub fn expand(&self) -> Result<FreePoly> {
        let f = &self.factors[0];
        permute(
            &self.sigma,
            &FreePoly::product(f.g(), f.mode(), &self.factors)?,
        )
    }
}

/// `p = Σ_k σ_k[p_{k,1} ⋯ p_{k,M_k}]` with every factor symmetrized and
/// ℓ-harmonic and every factor list an independent product.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    ell: u32,
    alphabet: usize,
    degree: usize,
    summands: Vec<Summand>,
}

impl Decomposition {
    /// Validates every invariant; factors must all live in `alphabet`.
    pub fn new(
        ell: u32,
        alphabet: usize,
        degree: usize,
        summands: Vec<Summand>,
    ) -> Result<Decomposition> {
        let mut checked: HashSet<FreePoly> = HashSet::new();
        for s in &summands {
            if s.factors.is_empty() {
                return Err(Error::Document("summand without factors".into()));
            }
            if s.sigma.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: s.sigma.degree(),
                });
            }
            let mut total = 0;
            for f in &s.factors {
                if f.g() != alphabet || f.mode() != Mode::Symmetric {
                    return Err(Error::AlphabetMismatch(alphabet, f.g()));
                }
                let d = f
                    .homogeneous_degree()
                    .ok_or(Error::NotHomogeneous(f.degree()))?;
                total += d;
                if checked.contains(f) {
                    continue;
                }
                if !is_symmetrized(f) {
                    return Err(Error::NotSymmetric);
                }
                if !try_is_ell_harmonic(f, ell)? {
                    return Err(Error::NotHarmonic { ell });
                }
                checked.insert(f.clone());
            }
            if total != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: total,
                });
            }
            if !is_independent_product(&s.factors) {
                return Err(Error::Precondition("factors share a variable".into()));
            }
        }
        Ok(Decomposition {
            ell,
            alphabet,
            degree,
            summands,
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn expand(&self) -> Result<FreePoly> {
        let mut acc = FreePoly::zero(self.alphabet, Mode::Symmetric);
        for s in &self.summands {
            acc = acc.checked_add(&s.expand()?)?;
        }
        Ok(acc)
    }

    /// `deg_j(factor) ≤ max(deg_j(p), ℓ)` everywhere and at most `d`
    /// variables per summand.
    pub fn satisfies_technical_conditions(&self, p: &FreePoly) -> bool {
        let l = self.ell as usize;
        self.summands.iter().all(|s| {
            let vars: BTreeSet<usize> = s.factors.iter().flat_map(|f| f.variables()).collect();
            vars.len() <= self.degree
                && s.factors.iter().all(|f| {
                    vars.iter()
                        .all(|&j| f.degree_in(j) <= p.degree_in(j).max(l))
                })
        })
    }
}

/// `coeff · σ[(x_{a1}^ℓ − x_{b1}^ℓ) ⋯]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanTerm {
    pub sigma: Permutation,
    pub pairs: Vec<(usize, usize)>,
    pub coeff: Scalar,
}

impl SpanTerm {
    pub fn factors(&self, g: usize, ell: u32) -> Vec<FreePoly> {
        let l = ell as usize;
        self.pairs
            .iter()
            .map(|&(a, b)| {
                &FreePoly::word(g, Mode::Symmetric, &vec![a; l])
                    - &FreePoly::word(g, Mode::Symmetric, &vec![b; l])
            })
            .collect()
    }

    pub fn expand(&self, g: usize, ell: u32) -> Result<FreePoly> {
        let prod = FreePoly::product(g, Mode::Symmetric, &self.factors(g, ell))?;
        Ok(permute(&self.sigma, &prod)?.scale(&self.coeff))
    }

    fn normalized(mut self) -> SpanTerm {
        for pair in &mut self.pairs {
            if pair.0 > pair.1 {
                *pair = (pair.1, pair.0);
                self.coeff = -&self.coeff;
            }
        }
        self
    }
}

/// A combination of the generators `σ[(x_a^ℓ − x_b^ℓ)⋯]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanDecomposition {
    pub ell: u32,
    pub alphabet: usize,
    pub terms: Vec<SpanTerm>,
}

impl SpanDecomposition {
    pub fn expand(&self) -> Result<FreePoly> {
        let mut acc = FreePoly::zero(self.alphabet, Mode::Symmetric);
        for t in &self.terms {
            acc = acc.checked_add(&t.expand(self.alphabet, self.ell)?)?;
        }
        Ok(acc)
    }
}

fn require_symmetric_harmonic(p: &FreePoly, ell: u32) -> Result<usize> {
    if ell < 2 {
        return Err(Error::Precondition(
            "the decomposition needs ell >= 2".into(),
        ));
    }
    if p.mode() != Mode::Symmetric {
        return Err(Error::Precondition(
            "symmetric variables expected; use the nonsymmetric split".into(),
        ));
    }
    if p.has_direction() {
        return Err(Error::DirectionNotAllowed);
    }
    let d = if p.is_zero() {
        0
    } else {
        p.homogeneous_degree()
            .ok_or(Error::NotHomogeneous(p.degree()))?
    };
    if !try_is_ell_harmonic(p, ell)? {
        return Err(Error::NotHarmonic { ell });
    }
    Ok(d)
}

/// Writes an ℓ-harmonic, fully degree-ℓ polynomial of degree `ℓD` over the
/// generators, extending the alphabet to `2D` variables when needed.
pub fn fully_span_decompose(p: &FreePoly, ell: u32) -> Result<SpanDecomposition> {
    let d = require_symmetric_harmonic(p, ell)?;
    if !is_fully_degree(p, ell) || d % ell as usize != 0 {
        return Err(Error::NotFullyDegree { ell });
    }
    let g = p.g().max(2 * d / ell as usize);
    let pp = p.with_alphabet(g)?;
    let vars: Vec<usize> = (1..=g).collect();
    let terms: Vec<SpanTerm> = span_rec(&pp, &vars, ell)?
        .into_iter()
        .map(SpanTerm::normalized)
        .collect();
    let out = SpanDecomposition {
        ell,
        alphabet: g,
        terms,
    };
    if out.expand()? != pp {
        return Err(Error::Precondition(
            "span decomposition did not reproduce its input".into(),
        ));
    }
    Ok(out)
}

fn without(vars: &[usize], drop: &[usize]) -> Vec<usize> {
    vars.iter().copied().filter(|v| !drop.contains(v)).collect()
}

/// Recursion on `D` over the variables `vars`; the last one plays the role
/// of the distinguished variable.
fn span_rec(p: &FreePoly, vars: &[usize], ell: u32) -> Result<Vec<SpanTerm>> {
    if p.is_zero() {
        return Ok(vec![]);
    }
    let l = ell as usize;
    let deg = p
        .homogeneous_degree()
        .ok_or(Error::NotHomogeneous(p.degree()))?;
    let dd = deg / l;
    if dd == 0 {
        return Ok(vec![SpanTerm {
            sigma: Permutation::identity(0),
            pairs: vec![],
            coeff: p.coeff(&Word::empty()),
        }]);
    }
    if vars.len() < 2 * dd {
        return Err(Error::Precondition(format!(
            "{} variables cannot carry degree {deg}",
            vars.len()
        )));
    }
    let g = p.g();
    let v = *vars.last().expect("nonempty");
    let mut rest = p.clone();
    let mut out = Vec::new();
    if p.degree_in(v) == l {
        let split = neighbor_decompose(p, v, l)?;
        let fewer = without(vars, &[v]);
        for (sj, pj) in &split.pieces {
            for b in span_rec(pj, &fewer, ell)? {
                let used: BTreeSet<usize> = b.pairs.iter().flat_map(|&(a, c)| [a, c]).collect();
                let nu = *fewer
                    .iter()
                    .find(|u| !used.contains(u))
                    .expect("2D variables leave one free");
                let mut pairs = vec![(v, nu)];
                pairs.extend(b.pairs);
                let t = SpanTerm {
                    sigma: Permutation::act_then(&b.sigma.shifted(l), sj),
                    pairs,
                    coeff: b.coeff,
                };
                rest = rest.checked_sub(&t.expand(g, ell)?)?;
                out.push(t);
            }
        }
    }
    if rest.degree_in(v) != 0 {
        return Err(Error::Precondition(
            "fully degree split left the last variable behind".into(),
        ));
    }
    for (si, block) in fully_degree_ell_split(&rest, ell)? {
        let mut by_first: BTreeMap<usize, Vec<(Word, Scalar)>> = BTreeMap::new();
        for (w, c) in block.terms() {
            by_first
                .entry(w[0].index())
                .or_default()
                .push((Word(w[l..].to_vec()), c.clone()));
        }
        for (u, tail) in by_first {
            let pu = block.collect_like(tail);
            for b in span_rec(&pu, &without(vars, &[u, v]), ell)? {
                let mut pairs = vec![(u, v)];
                pairs.extend(b.pairs);
                out.push(SpanTerm {
                    sigma: Permutation::act_then(&b.sigma.shifted(l), &si),
                    pairs,
                    coeff: b.coeff,
                });
            }
        }
    }
    Ok(out)
}

/// Internal summand with its scalar kept apart from the factors.
#[derive(Clone, Debug)]
struct Term {
    sigma: Permutation,
    coeff: Scalar,
    factors: Vec<FreePoly>,
}

impl Term {
    fn support(&self) -> BTreeSet<usize> {
        self.factors.iter().flat_map(|f| f.variables()).collect()
    }

    fn expand(&self, g: usize) -> Result<FreePoly> {
        let prod = FreePoly::product(g, Mode::Symmetric, &self.factors)?;
        Ok(permute(&self.sigma, &prod)?.scale(&self.coeff))
    }

    /// `(id_k ⊕ σ)[head · ...]` followed by the outer permutation.
    fn prefixed(self, head: FreePoly, k: usize, outer: &Permutation) -> Term {
        let mut factors = vec![head];
        factors.extend(self.factors);
        Term {
            sigma: Permutation::act_then(&self.sigma.shifted(k), outer),
            coeff: self.coeff,
            factors,
        }
    }
}

/// Decomposes a homogeneous ℓ-harmonic polynomial (`ℓ ≥ 2`, symmetric
/// variables) by peeling top powers, splitting degrees modulo `ℓ` and
/// spanning the fully degree-ℓ residue.
///
/// Fresh variables are drawn from a working alphabet of `g + 2d` letters;
/// the result's alphabet is the larger of `g` and the highest index used.
pub fn decompose_main(p: &FreePoly, ell: u32) -> Result<Decomposition> {
    let d = require_symmetric_harmonic(p, ell)?;
    let work = p.g().max(1) + 2 * d;
    if work > u16::MAX as usize {
        return Err(Error::EnumerationCap {
            what: format!("working alphabet of {work} letters"),
        });
    }
    let terms = main_rec(&p.with_alphabet(work)?, ell, &BTreeSet::new())?;
    let used = terms.iter().flat_map(Term::support).max().unwrap_or(0);
    let g = p.g().max(used);
    let mut summands = Vec::with_capacity(terms.len());
    for t in terms {
        let mut factors: Vec<FreePoly> = t
            .factors
            .iter()
            .map(|f| f.with_alphabet(g))
            .collect::<Result<_>>()?;
        if factors.is_empty() {
            factors.push(FreePoly::constant(g, Mode::Symmetric, t.coeff));
        } else {
            factors[0] = factors[0].scale(&t.coeff);
        }
        summands.push(Summand {
            sigma: t.sigma,
            factors,
        });
    }
    let dec = Decomposition::new(ell, g, d, summands)?;
    if dec.expand()? != p.with_alphabet(g)? {
        return Err(Error::Precondition(
            "decomposition did not reproduce its input".into(),
        ));
    }
    Ok(dec)
}

fn main_rec(p: &FreePoly, ell: u32, forbidden: &BTreeSet<usize>) -> Result<Vec<Term>> {
    if p.is_zero() {
        return Ok(vec![]);
    }
    let g = p.g();
    let l = ell as usize;
    let d = p
        .homogeneous_degree()
        .ok_or(Error::NotHomogeneous(p.degree()))?;
    if d == 0 {
        return Ok(vec![Term {
            sigma: Permutation::identity(0),
            coeff: p.coeff(&Word::empty()),
            factors: vec![],
        }]);
    }
    if d <= l {
        return low_degree_terms(p, ell);
    }
    let mut rest = p.clone();
    let mut out = Vec::new();

    for dstar in (l + 1..=d).rev() {
        for i in rest.variables() {
            let di = rest.degree_in(i);
            if di < dstar {
                continue;
            }
            if di > dstar {
                return Err(Error::Precondition(format!(
                    "x{i} kept degree {di} above {dstar}"
                )));
            }
            let (q, r) = (dstar / l, (dstar % l) as u32);
            let inner: BTreeSet<usize> = forbidden.iter().copied().chain([i]).collect();
            let split = neighbor_decompose(&rest, i, dstar)?;
            for (sj, qj) in &split.pieces {
                for t in main_rec(qj, ell, &inner)? {
                    let support = t.support();
                    let aux: Vec<usize> = (1..=g)
                        .filter(|a| !support.contains(a) && !inner.contains(a))
                        .take(q)
                        .collect();
                    if aux.len() < q {
                        return Err(Error::Precondition("working alphabet exhausted".into()));
                    }
                    let s = lift_symm(&hm_normalized_power(g, i, r, &aux, ell)?, Mode::Symmetric);
                    let t = t.prefixed(s, dstar, sj);
                    rest = rest.checked_sub(&t.expand(g)?)?;
                    out.push(t);
                }
            }
        }
    }

    for i in rest.variables() {
        let parts = mod_ell_split(&rest, i, ell);
        let inner: BTreeSet<usize> = forbidden.iter().copied().chain([i]).collect();
        for (k, part) in parts.iter().enumerate().skip(1) {
            if part.is_zero() {
                continue;
            }
            let split = neighbor_decompose(part, i, k)?;
            for (sj, f) in &split.pieces {
                for t in main_rec(f, ell, &inner)? {
                    out.push(t.prefixed(FreePoly::word(g, Mode::Symmetric, &vec![i; k]), k, sj));
                }
            }
        }
        rest = parts[0].clone();
    }

    let vars: Vec<usize> = (1..=g).filter(|v| !forbidden.contains(v)).collect();
    for t in span_rec(&rest, &vars, ell)? {
        let t = t.normalized();
        out.push(Term {
            factors: t.factors(g, ell),
            sigma: t.sigma,
            coeff: t.coeff,
        });
    }
    Ok(out)
}

/// Degree at most `ℓ`: each word is `σ[x_{c1}^{k1} ⋯]` with every `k < ℓ`,
/// except the pure powers `x_c^ℓ`, whose coefficients sum to zero and pair
/// off against the lowest one present.
fn low_degree_terms(p: &FreePoly, ell: u32) -> Result<Vec<Term>> {
    let g = p.g();
    let l = ell as usize;
    let mut out = Vec::new();
    let mut pure: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (w, c) in p.terms() {
        let (sigma, u) = gather_letters(w);
        let mut factors = Vec::new();
        let mut k = 0;
        while k < u.len() {
            let run = u[k..].iter().take_while(|&&x| x == u[k]).count();
            factors.push(FreePoly::word(g, Mode::Symmetric, &vec![u[k].index(); run]));
            k += run;
        }
        if factors.len() == 1 && u.len() == l {
            pure.insert(u[0].index(), c.clone());
        } else {
            out.push(Term {
                sigma,
                coeff: c.clone(),
                factors,
            });
        }
    }
    if let Some((&c0, _)) = pure.iter().next() {
        let total = pure.values().fold(Scalar::zero(), |acc, c| &acc + c);
        if !total.is_zero() {
            return Err(Error::NotHarmonic { ell });
        }
        let base = FreePoly::word(g, Mode::Symmetric, &vec![c0; l]);
        for (&c, a) in pure.iter().skip(1) {
            out.push(Term {
                sigma: Permutation::identity(l),
                coeff: a.clone(),
                factors: vec![&FreePoly::word(g, Mode::Symmetric, &vec![c; l]) - &base],
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{fully_degree_kernel_basis, harmonic_kernel_basis};
    use crate::text::parse_poly;

    fn sym(s: &str) -> FreePoly {
        parse_poly(s, Mode::Symmetric, None).unwrap()
    }

    #[test]
    fn single_difference() {
        let p = sym("x2^2 - x1^2");
        let dec = decompose_main(&p, 2).unwrap();
        assert_eq!(dec.summands().len(), 1);
        assert!(dec.summands()[0].sigma.is_identity());
        assert_eq!(dec.summands()[0].factors, vec![p.clone()]);
        let span = fully_span_decompose(&p, 2).unwrap();
        assert_eq!(
            span.terms,
            vec![SpanTerm {
                sigma: Permutation::identity(2),
                pairs: vec![(1, 2)],
                coeff: Scalar::from_int(-1)
            }]
        );
    }

    #[test]
    fn product_example() {
        let p = sym("(x1 + i x2)^2 (x3 + i x4)^2");
        let dec = decompose_main(&p, 2).unwrap();
        assert_eq!(
            dec.expand().unwrap(),
            p.with_alphabet(dec.alphabet()).unwrap()
        );
        assert!(dec.satisfies_technical_conditions(&p));
    }

    #[test]
    fn kernel_round_trips() {
        for (g, d, ell) in [
            (3usize, 3usize, 2u32),
            (2, 3, 3),
            (2, 4, 2),
            (3, 2, 2),
            (2, 5, 2),
        ] {
            for p in harmonic_kernel_basis(g, d, ell).unwrap() {
                let dec = decompose_main(&p, ell).unwrap();
                assert_eq!(
                    dec.expand().unwrap(),
                    p.with_alphabet(dec.alphabet()).unwrap(),
                    "{p}"
                );
                assert!(dec.satisfies_technical_conditions(&p), "{p}");
            }
        }
    }

    #[test]
    fn dummy_example() {
        let r = sym("x1^2 x2^2 - x2^2 x1^2 + x2^2 x3^2 - x3^2 x2^2 + x3^2 x1^2 - x1^2 x3^2");
        let span = fully_span_decompose(&r, 2).unwrap();
        assert_eq!(span.alphabet, 4);
        assert_eq!(span.expand().unwrap(), r.with_alphabet(4).unwrap());
        for t in &span.terms {
            assert!(t.pairs.iter().all(|&(a, b)| a < b));
        }
    }

    #[test]
    fn fully_kernel_round_trip() {
        for p in fully_degree_kernel_basis(4, 2, 2).unwrap() {
            let span = fully_span_decompose(&p, 2).unwrap();
            assert_eq!(span.expand().unwrap(), p);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            decompose_main(&sym("x1^2"), 2),
            Err(Error::NotHarmonic { ell: 2 })
        );
        assert!(decompose_main(&sym("x1 x2 - x2 x1"), 1).is_err());
        assert_eq!(
            fully_span_decompose(&sym("x1 x2"), 2),
            Err(Error::NotFullyDegree { ell: 2 })
        );
    }
}
