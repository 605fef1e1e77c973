//! Free polynomials: finite maps from words to nonzero scalars.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::{Letter, Mode, Word};

/// Default bound on the number of words in any constructed polynomial.
pub const DEFAULT_SIZE_CAP: usize = 200_000;

/// The word-count cap, read once from `FREEHARM_SIZE_CAP` when set.
pub fn size_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("FREEHARM_SIZE_CAP")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_SIZE_CAP)
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreePoly {
    g: usize,
    mode: Mode,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(g: usize, mode: Mode) -> FreePoly {
        FreePoly {
            g,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(g: usize, mode: Mode, c: Scalar) -> FreePoly {
        let mut p = FreePoly::zero(g, mode);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one(g: usize, mode: Mode) -> FreePoly {
        FreePoly::constant(g, mode, Scalar::one())
    }

    pub fn var(g: usize, mode: Mode, i: usize) -> FreePoly {
        FreePoly::monomial(g, mode, Word::vars(&[i]), Scalar::one()).expect("variable in alphabet")
    }

    pub fn monomial(g: usize, mode: Mode, w: Word, c: Scalar) -> Result<FreePoly> {
        check_word(g, mode, &w)?;
        let mut p = FreePoly::zero(g, mode);
        p.add_term(w, c);
        Ok(p)
    }

    /// Sum of the given terms; repeated words are combined.
    pub fn from_terms(
        g: usize,
        mode: Mode,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<FreePoly> {
        let mut p = FreePoly::zero(g, mode);
        for (w, c) in terms {
            check_word(g, mode, &w)?;
            p.add_term(w, c);
        }
        Ok(p)
    }

    /// Monomial in plain variables, 1-based indices, coefficient 1.
    pub fn word(g: usize, mode: Mode, indices: &[usize]) -> FreePoly {
        FreePoly::monomial(g, mode, Word::vars(indices), Scalar::one()).expect("word in alphabet")
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Adds `c·w` in place without validating `w`; callers guarantee the alphabet.
    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Builds a polynomial in the same alphabet from raw terms.
    pub(crate) fn collect_like(&self, terms: impl IntoIterator<Item = (Word, Scalar)>) -> FreePoly {
        let mut p = FreePoly::zero(self.g, self.mode);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn check_compatible(&self, other: &FreePoly) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        if self.g != other.g {
            return Err(Error::AlphabetMismatch(self.g, other.g));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_compatible(other)?;
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn checked_sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_compatible(other)?;
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), -c);
        }
        Ok(p)
    }

    pub fn checked_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.checked_mul_capped(other, size_cap())
    }

    pub fn checked_mul_capped(&self, other: &FreePoly, cap: usize) -> Result<FreePoly> {
        self.check_compatible(other)?;
        let mut p = FreePoly::zero(self.g, self.mode);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                p.add_term(u.concat(v), a * b);
                if p.terms.len() > cap {
                    return Err(Error::SizeCap { cap });
                }
            }
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        if c.is_zero() {
            return FreePoly::zero(self.g, self.mode);
        }
        FreePoly {
            g: self.g,
            mode: self.mode,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<FreePoly> {
        let mut acc = FreePoly::one(self.g, self.mode);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Product of a list of polynomials; the empty product is 1.
    pub fn product(g: usize, mode: Mode, factors: &[FreePoly]) -> Result<FreePoly> {
        let mut acc = FreePoly::one(g, mode);
        for f in factors {
            acc = acc.checked_mul(f)?;
        }
        Ok(acc)
    }

    /// Word reversal; adjoint flags toggle in nonsymmetric mode. No conjugation.
    pub fn transpose(&self) -> FreePoly {
        let toggle = self.mode == Mode::Nonsymmetric;
        FreePoly {
            g: self.g,
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.transpose(toggle), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn require_real(&self) -> Result<()> {
        if self.is_real() {
            Ok(())
        } else {
            Err(Error::ComplexCoefficient)
        }
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).min().unwrap_or(0)
    }

    /// Largest number of letters with index `i` in any word (`i = 0` counts `h`).
    pub fn degree_in(&self, i: usize) -> usize {
        self.terms.keys().map(|w| w.count(i)).max().unwrap_or(0)
    }

    /// `Some(d)` when every word has length `d`; the zero polynomial gives `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Errors unless `self` is zero or homogeneous of degree `d`.
    pub fn require_homogeneous(&self, d: usize) -> Result<()> {
        match self.homogeneous_degree() {
            None if self.is_zero() => Ok(()),
            Some(e) if e == d => Ok(()),
            _ => Err(Error::NotHomogeneous(d)),
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> FreePoly {
        self.filter(|w| w.len() == d)
    }

    pub fn homogeneous_in(&self, i: usize, d: usize) -> FreePoly {
        self.filter(|w| w.count(i) == d)
    }

    /// Components by total degree, ascending.
    pub fn components(&self) -> BTreeMap<usize, FreePoly> {
        let mut out: BTreeMap<usize, FreePoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len())
                .or_insert_with(|| FreePoly::zero(self.g, self.mode))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> FreePoly {
        FreePoly {
            g: self.g,
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Variable indices that occur (`h` excluded).
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|w| w.iter().filter(|l| !l.is_dir()).map(|l| l.index()))
            .collect()
    }

    pub fn has_direction(&self) -> bool {
        self.terms.keys().any(|w| w.iter().any(|l| l.is_dir()))
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(Word::max_index).max().unwrap_or(0)
    }

    /// Same polynomial viewed in an alphabet of `g` variables.
    pub fn with_alphabet(&self, g: usize) -> Result<FreePoly> {
        if self.max_index() > g {
            return Err(Error::IndexOutOfRange {
                index: self.max_index(),
                g,
            });
        }
        Ok(FreePoly {
            g,
            mode: self.mode,
            terms: self.terms.clone(),
        })
    }

    /// Same words reinterpreted in the other mode; adjoint flags must be absent
    /// when moving to symmetric mode.
    pub fn with_mode(&self, mode: Mode) -> Result<FreePoly> {
        if mode == Mode::Symmetric && self.terms.keys().any(Word::has_adjoint) {
            return Err(Error::TransposeInSymmetricMode);
        }
        Ok(FreePoly {
            g: self.g,
            mode,
            terms: self.terms.clone(),
        })
    }

    /// Replaces every letter by a polynomial image, expanding products.
    pub fn substitute_letters(&self, image: impl Fn(Letter) -> FreePoly) -> Result<FreePoly> {
        let cap = size_cap();
        let mut out = FreePoly::zero(self.g, self.mode);
        for (w, c) in &self.terms {
            let mut acc = FreePoly::constant(self.g, self.mode, c.clone());
            for &l in w.iter() {
                acc = acc.checked_mul_capped(&image(l), cap)?;
            }
            out = out.checked_add(&acc)?;
            if out.len() > cap {
                return Err(Error::SizeCap { cap });
            }
        }
        Ok(out)
    }
}

fn check_word(g: usize, mode: Mode, w: &Word) -> Result<()> {
    for &l in w.iter() {
        if mode == Mode::Symmetric && l.adjoint() {
            return Err(Error::TransposeInSymmetricMode);
        }
        if let Letter::Var { index, .. } = l {
            if index as usize > g {
                return Err(Error::IndexOutOfRange {
                    index: index as usize,
                    g,
                });
            }
        }
    }
    Ok(())
}

impl<'a> Add<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    /// Panics on alphabet or mode mismatch; see [`FreePoly::checked_add`].
    fn add(self, o: &FreePoly) -> FreePoly {
        self.checked_add(o).expect("incompatible polynomials")
    }
}

impl<'a> Sub<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn sub(self, o: &FreePoly) -> FreePoly {
        self.checked_sub(o).expect("incompatible polynomials")
    }
}

impl<'a> Mul<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    /// Panics on mismatch or when the size cap is exceeded.
    fn mul(self, o: &FreePoly) -> FreePoly {
        self.checked_mul(o).expect("polynomial product failed")
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(self))
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePoly[g={}, {}]({})", self.g, self.mode.name(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[usize]) -> FreePoly {
        FreePoly::word(2, Mode::Symmetric, ix)
    }

    #[test]
    fn additive_inverse_and_doubling() {
        let p = w(&[1, 2]);
        assert!((&p - &p).is_zero());
        assert_eq!((&p + &p).coeff(&Word::vars(&[1, 2])), Scalar::from_int(2));
    }

    #[test]
    fn product_is_concatenation() {
        let a = w(&[1]);
        let b = w(&[2]);
        assert_ne!(&a * &b, &b * &a);
        assert_eq!(&a * &b, w(&[1, 2]));
        let one = FreePoly::one(2, Mode::Symmetric);
        assert_eq!(&one * &a, a);
    }

    #[test]
    fn mismatch_errors() {
        let a = FreePoly::var(2, Mode::Symmetric, 1);
        let b = FreePoly::var(3, Mode::Symmetric, 1);
        assert_eq!(a.checked_add(&b), Err(Error::AlphabetMismatch(2, 3)));
        let c = FreePoly::var(2, Mode::Nonsymmetric, 1);
        assert_eq!(a.checked_mul(&c), Err(Error::ModeMismatch));
    }

    #[test]
    fn size_cap_guard() {
        let x = &FreePoly::var(2, Mode::Symmetric, 1) + &FreePoly::var(2, Mode::Symmetric, 2);
        let x4 = x.pow(4).unwrap();
        assert_eq!(x4.len(), 16);
        assert_eq!(
            x4.checked_mul_capped(&x, 20),
            Err(Error::SizeCap { cap: 20 })
        );
    }

    #[test]
    fn degrees() {
        let p = &(&w(&[1, 1, 2, 1]) + &w(&[1, 2, 1, 1]))
            + &FreePoly::constant(2, Mode::Symmetric, 7.into());
        assert_eq!(p.degree_in(2), 1);
        assert_eq!(p.degree_in(1), 3);
        assert_eq!(FreePoly::zero(2, Mode::Symmetric).degree_in(1), 0);
        assert_eq!(
            p.homogeneous_component(0),
            FreePoly::constant(2, Mode::Symmetric, 7.into())
        );
        assert!(!p.is_homogeneous());
    }

    #[test]
    fn nonsymmetric_transpose() {
        let g = 2;
        let p = FreePoly::monomial(
            g,
            Mode::Nonsymmetric,
            Word::from_letters([Letter::x(1), Letter::xt(2)]),
            Scalar::one(),
        )
        .unwrap();
        let t = p.transpose();
        assert_eq!(
            t.coeff(&Word::from_letters([Letter::x(2), Letter::xt(1)])),
            Scalar::one()
        );
        assert_eq!(t.transpose(), p);
        assert!(FreePoly::monomial(
            g,
            Mode::Symmetric,
            Word::from_letters([Letter::xt(1)]),
            Scalar::one()
        )
        .is_err());
    }
}
