//! Nonsymmetric variables: transpose patterns `α ∈ {1,T}^d`, the projections
//! onto them and the collapse `x_iᵀ ↦ x_i` back to symmetric variables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harmonic::{decompose_main, try_is_ell_harmonic, Decomposition};
use crate::poly::FreePoly;
use crate::word::{Mode, Word};

/// Position-wise transpose pattern; `true` marks a `T`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaTuple(pub Vec<bool>);

impl AlphaTuple {
    pub fn ones(d: usize) -> AlphaTuple {
        AlphaTuple(vec![false; d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The pattern of adjoint flags along `w`.
    pub fn of_word(w: &Word) -> AlphaTuple {
        AlphaTuple(w.iter().map(|l| l.adjoint()).collect())
    }

    /// All `2^d` patterns, `1` before `T` lexicographically.
    pub fn all(d: usize) -> Vec<AlphaTuple> {
        (0..1u64 << d)
            .map(|bits| AlphaTuple((0..d).map(|k| bits >> (d - 1 - k) & 1 == 1).collect()))
            .collect()
    }

    /// `α^T`: reversed with every entry toggled.
    pub fn transpose(&self) -> AlphaTuple {
        AlphaTuple(self.0.iter().rev().map(|&t| !t).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == *self
    }
}

impl fmt::Display for AlphaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &t in &self.0 {
            f.write_str(if t { "T" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlphaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α({self})")
    }
}

impl FromStr for AlphaTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlphaTuple> {
        s.trim()
            .char_indices()
            .filter(|(_, c)| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|(k, c)| match c {
                '1' => Ok(false),
                'T' | 't' => Ok(true),
                _ => Err(Error::Parse {
                    offset: k,
                    message: format!("expected 1 or T, found {c:?}"),
                }),
            })
            .collect::<Result<Vec<bool>>>()
            .map(AlphaTuple)
    }
}

pub fn alpha_transpose(alpha: &AlphaTuple) -> AlphaTuple {
    alpha.transpose()
}

/// `p^α`: the adjoint flag at position `k` of every word set to `α_k`.
pub fn apply_alpha(p: &FreePoly, alpha: &AlphaTuple) -> Result<FreePoly> {
    if p.mode() != Mode::Symmetric {
        return Err(Error::ModeMismatch);
    }
    let d = alpha.len();
    p.require_homogeneous(d)?;
    let terms = p.terms().map(|(w, c)| {
        (
            Word(
                w.iter()
                    .zip(&alpha.0)
                    .map(|(l, &t)| l.with_adjoint(t))
                    .collect(),
            ),
            c.clone(),
        )
    });
    FreePoly::from_terms(p.g(), Mode::Nonsymmetric, terms)
}

/// Terms whose adjoint pattern is exactly `α`.
pub fn proj_alpha(p: &FreePoly, alpha: &AlphaTuple) -> FreePoly {
    p.filter(|w| w.len() == alpha.len() && AlphaTuple::of_word(w) == *alpha)
}

/// Every nonzero projection of `p`, keyed by pattern.
pub fn alpha_components(p: &FreePoly) -> BTreeMap<AlphaTuple, FreePoly> {
    let mut pats: BTreeMap<AlphaTuple, Vec<Word>> = BTreeMap::new();
    for (w, _) in p.terms() {
        pats.entry(AlphaTuple::of_word(w))
            .or_default()
            .push(w.clone());
    }
    pats.into_keys()
        .map(|a| {
            let q = proj_alpha(p, &a);
            (a, q)
        })
        .collect()
}

/// `Sx`: adjoint flags erased and like terms collected.
pub fn sx_collapse(p: &FreePoly) -> FreePoly {
    let terms = p.terms().map(|(w, c)| {
        (
            Word(w.iter().map(|l| l.with_adjoint(false)).collect()),
            c.clone(),
        )
    });
    FreePoly::from_terms(p.g(), Mode::Symmetric, terms).expect("collapsing keeps the alphabet")
}

/// One pattern's share of a nonsymmetric harmonic.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaPiece {
    pub alpha: AlphaTuple,
    pub decomposition: Decomposition,
}

impl AlphaPiece {
    pub fn expand(&self) -> Result<FreePoly> {
        apply_alpha(&self.decomposition.expand()?, &self.alpha)
    }
}

/// Splits an ℓ-harmonic nonsymmetric polynomial by transpose pattern and
/// decomposes each collapsed piece in symmetric variables.
pub fn nonsym_ell_harmonic_decompose(p: &FreePoly, ell: u32) -> Result<Vec<AlphaPiece>> {
    if p.mode() != Mode::Nonsymmetric {
        return Err(Error::ModeMismatch);
    }
    if p.is_zero() {
        return Ok(vec![]);
    }
    let d = p
        .homogeneous_degree()
        .ok_or(Error::NotHomogeneous(p.degree()))?;
    if !try_is_ell_harmonic(p, ell)? {
        return Err(Error::NotHarmonic { ell });
    }
    let mut out = Vec::new();
    let mut total = FreePoly::zero(p.g(), Mode::Nonsymmetric);
    for (alpha, piece) in alpha_components(p) {
        debug_assert_eq!(alpha.len(), d);
        let decomposition = decompose_main(&sx_collapse(&piece), ell)?;
        let part = AlphaPiece {
            alpha,
            decomposition,
        };
        let e = part.expand()?;
        total = total
            .with_alphabet(total.g().max(e.g()))?
            .checked_add(&e.with_alphabet(total.g().max(e.g()))?)?;
        out.push(part);
    }
    if total.with_alphabet(total.g().max(p.g()))? != p.with_alphabet(total.g().max(p.g()))? {
        return Err(Error::Precondition(
            "pattern pieces do not reassemble the input".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn ns(s: &str) -> FreePoly {
        parse_poly(s, Mode::Nonsymmetric, None).unwrap()
    }

    #[test]
    fn alpha_text() {
        let a: AlphaTuple = "1T1T".parse().unwrap();
        assert_eq!(a, AlphaTuple(vec![false, true, false, true]));
        assert_eq!(a.to_string(), "1T1T");
        assert!("1X".parse::<AlphaTuple>().is_err());
        assert_eq!(AlphaTuple::all(3).len(), 8);
    }

    #[test]
    fn apply_example() {
        let p = parse_poly("x1 x1 x1 x1 + 3 x2 x1 x1 x2", Mode::Symmetric, None).unwrap();
        let got = apply_alpha(&p, &"1T1T".parse().unwrap()).unwrap();
        assert_eq!(got, ns("x1 x1' x1 x1' + 3 x2 x1' x1 x2'"));
        let e = apply_alpha(&p, &AlphaTuple::ones(4)).unwrap();
        assert_eq!(e, p.with_mode(Mode::Nonsymmetric).unwrap());
        assert!(apply_alpha(&p, &AlphaTuple::ones(3)).is_err());
    }

    #[test]
    fn projection_example() {
        let p =
            ns("x1 x1 x2' x1 - 7 x2 x2 x1' x1 + 2 x1' x2 x2 x2 - 2 x1 x1 x1 x1 + x1 x1' x1' x2");
        let cases = [
            ("11T1", "x1 x1 x2' x1 - 7 x2 x2 x1' x1"),
            ("T111", "2 x1' x2 x2 x2"),
            ("1111", "-2 x1 x1 x1 x1"),
            ("1TT1", "x1 x1' x1' x2"),
        ];
        for (a, want) in cases {
            assert_eq!(
                proj_alpha(&p, &a.parse().unwrap()),
                ns(want).with_alphabet(2).unwrap()
            );
        }
        let comps = alpha_components(&p);
        assert_eq!(comps.len(), 4);
        let total = comps
            .values()
            .fold(FreePoly::zero(2, Mode::Nonsymmetric), |acc, q| &acc + q);
        assert_eq!(total, p);
        assert!(proj_alpha(&p, &"TTTT".parse().unwrap()).is_zero());
    }

    #[test]
    fn collapse_example() {
        let p = ns("x1' x2 x2' x1 - x1 x2 x2 x1' + 3 x1' x1 x1 x1");
        assert_eq!(
            sx_collapse(&p),
            parse_poly("3 x1^4", Mode::Symmetric, Some(2)).unwrap()
        );
    }

    #[test]
    fn alpha_transposes() {
        let a: AlphaTuple = "11TT".parse().unwrap();
        assert_eq!(a.transpose(), a);
        assert!(a.is_symmetric());
        let b: AlphaTuple = "1T".parse().unwrap();
        assert_eq!(b.transpose(), b);
        let c: AlphaTuple = "T11".parse().unwrap();
        assert_eq!(c.transpose().to_string(), "TT1");
    }

    #[test]
    fn transpose_compatibility() {
        let m = parse_poly("x1 x2 x3 + 2 x3 x3 x1", Mode::Symmetric, None).unwrap();
        for a in AlphaTuple::all(3) {
            let lhs = apply_alpha(&m, &a).unwrap().transpose();
            let rhs = apply_alpha(&m.transpose(), &a.transpose()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn decompose_example() {
        let p = ns("x1' x1 x3 - x2' x2 x3");
        let pieces = nonsym_ell_harmonic_decompose(&p, 2).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].alpha.to_string(), "T11");
        assert_eq!(pieces[0].expand().unwrap().with_alphabet(3).unwrap(), p);
        assert_eq!(
            pieces[0]
                .decomposition
                .expand()
                .unwrap()
                .with_alphabet(3)
                .unwrap(),
            parse_poly("x1^2 x3 - x2^2 x3", Mode::Symmetric, Some(3)).unwrap()
        );
        assert!(matches!(
            nonsym_ell_harmonic_decompose(&ns("x1' x1"), 2),
            Err(Error::NotHarmonic { .. })
        ));
    }
}
