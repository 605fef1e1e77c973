//! Permutations of word positions.
//!
//! A permutation acts on a homogeneous degree-`d` word by
//! `σ[x_{a1}…x_{ad}] = x_{a_σ(1)}…x_{a_σ(d)}`. Composition is
//! `(στ)(k) = σ(τ(k))`, so the action satisfies `σ[τ[m]] = (τσ)[m]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// 0-based images.
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Permutation {
        Permutation {
            img: (0..d).collect(),
        }
    }

    /// From 1-based images, e.g. `[4, 2, 3, 1]`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut img = Vec::with_capacity(d);
        for &v in images {
            if v == 0 || v > d || seen[v - 1] {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[v - 1] = true;
            img.push(v - 1);
        }
        Ok(Permutation { img })
    }

    /// From 0-based images; the caller guarantees a bijection.
    pub(crate) fn from_zero_based(img: Vec<usize>) -> Permutation {
        debug_assert!({
            let mut s = img.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(k, &v)| k == v)
        });
        Permutation { img }
    }

    /// From disjoint cycles on `{1..d}`.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut img: Vec<usize> = (0..d).collect();
        let mut touched = vec![false; d];
        for cyc in cycles {
            for &v in cyc {
                if v == 0 || v > d || touched[v - 1] {
                    return Err(Error::Precondition(format!(
                        "bad cycle {cyc:?} for degree {d}"
                    )));
                }
                touched[v - 1] = true;
            }
            for k in 0..cyc.len() {
                img[cyc[k] - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Ok(Permutation { img })
    }

    /// Parses `[4,2,3,1]` or cycle notation such as `(1 4)(2 3)`; cycle form
    /// needs the degree `d`.
    pub fn parse(text: &str, d: Option<usize>) -> Result<Permutation> {
        let t = text.trim();
        let bad = |m: &str| Error::Parse {
            offset: 0,
            message: m.to_string(),
        };
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let images: Vec<usize> = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad("bad image entry")))
                .collect::<Result<_>>()?;
            return Permutation::from_images(&images);
        }
        let d = d.ok_or_else(|| bad("cycle notation needs a degree"))?;
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("expected ')'"))?;
            let cyc: Vec<usize> = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad("bad cycle entry")))
                .collect::<Result<_>>()?;
            cycles.push(cyc);
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(d, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// 1-based image of 1-based `k`.
    pub fn image(&self, k: usize) -> usize {
        self.img[k - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degree"
        );
        Permutation {
            img: other.img.iter().map(|&k| self.img[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.img.len()];
        for (k, &v) in self.img.iter().enumerate() {
            inv[v] = k;
        }
        Permutation { img: inv }
    }

    /// The permutation `π` with `π[m] = outer[inner[m]]`, namely `inner ∘ outer`.
    pub fn act_then(inner: &Permutation, outer: &Permutation) -> Permutation {
        inner.compose(outer)
    }

    /// Identity on the first `k` positions, `self` shifted onto the rest.
    pub fn shifted(&self, k: usize) -> Permutation {
        let mut img: Vec<usize> = (0..k).collect();
        img.extend(self.img.iter().map(|v| v + k));
        Permutation { img }
    }

    /// `σ[w]`; the word length must equal the degree.
    pub fn act(&self, w: &Word) -> Word {
        assert_eq!(
            w.len(),
            self.degree(),
            "word length differs from permutation degree"
        );
        Word(self.img.iter().map(|&k| w[k]).collect())
    }

    /// All permutations of degree `d` in lexicographic order of image arrays.
    pub fn all(d: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..d)
            .permutations(d)
            .map(|img| Permutation { img })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let a = Permutation::parse("[4,2,3,1]", None).unwrap();
        let b = Permutation::parse("(1 4)", Some(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[4,2,3,1]");
        let c = Permutation::parse("(1 2 3)", Some(3)).unwrap();
        assert_eq!(c.images(), vec![2, 3, 1]);
        assert!(Permutation::parse("[1,1]", None).is_err());
    }

    #[test]
    fn action_is_right_action() {
        let w = Word::vars(&[1, 2, 3]);
        let s = Permutation::from_images(&[2, 3, 1]).unwrap();
        let t = Permutation::from_images(&[2, 1, 3]).unwrap();
        let lhs = s.act(&t.act(&w));
        assert_eq!(lhs, t.compose(&s).act(&w));
        assert_eq!(lhs, Permutation::act_then(&t, &s).act(&w));
    }

    #[test]
    fn inverse_and_shift() {
        let s = Permutation::from_images(&[3, 1, 2]).unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
        assert_eq!(s.shifted(2).images(), vec![1, 2, 5, 3, 4]);
        assert_eq!(Permutation::all(3).len(), 6);
    }
}
