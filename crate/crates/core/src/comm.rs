//! Commutative polynomials on exponent vectors, used as full symbols.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommPoly {
    g: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CommPoly {
    pub fn zero(g: usize) -> CommPoly {
        CommPoly {
            g,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(g: usize, c: Scalar) -> CommPoly {
        let mut q = CommPoly::zero(g);
        q.add_term(vec![0; g], c);
        q
    }

    pub fn one(g: usize) -> CommPoly {
        CommPoly::constant(g, Scalar::one())
    }

    /// `c · x^e`.
    pub fn monomial(exps: Vec<u32>, c: Scalar) -> CommPoly {
        let mut q = CommPoly::zero(exps.len());
        q.add_term(exps, c);
        q
    }

    /// `x_i^k` for 1-based `i`.
    pub fn var_pow(g: usize, i: usize, k: u32) -> CommPoly {
        let mut e = vec![0; g];
        e[i - 1] = k;
        CommPoly::monomial(e, Scalar::one())
    }

    /// `Σ_i x_i^ℓ`.
    pub fn power_sum(g: usize, ell: u32) -> CommPoly {
        let mut q = CommPoly::zero(g);
        for i in 1..=g {
            q = &q + &CommPoly::var_pow(g, i, ell);
        }
        q
    }

    /// `Σ_j c_j x_j`.
    pub fn linear(coeffs: &[Scalar]) -> CommPoly {
        let g = coeffs.len();
        let mut q = CommPoly::zero(g);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; g];
            e[j] = 1;
            q.add_term(e, c.clone());
        }
        q
    }

    pub fn from_terms(
        g: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<CommPoly> {
        let mut q = CommPoly::zero(g);
        for (e, c) in terms {
            if e.len() != g {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} for g = {g}",
                    e.len()
                )));
            }
            q.add_term(e, c);
        }
        Ok(q)
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        debug_assert_eq!(e.len(), self.g);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i - 1]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CommPoly {
        let mut q = CommPoly::zero(self.g);
        for (e, a) in &self.terms {
            q.add_term(e.clone(), a * c);
        }
        q
    }

    /// Same polynomial in an alphabet of `g ≥ self.g()` variables.
    pub fn extend(&self, g: usize) -> CommPoly {
        assert!(g >= self.g);
        let mut q = CommPoly::zero(g);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.resize(g, 0);
            q.add_term(f, c.clone());
        }
        q
    }

    /// `∂^k / ∂x_i^k`.
    pub fn partial(&self, i: usize, k: u32) -> CommPoly {
        let mut q = CommPoly::zero(self.g);
        for (e, c) in &self.terms {
            let n = e[i - 1];
            if n < k {
                continue;
            }
            let mut falling = Scalar::one();
            for t in 0..k {
                falling = &falling * &Scalar::from_int((n - t) as i64);
            }
            let mut f = e.clone();
            f[i - 1] -= k;
            q.add_term(f, c * &falling);
        }
        q
    }

    /// `Σ_i ∂^ℓ/∂x_i^ℓ`, optionally skipping one variable.
    pub fn laplacian(&self, ell: u32, skip: Option<usize>) -> CommPoly {
        let mut q = CommPoly::zero(self.g);
        for i in 1..=self.g {
            if Some(i) != skip {
                q = &q + &self.partial(i, ell);
            }
        }
        q
    }

    /// `q(∇) p`: each monomial `x^e` of `self` acts as `∂^e`.
    pub fn apply_as_operator(&self, p: &CommPoly) -> CommPoly {
        assert_eq!(self.g, p.g);
        let mut out = CommPoly::zero(p.g);
        for (e, c) in &self.terms {
            let mut t = p.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.partial(i + 1, k);
                }
            }
            out = &out + &t.scale(c);
        }
        out
    }

    /// `q(Ax)`: each `x_i` is replaced by `Σ_j a_ij x_j`.
    pub fn substitute_linear(&self, a: &[Vec<Scalar>]) -> CommPoly {
        let forms: Vec<CommPoly> = a.iter().map(|row| CommPoly::linear(row)).collect();
        let mut out = CommPoly::zero(self.g);
        for (e, c) in &self.terms {
            let mut t = CommPoly::constant(self.g, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = &t * &forms[i];
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::one(self.g);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> std::ops::Add<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn add(self, o: &CommPoly) -> CommPoly {
        assert_eq!(self.g, o.g, "commutative alphabet mismatch");
        let mut q = self.clone();
        for (e, c) in &o.terms {
            q.add_term(e.clone(), c.clone());
        }
        q
    }
}

impl<'a> std::ops::Sub<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn sub(self, o: &CommPoly) -> CommPoly {
        self + &o.scale(&Scalar::from_int(-1))
    }
}

impl<'a> std::ops::Mul<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn mul(self, o: &CommPoly) -> CommPoly {
        assert_eq!(self.g, o.g, "commutative alphabet mismatch");
        let mut q = CommPoly::zero(self.g);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                let s: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                q.add_term(s, a * b);
            }
        }
        q
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{k}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join(" "))?;
            } else {
                write!(f, "{c} {}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partials_and_laplacian() {
        let q = CommPoly::var_pow(2, 2, 4);
        assert_eq!(
            q.partial(2, 2),
            CommPoly::var_pow(2, 2, 2).scale(&Scalar::from_int(12))
        );
        assert!(q.partial(1, 1).is_zero());
        let x2 = &CommPoly::var_pow(2, 1, 2) - &CommPoly::var_pow(2, 2, 2);
        assert!(x2.laplacian(2, None).is_zero());
    }

    #[test]
    fn operator_application() {
        // x1^2 acting on x1^2 x2^2 gives 2 x2^2
        let p = CommPoly::monomial(vec![2, 2], Scalar::one());
        let q = CommPoly::var_pow(2, 1, 2);
        assert_eq!(
            q.apply_as_operator(&p),
            CommPoly::var_pow(2, 2, 2).scale(&Scalar::from_int(2))
        );
    }

    #[test]
    fn linear_substitution() {
        let q = CommPoly::var_pow(2, 1, 2);
        let a = vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one()],
        ];
        let s = q.substitute_linear(&a);
        assert_eq!(s.coeff(&[1, 1]), Scalar::from_int(2));
        assert_eq!(s.len(), 3);
    }
}
