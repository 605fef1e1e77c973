//! Evaluation of free polynomials at tuples of real matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::poly::FreePoly;
use crate::word::{Letter, Mode};

pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple {
    n: usize,
    mats: Vec<DMatrix<f64>>,
    symmetric: bool,
}

impl MatrixTuple {
    /// Errors on ragged dimensions, or on asymmetric entries when `symmetric` is set.
    pub fn new(mats: Vec<DMatrix<f64>>, symmetric: bool) -> Result<MatrixTuple> {
        let n = mats.first().map(|m| m.nrows()).unwrap_or(0);
        for m in &mats {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Dimension(format!("expected {n}x{n} matrices")));
            }
            if symmetric && !is_symmetric(m) {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(MatrixTuple { n, mats, symmetric })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.mats.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> &DMatrix<f64> {
        &self.mats[i - 1]
    }
}

pub fn is_symmetric(m: &DMatrix<f64>) -> bool {
    m.nrows() == m.ncols()
        && (0..m.nrows())
            .all(|i| (0..i).all(|j| (m[(i, j)] - m[(j, i)]).abs() <= SYMMETRY_TOLERANCE))
}

/// `p(X)`; the constant term becomes `c·I`.
pub fn evaluate(p: &FreePoly, x: &MatrixTuple) -> Result<DMatrix<f64>> {
    evaluate_with_direction(p, x, None)
}

/// `p(X, H)` for polynomials that may contain the direction letter.
pub fn evaluate_with_direction(
    p: &FreePoly,
    x: &MatrixTuple,
    h: Option<&DMatrix<f64>>,
) -> Result<DMatrix<f64>> {
    p.require_real()?;
    if p.mode() == Mode::Symmetric && !x.symmetric {
        return Err(Error::Precondition(
            "symmetric mode needs a symmetric matrix tuple".into(),
        ));
    }
    if x.g() < p.max_index() {
        return Err(Error::Dimension(format!(
            "{} matrices for alphabet {}",
            x.g(),
            p.max_index()
        )));
    }
    let n = x.n;
    if let Some(hm) = h {
        if hm.nrows() != n || hm.ncols() != n {
            return Err(Error::Dimension("direction matrix size".into()));
        }
    }
    let transposes: Vec<DMatrix<f64>> = x.mats.iter().map(|m| m.transpose()).collect();
    let ht = h.map(|m| m.transpose());
    let mut out = DMatrix::zeros(n, n);
    for (w, c) in p.terms() {
        let mut acc = DMatrix::identity(n, n);
        for &l in w.iter() {
            let m = match l {
                Letter::Var { index, adjoint } => {
                    let i = index as usize - 1;
                    if adjoint {
                        &transposes[i]
                    } else {
                        &x.mats[i]
                    }
                }
                Letter::Dir { adjoint } => {
                    let hm =
                        h.ok_or_else(|| Error::Precondition("direction matrix required".into()))?;
                    if adjoint {
                        ht.as_ref().expect("transpose computed")
                    } else {
                        hm
                    }
                }
            };
            acc = &acc * m;
        }
        out += acc * c.to_f64()?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn sym2(a: f64, b: f64, c: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[a, b, b, c])
    }

    #[test]
    fn constant_term_is_identity_multiple() {
        let x = MatrixTuple::new(vec![sym2(1.0, 2.0, 0.5), sym2(-1.0, 0.25, 3.0)], true).unwrap();
        let p = parse_poly("3 + x1^2 + 5 x2^3", Mode::Symmetric, None).unwrap();
        let got = evaluate(&p, &x).unwrap();
        let x1 = x.get(1);
        let x2 = x.get(2);
        let want = DMatrix::identity(2, 2) * 3.0 + x1 * x1 + x2 * x2 * x2 * 5.0;
        assert_eq!(got, want);
        assert_eq!(
            evaluate(&FreePoly::one(2, Mode::Symmetric), &x).unwrap(),
            DMatrix::identity(2, 2)
        );
    }

    #[test]
    fn rejects_complex_and_asymmetric() {
        let x = MatrixTuple::new(vec![sym2(1.0, 0.0, 1.0)], true).unwrap();
        let p = parse_poly("i x1", Mode::Symmetric, None).unwrap();
        assert_eq!(evaluate(&p, &x), Err(Error::ComplexCoefficient));
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(MatrixTuple::new(vec![a], true).is_err());
    }
}
