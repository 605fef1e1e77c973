//! Directional derivatives, full-symbol derivatives and ℓ-Laplacians.

use itertools::Itertools;

use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{size_cap, FreePoly};
use crate::scalar::Scalar;
use crate::word::{Letter, Word};

fn check_index(p: &FreePoly, i: usize) -> Result<()> {
    if i == 0 || i > p.g() {
        return Err(Error::IndexOutOfRange { index: i, g: p.g() });
    }
    Ok(())
}

/// `D[p, x_i, dir]`: the sum over single replacements of an occurrence of
/// `x_i` (or `x_iᵀ`) by `dir` (or `dirᵀ`).
///
/// A variable direction `x_j` is taken as the `h`-derivative followed by
/// `h → x_j`, so `p` must not already contain `h` in that case.
pub fn dird(p: &FreePoly, i: usize, dir: Letter) -> Result<FreePoly> {
    check_index(p, i)?;
    if dir.adjoint() {
        return Err(Error::Precondition(
            "direction must be given without transpose".into(),
        ));
    }
    let dh = dird_h(p, i);
    match dir {
        Letter::Dir { .. } => Ok(dh),
        Letter::Var { index, .. } => {
            check_index(p, index as usize)?;
            if p.has_direction() {
                return Err(Error::Precondition(
                    "variable direction on a polynomial containing h".into(),
                ));
            }
            Ok(replace_direction(&dh, index as usize))
        }
    }
}

fn dird_h(p: &FreePoly, i: usize) -> FreePoly {
    let mut terms = Vec::new();
    for (w, c) in p.terms() {
        for (k, l) in w.iter().enumerate() {
            if l.is_var(i) {
                let mut v = w.0.clone();
                v[k] = Letter::h().with_adjoint(l.adjoint());
                terms.push((Word(v), c.clone()));
            }
        }
    }
    p.collect_like(terms)
}

/// Replaces `h` by `x_j` and `hᵀ` by `x_jᵀ`.
pub fn replace_direction(p: &FreePoly, j: usize) -> FreePoly {
    let x = Letter::x(j);
    p.collect_like(p.terms().map(|(w, c)| {
        let v = w
            .iter()
            .map(|&l| {
                if l.is_dir() {
                    x.with_adjoint(l.adjoint())
                } else {
                    l
                }
            })
            .collect();
        (Word(v), c.clone())
    }))
}

/// Iterated `h`-derivatives in the listed variable order.
pub fn dird_iterated(p: &FreePoly, order: &[usize]) -> Result<FreePoly> {
    let mut acc = p.clone();
    for &i in order {
        acc = dird(&acc, i, Letter::h())?;
    }
    Ok(acc)
}

/// `D[p, q, h]` for a full symbol `q`.
///
/// A monomial `x^e` of `q` contributes `Π e_i!` times every way of replacing
/// `e_i` distinct occurrences of each `x_i` by `h`, which is what the
/// iterated derivative produces.
pub fn dird_symbol(p: &FreePoly, q: &CommPoly) -> Result<FreePoly> {
    if q.g() != p.g() {
        return Err(Error::AlphabetMismatch(p.g(), q.g()));
    }
    let cap = size_cap();
    let mut out = FreePoly::zero(p.g(), p.mode());
    for (e, qc) in q.terms() {
        let mult: Scalar = e
            .iter()
            .fold(Scalar::one(), |acc, &k| &acc * &Scalar::factorial(k));
        let coeff = qc * &mult;
        for (w, c) in p.terms() {
            let pc = c * &coeff;
            let mut letters = w.0.clone();
            replace_choices(&mut letters, e, 0, &mut |v| {
                out.add_term(Word(v.to_vec()), pc.clone())
            });
            if out.len() > cap {
                return Err(Error::SizeCap { cap });
            }
        }
    }
    Ok(out)
}

/// Calls `emit` for every way of turning `e[k]` occurrences of each `x_{k+1}`
/// (k ≥ var) into direction letters.
fn replace_choices(
    letters: &mut Vec<Letter>,
    e: &[u32],
    var: usize,
    emit: &mut dyn FnMut(&[Letter]),
) {
    if var == e.len() {
        emit(letters);
        return;
    }
    let need = e[var] as usize;
    if need == 0 {
        replace_choices(letters, e, var + 1, emit);
        return;
    }
    let positions: Vec<usize> = (0..letters.len())
        .filter(|&k| letters[k].is_var(var + 1))
        .collect();
    if positions.len() < need {
        return;
    }
    for subset in positions.iter().copied().combinations(need) {
        let saved: Vec<Letter> = subset.iter().map(|&k| letters[k]).collect();
        for &k in &subset {
            letters[k] = Letter::h().with_adjoint(letters[k].adjoint());
        }
        replace_choices(letters, e, var + 1, emit);
        for (&k, &l) in subset.iter().zip(&saved) {
            letters[k] = l;
        }
    }
}

/// `D[p, Σ_i x_i^ℓ, h]`.
pub fn laplacian_ell(p: &FreePoly, ell: u32) -> Result<FreePoly> {
    if ell == 0 {
        return Err(Error::Precondition("ell must be at least 1".into()));
    }
    dird_symbol(p, &CommPoly::power_sum(p.g(), ell))
}

/// `D[p, x_i^order, x_j]`: the symbol derivative followed by `h → x_j`.
pub fn dird_subs(p: &FreePoly, i: usize, j: usize, order: u32) -> Result<FreePoly> {
    check_index(p, i)?;
    check_index(p, j)?;
    if p.has_direction() {
        return Err(Error::Precondition("polynomial already contains h".into()));
    }
    let d = dird_symbol(p, &CommPoly::var_pow(p.g(), i, order))?;
    Ok(replace_direction(&d, j))
}

/// A linear change of variables `x ↦ Ax` on a `g`-letter alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubst {
    a: Matrix,
}

impl LinearSubst {
    pub fn new(a: Matrix) -> Result<LinearSubst> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::Dimension(
                "linear substitution must be square".into(),
            ));
        }
        Ok(LinearSubst { a })
    }

    pub fn identity(g: usize) -> LinearSubst {
        LinearSubst {
            a: Matrix::identity(g),
        }
    }

    pub fn g(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn transpose(&self) -> LinearSubst {
        LinearSubst {
            a: self.a.transpose(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.a.rank() == self.g()
    }

    pub fn inverse(&self) -> Result<LinearSubst> {
        Ok(LinearSubst {
            a: self.a.inverse()?,
        })
    }

    /// The symbol `q(Aᵀx)` used on the right side of the chain rule.
    pub fn compose_symbol_transposed(&self, q: &CommPoly) -> CommPoly {
        q.substitute_linear(&self.a.transpose().to_rows())
    }
}

/// `p(Ax)`: each `x_i` becomes `Σ_j a_ij x_j` (flags carried; `h` untouched).
pub fn substitute_linear(p: &FreePoly, a: &LinearSubst) -> Result<FreePoly> {
    if a.g() != p.g() {
        return Err(Error::AlphabetMismatch(p.g(), a.g()));
    }
    let (g, mode) = (p.g(), p.mode());
    let images: Vec<[FreePoly; 2]> = (1..=g)
        .map(|i| {
            let row = a.a.row(i - 1);
            let mut plain = FreePoly::zero(g, mode);
            let mut adj = FreePoly::zero(g, mode);
            for (j, c) in row.iter().enumerate() {
                plain.add_term(Word::from_letters([Letter::x(j + 1)]), c.clone());
                adj.add_term(Word::from_letters([Letter::xt(j + 1)]), c.clone());
            }
            [plain, adj]
        })
        .collect();
    p.substitute_letters(|l| match l {
        Letter::Var { index, adjoint } => images[index as usize - 1][adjoint as usize].clone(),
        Letter::Dir { .. } => FreePoly::monomial(g, mode, Word::from_letters([l]), Scalar::one())
            .expect("direction letter"),
    })
}
