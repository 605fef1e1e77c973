//! Letters and words of the free monoid.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

/// Whether variables satisfy `x_iᵀ = x_i` or carry distinct adjoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Symmetric,
    Nonsymmetric,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Symmetric => "symmetric",
            Mode::Nonsymmetric => "nonsymmetric",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        match s {
            "symmetric" => Some(Mode::Symmetric),
            "nonsymmetric" => Some(Mode::Nonsymmetric),
            _ => None,
        }
    }
}

/// A variable `x_j` (j ≥ 1) or the direction letter `h`, each with an adjoint
/// flag. Variables order by (index, adjoint); `h` sorts after every variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Var { index: u16, adjoint: bool },
    Dir { adjoint: bool },
}

impl Letter {
    pub fn x(index: usize) -> Letter {
        assert!(
            index >= 1 && index <= u16::MAX as usize,
            "variable index {index}"
        );
        Letter::Var {
            index: index as u16,
            adjoint: false,
        }
    }

    pub fn xt(index: usize) -> Letter {
        Letter::x(index).with_adjoint(true)
    }

    pub fn h() -> Letter {
        Letter::Dir { adjoint: false }
    }

    pub fn ht() -> Letter {
        Letter::Dir { adjoint: true }
    }

    /// Variable index, with `h` reported as 0.
    pub fn index(self) -> usize {
        match self {
            Letter::Var { index, .. } => index as usize,
            Letter::Dir { .. } => 0,
        }
    }

    pub fn is_dir(self) -> bool {
        matches!(self, Letter::Dir { .. })
    }

    pub fn is_var(self, i: usize) -> bool {
        matches!(self, Letter::Var { index, .. } if index as usize == i)
    }

    pub fn adjoint(self) -> bool {
        match self {
            Letter::Var { adjoint, .. } | Letter::Dir { adjoint } => adjoint,
        }
    }

    pub fn with_adjoint(self, a: bool) -> Letter {
        match self {
            Letter::Var { index, .. } => Letter::Var { index, adjoint: a },
            Letter::Dir { .. } => Letter::Dir { adjoint: a },
        }
    }

    pub fn toggled(self) -> Letter {
        self.with_adjoint(!self.adjoint())
    }

    /// Same kind and index with `other`'s letter identity but this letter's flag.
    pub fn renamed(self, to: Letter) -> Letter {
        to.with_adjoint(self.adjoint())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Var { index, adjoint } => {
                write!(f, "x{index}{}", if adjoint { "'" } else { "" })
            }
            Letter::Dir { adjoint } => write!(f, "h{}", if adjoint { "'" } else { "" }),
        }
    }
}

/// A monomial. Words compare length-first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    /// `x_{a1} x_{a2} …` from 1-based indices.
    pub fn vars(indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| Letter::x(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reverse, toggling adjoint flags when `toggle` is set.
    pub fn transpose(&self, toggle: bool) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|&l| if toggle { l.toggled() } else { l })
                .collect(),
        )
    }

    /// Number of letters with variable index `i` (both flags, `h` is index 0).
    pub fn count(&self, i: usize) -> usize {
        self.0
            .iter()
            .filter(|l| l.index() == i && (i != 0 || l.is_dir()))
            .count()
    }

    pub fn dir_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_dir()).count()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn has_adjoint(&self) -> bool {
        self.0.iter().any(|l| l.adjoint())
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Space-separated letters with runs collapsed to `^k`; `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.0.len() {
            let l = self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{l}^{run}")?;
            } else {
                write!(f, "{l}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_order() {
        let a = Word::vars(&[2]);
        let b = Word::vars(&[1, 1]);
        let c = Word::vars(&[1, 2]);
        assert!(a < b && b < c);
        let xh = Word::from_letters([Letter::x(1), Letter::h()]);
        let hx = Word::from_letters([Letter::h(), Letter::x(1)]);
        assert!(xh < hx);
        assert!(Letter::x(1) < Letter::xt(1));
        assert!(Letter::xt(9) < Letter::h());
    }

    #[test]
    fn transpose_and_display() {
        let w = Word::from_letters([Letter::x(1), Letter::xt(2), Letter::h()]);
        assert_eq!(w.transpose(true).to_string(), "h' x2 x1'");
        assert_eq!(Word::vars(&[1, 1, 2, 1]).to_string(), "x1^2 x2 x1");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn counts() {
        let w = Word::from_letters([Letter::x(1), Letter::xt(1), Letter::h(), Letter::x(2)]);
        assert_eq!(w.count(1), 2);
        assert_eq!(w.count(0), 1);
        assert_eq!(w.dir_count(), 1);
    }
}
