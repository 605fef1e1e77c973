//! Canonical text form and the expression parser.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'] factor | '/' factor)*
//! factor  := primary ('\'' | '^' uint)*
//! primary := uint | 'i' | 'x' uint ['\''] | 'h' ['\''] | '(' expr ')'
//! ```
//!
//! Division is only by nonzero constants. A postfix `'` after a parenthesized
//! group transposes it.

use crate::error::{Error, Result};
use crate::poly::FreePoly;
use crate::scalar::Scalar;
use crate::word::{Letter, Mode, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub mode: Mode,
    /// Alphabet size; inferred from the largest index when `None`.
    pub g: Option<usize>,
    /// Accept the direction letters `h` and `h'`.
    pub allow_direction: bool,
}

impl ParseOptions {
    pub fn new(mode: Mode) -> Self {
        ParseOptions {
            mode,
            g: None,
            allow_direction: false,
        }
    }

    pub fn with_g(mut self, g: Option<usize>) -> Self {
        self.g = g;
        self
    }

    pub fn with_direction(mut self) -> Self {
        self.allow_direction = true;
        self
    }
}

/// Parses a polynomial without direction letters.
pub fn parse_poly(text: &str, mode: Mode, g: Option<usize>) -> Result<FreePoly> {
    parse_poly_with(text, &ParseOptions::new(mode).with_g(g))
}

pub fn parse_poly_with(text: &str, opts: &ParseOptions) -> Result<FreePoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        opts,
        max_index: 0,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let raw = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected character"));
    }
    let g = opts.g.unwrap_or(p.max_index.max(1));
    raw.with_alphabet(g)
}

const WORK_G: usize = u16::MAX as usize;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    opts: &'a ParseOptions,
    max_index: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn zero(&self) -> FreePoly {
        FreePoly::zero(WORK_G, self.opts.mode)
    }

    fn constant(&self, c: Scalar) -> FreePoly {
        FreePoly::constant(WORK_G, self.opts.mode, c)
    }

    fn expr(&mut self) -> Result<FreePoly> {
        let mut acc = self.zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 {
                acc.checked_sub(&t)?
            } else {
                acc.checked_add(&t)?
            };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_primary(c: u8) -> bool {
        c.is_ascii_digit() || c == b'x' || c == b'h' || c == b'i' || c == b'('
    }

    fn term(&mut self) -> Result<FreePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    let c = as_constant(&f).ok_or(Error::Parse {
                        offset: at,
                        message: "division by a non-constant".into(),
                    })?;
                    let inv = c.inv().map_err(|_| Error::Parse {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                Some(c) if Self::starts_primary(c) => {
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FreePoly> {
        let mut base = self.primary()?;
        loop {
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    base = base.transpose();
                }
                Some(b'^') => {
                    self.pos += 1;
                    self.skip_ws();
                    let k = self.uint()?;
                    let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                    base = base.pow(k)?;
                }
                _ => return Ok(base),
            }
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn prime(&mut self) -> bool {
        if self.src.get(self.pos) == Some(&b'\'') {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn primary(&mut self) -> Result<FreePoly> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        let start = self.pos;
        match c {
            b'0'..=b'9' => {
                let n = self.uint()?;
                Ok(self.constant(Scalar::real(BigRational::from_integer(n))))
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            b'i' => {
                self.pos += 1;
                if self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric())
                {
                    self.pos = start;
                    return Err(self.err("unknown identifier"));
                }
                Ok(self.constant(Scalar::i()))
            }
            b'h' => {
                self.pos += 1;
                if !self.opts.allow_direction {
                    self.pos = start;
                    return Err(self.err("direction letter h is not allowed here"));
                }
                let t = self.prime();
                self.letter(if t { Letter::ht() } else { Letter::h() }, start)
            }
            b'x' => {
                self.pos += 1;
                let n = self.uint()?;
                let idx: usize = n
                    .try_into()
                    .ok()
                    .filter(|&k: &usize| (1..=WORK_G).contains(&k))
                    .ok_or(Error::Parse {
                        offset: start,
                        message: "bad variable index".into(),
                    })?;
                if let Some(g) = self.opts.g {
                    if idx > g {
                        return Err(Error::Parse {
                            offset: start,
                            message: format!("variable x{idx} exceeds alphabet size {g}"),
                        });
                    }
                }
                self.max_index = self.max_index.max(idx);
                let t = self.prime();
                self.letter(if t { Letter::xt(idx) } else { Letter::x(idx) }, start)
            }
            _ => Err(self.err("unexpected character")),
        }
    }

    fn letter(&self, l: Letter, at: usize) -> Result<FreePoly> {
        if l.adjoint() && self.opts.mode == Mode::Symmetric {
            return Err(Error::Parse {
                offset: at,
                message: "transpose letter in symmetric mode".into(),
            });
        }
        FreePoly::monomial(
            WORK_G,
            self.opts.mode,
            Word::from_letters([l]),
            Scalar::one(),
        )
    }
}

fn as_constant(p: &FreePoly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.degree() == 0 {
        return Some(p.coeff(&Word::empty()));
    }
    None
}

/// Canonical text: higher degrees first, words ascending within a degree.
pub fn format_poly(p: &FreePoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Word, &Scalar)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
    let mut out = String::new();
    for (k, (w, c)) in terms.into_iter().enumerate() {
        let (neg, mag) = split_sign(c);
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let word = w.to_string();
        if w.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&word);
        } else {
            out.push_str(&mag.to_string());
            out.push(' ');
            out.push_str(&word);
        }
    }
    out
}

/// Sign pulled out of real or purely imaginary scalars.
fn split_sign(c: &Scalar) -> (bool, Scalar) {
    let neg = if c.is_real() {
        c.re().is_negative()
    } else if c.re().is_zero() {
        c.im().is_negative()
    } else {
        false
    };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}
