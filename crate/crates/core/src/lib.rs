//! Exact differential calculus for free noncommutative polynomials.
//!
//! Polynomials live in `FreePoly`, keyed by words over `x1, …, xg`, their
//! adjoints in nonsymmetric mode, and a direction letter `h`. On top of the
//! arithmetic sit directional derivatives and ℓ-Laplacians ([`calculus`]),
//! symmetric-group actions ([`symmetry`]), harmonic bases and the recursive
//! harmonic decomposition ([`harmonic`]), Gram-matrix subharmonicity
//! certificates ([`subharmonic`]) and the transpose-pattern machinery for
//! nonsymmetric variables ([`nonsym`]).

pub mod calculus;
pub mod cert;
pub mod cli;
pub mod comm;
pub mod error;
pub mod eval;
pub mod harmonic;
pub mod linalg;
pub mod nonsym;
pub mod perm;
pub mod poly;
pub mod scalar;
pub mod subharmonic;
pub mod symmetry;
pub mod text;
pub mod word;

pub use comm::CommPoly;
pub use error::{Error, Result};
pub use eval::{evaluate, MatrixTuple};
pub use linalg::Matrix;
pub use perm::Permutation;
pub use poly::FreePoly;
pub use scalar::Scalar;
pub use text::{format_poly, parse_poly};
pub use word::{Letter, Mode, Word};
