use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0} vs {1} variables")]
    AlphabetMismatch(usize, usize),
    #[error("mode mismatch: symmetric and nonsymmetric operands")]
    ModeMismatch,
    #[error("result would have more than {cap} words")]
    SizeCap { cap: usize },
    #[error("enumeration cap exceeded: {what}")]
    EnumerationCap { what: String },
    #[error("variable index {index} outside alphabet of size {g}")]
    IndexOutOfRange { index: usize, g: usize },
    #[error("transpose letters are not allowed in symmetric mode")]
    TransposeInSymmetricMode,
    #[error("direction letter h is not allowed here")]
    DirectionNotAllowed,
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("complex coefficient in a real-only context")]
    ComplexCoefficient,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("polynomial is not {ell}-harmonic")]
    NotHarmonic { ell: u32 },
    #[error("polynomial is not fully degree {ell}")]
    NotFullyDegree { ell: u32 },
    #[error("polynomial is not subharmonic")]
    NotSubharmonic,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no representation over the harmonic basis")]
    NoRepresentation,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid document: {0}")]
    Document(String),
}
