use crate::Rational;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("word `{0}` is trivial: it needs at least two distinct letters")]
    TrivialWord(String),
    #[error("invalid symbol {0:?}: only uppercase ASCII letters are allowed")]
    InvalidSymbol(char),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("grid is not {period}-periodic along axis {axis}")]
    NotPeriodic { axis: usize, period: usize },
    #[error("index {index} out of range for {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid shape: {0}")]
    ShapeError(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("search budget of {budget} nodes exceeded (best lower bound so far: {best})")]
    BudgetExceeded { budget: u64, best: Rational },
    #[error("outside the domain: {0}")]
    DomainError(String),
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("certificate has empty support")]
    EmptySupport,
    #[error("gcd condition fails: gcd({n}, {modulus}) != 1")]
    GcdError { n: u64, modulus: String },
    #[error("letter {0:?} has no image under the letter map")]
    UnmappedLetter(char),
    #[error("word `{0}` has no parity classes")]
    MixedParity(String),
    #[error("no proper construction: {0}")]
    Degenerate(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::ParseError { line, message: message.into() }
    }

    /// Short name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TrivialWord(_) => "TrivialWord",
            Error::InvalidSymbol(_) => "InvalidSymbol",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotPeriodic { .. } => "NotPeriodic",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ShapeError(_) => "ShapeError",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::DomainError(_) => "DomainError",
            Error::CertificateInvalid(_) => "CertificateInvalid",
            Error::EmptySupport => "EmptySupport",
            Error::GcdError { .. } => "GcdError",
            Error::UnmappedLetter(_) => "UnmappedLetter",
            Error::MixedParity(_) => "MixedParity",
            Error::Degenerate(_) => "Degenerate",
            Error::ParseError { .. } => "ParseError",
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TrivialWord(_) => 2,
            Error::ParseError { .. } | Error::InvalidSymbol(_) => 3,
            Error::CertificateInvalid(_) | Error::EmptySupport => 4,
            Error::BudgetExceeded { .. } => 5,
            Error::DimensionMismatch { .. } => 6,
            Error::ShapeError(_) | Error::ShapeMismatch(_) => 7,
            Error::GcdError { .. } => 8,
            Error::MixedParity(_) => 9,
            Error::UnmappedLetter(_) => 10,
            Error::NotPeriodic { .. } | Error::IndexOutOfRange { .. } => 11,
            Error::DomainError(_) | Error::Degenerate(_) => 12,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
