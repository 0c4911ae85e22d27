use thiserror::Error;

/// Crate-wide error type.
///
/// Every fallible operation reports through this enum; none of the public
/// entry points panic on malformed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid rational literal `{0}`")]
    Rational(String),

    #[error("coordinate {0} lies outside [0,1]")]
    OutsideUnitInterval(String),

    #[error("point has dimension {got}, but dimension {need} is required")]
    Dimension { need: usize, got: usize },

    #[error("dimension {got} exceeds the configured cap {cap}")]
    DimensionCap { got: usize, cap: usize },

    #[error("{got} formulas exceed the configured cap {cap}")]
    FormulaCap { got: usize, cap: usize },

    #[error("vertex set is affinely dependent")]
    DegenerateSimplex,

    #[error("empty point set has no hull")]
    EmptyHull,

    #[error("subdivision cap {0} exceeded while repairing regularity")]
    SubdivisionCap(usize),

    #[error("linearization violation: {0}")]
    Linearization(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("book is empty")]
    EmptyBook,

    #[error("book odds {0} outside [0,1]")]
    OddsRange(String),

    #[error("invalid state weights: {0}")]
    InvalidState(String),

    #[error("base book is not strictly coherent: {0}")]
    NotStrictlyCoherent(String),

    #[error("session file malformed: {0}")]
    Session(String),

    #[error("synthesis verification failed: {0}")]
    SynthesisVerification(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
