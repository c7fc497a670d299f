use thiserror::Error;

/// Errors shared across the whole crate.
///
/// Verdicts (fat / not fat / certification failed) are not errors; they are
/// ordinary return values. An `Error` means the question itself was
/// malformed or the requested computation is undefined.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid root subsystem: {0}")]
    InvalidSubsystem(String),

    #[error("degenerate base: the horizontal complement m is zero-dimensional")]
    DegenerateBase,

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("no escape direction: wall {0} contains the translation direction and meets the hull")]
    NoEscapeDirection(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
