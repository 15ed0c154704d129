use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid base field: {0}")]
    InvalidField(String),

    #[error("zero divisor: {0}")]
    ZeroDivisor(String),

    #[error("divisor is not monic")]
    NonMonic,

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("stability bound violated: n = {n} but N_P = {bound}")]
    Stability { n: i64, bound: i64 },

    #[error("padding error: {0}")]
    Padding(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),

    #[error("calibration failure: {0}")]
    Calibration(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
