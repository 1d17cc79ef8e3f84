use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree bound mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree bound must be at least 1")]
    InvalidDegreeBound,

    #[error("{0} requires exact rational scalars")]
    NotExact(&'static str),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {kind} '{name}'")]
    UnknownStrategy { kind: &'static str, name: String },

    #[error("imaginary residue {residue:e} exceeds bound {bound:e}")]
    Residue { residue: f64, bound: f64 },

    #[error("certification failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
