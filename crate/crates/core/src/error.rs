use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("structure constants invalid: {0}")]
    InvalidStructureConstants(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("sign undefined for non-real scalar {0}")]
    NotReal(String),

    #[error("no square root in the supported extension: {0}")]
    NotInExtension(String),

    #[error("mode {mode} is not available on this module")]
    UnsupportedMode { mode: String },

    #[error("field uses generator {0} which this module does not carry")]
    UnsupportedField(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state is not in the span of generated states up to grade {0}")]
    NotGenerated(String),

    #[error("work up to grade {grade} exceeds the budget of {budget}")]
    Budget { grade: String, budget: usize },

    #[error("locality not reached: {0}")]
    NotLocal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
