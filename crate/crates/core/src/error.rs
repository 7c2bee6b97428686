use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed half-degree parameters: m={left} and m={right}")]
    MixedParameter { left: u32, right: u32 },

    #[error("half-degree parameter m must be positive")]
    ZeroParameter,

    #[error("d={divisor} does not divide {dividend} (gamma index {index})")]
    Divisibility {
        index: usize,
        dividend: String,
        divisor: String,
    },

    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<i64>, reason: String },

    #[error("negative tau exponent {exponent} at stage {stage}")]
    NegativeTauExponent { stage: usize, exponent: i64 },

    #[error("negative exponent on non-Laurent variable {0}")]
    NegativeExponent(String),

    #[error("{what}: two computation paths disagree, residual {residual}")]
    PathDisagreement { what: String, residual: String },

    #[error("superscript {sup} out of range 0..={max}")]
    SuperscriptOutOfRange { sup: i64, max: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
