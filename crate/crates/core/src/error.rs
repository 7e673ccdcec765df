use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("exponent {exponent} not allowed for variable `{var}`")]
    BadExponent { var: String, exponent: i64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("series not a unit for logarithm")]
    NotUnitSeries,

    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("not Weyl-invariant: coefficient mismatch at {witness}")]
    NotWeylInvariant { witness: String },

    #[error("character has non-integral multiplicity at {0}")]
    NonIntegralCharacter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inconsistent beta weight at entry ({row}, {col})")]
    InconsistentWeight { row: usize, col: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
