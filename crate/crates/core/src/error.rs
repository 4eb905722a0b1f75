use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("generator `{0}` must have degree at least 1")]
    ZeroDegreeGenerator(String),

    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("degree {degree} is out of range (maximum {max})")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("series has a nonzero constant term")]
    NotReduced,

    #[error("series is not strict: linear coefficient is not 1")]
    NonStrict,

    #[error("series is not an endomorphism of the additive law (first failure at degree {degree})")]
    NotAdditive { degree: u32 },

    #[error("truncation {got} is too small, need at least {needed}")]
    TruncationTooSmall { needed: u32, got: u32 },

    #[error("wrong number of assignments: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("series is not a strict isomorphism between the given laws (first failure at degree {degree})")]
    NotAnIsomorphism { degree: u32 },

    #[error("formal group law axiom `{axiom}` fails at degree {degree}: residual {residual}")]
    AxiomViolation {
        axiom: String,
        degree: u32,
        residual: String,
    },

    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
