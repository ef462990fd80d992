use thiserror::Error;

/// Errors raised by the symbolic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined degree: zero polynomial")]
    UndefinedDegree,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,

    #[error("non-unit leading term")]
    NonUnitLeadingTerm,
    #[error("nonzero residue obstructs integration")]
    NonzeroResidue,
    #[error("insufficient precision")]
    InsufficientPrecision,

    #[error("empty variety: unit ideal")]
    EmptyVariety,
    #[error("resolution requires graded input")]
    NotGraded,
    #[error("budget exceeded")]
    BudgetExceeded,

    #[error("non-isolated singularity")]
    NonIsolated,
    #[error("irreducibility required: {0}")]
    IrreducibilityRequired(String),
    #[error("unsupported singularity: {0}")]
    Unsupported(String),

    #[error("basis mismatch: normal form leaves the Milnor staircase")]
    BasisMismatch,
    #[error("dual basis decomposition failed: {0}")]
    DualBasis(String),
    #[error("Saito matrix is not symmetric")]
    Asymmetric,
    #[error("Saito determinant mismatch")]
    SaitoDeterminantMismatch,

    #[error("parametrization failed: {0}")]
    ParametrizationFailed(String),
    #[error("truncation insufficient or non-irreducible input")]
    NonzeroFormResidue,
    #[error("normalization failure: {0}")]
    NormalizationFailure(String),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("matrix error: {0}")]
    Matrix(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate choice: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
