use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("scalars from different number fields were combined")]
    FieldMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("curve degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("incompatible degrees: {0}")]
    IncompatibleDegrees(String),
    #[error("the two points coincide projectively")]
    DegenerateLine,
    #[error("vector is not in the span of the basis")]
    NotInSpan,
    #[error("first subspace is not contained in the second")]
    NotSubspace,
    #[error("curve looks non-reduced: {0}")]
    NonReducedSuspected(String),
    #[error("mdr(f) = 0; curves with a degree-zero Jacobian syzygy are not supported")]
    MdrZero,
    #[error("minimal generators could not be certified up to degree {0}")]
    GeneratorBoundExceeded(u32),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("symbolic determinant disagrees with a direct evaluation at {0}")]
    VerificationMismatch(String),
    #[error("no stable Hilbert function window below degree {0}")]
    BoundTooSmall(u32),
    #[error("resultant elimination degenerate after {0} attempts")]
    ResultantDegenerate(u32),
    #[error("second-kind determinant vanishes identically")]
    UnexpectedZeroDeterminant,
    #[error("det(x,y,z; rho1; rho_{0}) is not divisible by f")]
    DivisibilityFailure(usize),
    #[error("Bourbaki ideal has degree {computed}, expected {expected}")]
    DegreeFormulaMismatch { computed: i64, expected: i64 },
    #[error("every generator restricts to zero on the line")]
    AllRestrictionsZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
