use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    InvalidModulus(u32),
    #[error("elements from different fields (F_{0} and F_{1})")]
    FieldMismatch(u32, u32),
    #[error("division by zero in F_p")]
    DivisionByZero,
    #[error("polynomial division by the zero polynomial")]
    ZeroDivisor,
    #[error("non-exact division")]
    NonExactDivision,
    #[error("duplicate points: {0}")]
    DuplicatePoints(String),
    #[error("zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero determinant")]
    Singular,
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("invalid row reduction: {0}")]
    InvalidReduction(String),
    #[error("matrix is not in weak Popov form")]
    NotWeakPopov,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("radius exceeds Johnson bound")]
    ExceedsJohnsonBound,
    #[error("zero interpolation polynomial")]
    ZeroInterpolationPolynomial,
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
