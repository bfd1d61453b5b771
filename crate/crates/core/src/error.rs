use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} exceeds the supported maximum of 32")]
    FieldTooLarge(u32),
    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("vector length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("field element index {idx} out of range for GF({q})")]
    ElementOutOfRange { idx: u32, q: u32 },
    #[error("two distinct points are required")]
    CoincidentPoints,
    #[error("rows are linearly dependent: expected rank {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },
    #[error("not a simplex point")]
    NotSimplexPoint,
    #[error("not a simplex line")]
    NotSimplexLine,
    #[error("points are not collinear in the simplex geometry")]
    NotCollinear,
    #[error("point does not lie on the line")]
    PointNotOnLine,
    #[error("lines are not pairwise adjacent")]
    NotAClique,
    #[error("I-images span a subspace of projective dimension {0}, not a plane")]
    DegenerateSpan(usize),
    #[error("{what} is infeasible for q = {q}")]
    Infeasible { what: &'static str, q: u32 },
    #[error("operation requires q = {expected}, got q = {actual}")]
    WrongOrder { expected: u32, actual: u32 },
    #[error("unknown line id {0}")]
    UnknownLine(u32),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Errors caused by the request itself rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Usage(_)
                | Error::Infeasible { .. }
                | Error::WrongOrder { .. }
                | Error::NotPrimePower(_)
                | Error::FieldTooLarge(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
