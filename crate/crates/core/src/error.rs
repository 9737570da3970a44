use thiserror::Error;

pub type Result<T, E = QError> = std::result::Result<T, E>;

/// Errors raised by the series engine, the constant-term machinery and the
/// identity catalog.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: i64, right: i64 },
    #[error("series is not invertible (needs a nonzero constant term and no negative powers)")]
    NotInvertible,
    #[error("infinite product does not converge q-adically: {0}")]
    DivergentProduct(String),
    #[error("sum does not terminate below the truncation order: {0}")]
    DivergentSum(String),
    #[error("cannot certify truncation, term degrees are not eventually increasing: {0}")]
    Monotonicity(String),
    #[error("singular term: {0}")]
    SingularTerm(String),
    #[error("z-window underspecified: {0}")]
    WindowUnderspecified(String),
    #[error("z-coefficient at z^{z_exp} has negative q-degree {q_exp}")]
    NegativeDegree { z_exp: i64, q_exp: i64 },
    #[error("cannot raise truncation order from {have} to {want}")]
    InsufficientOrder { have: i64, want: i64 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown theorem {0} (expected 1..=5)")]
    UnknownTheorem(u32),
    #[error("{0}")]
    Parse(#[from] crate::qdsl::ParseError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
