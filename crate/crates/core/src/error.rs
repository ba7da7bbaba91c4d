use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("group order d must be positive")]
    ZeroDegree,

    #[error("a monodromy datum needs at least 3 points, got {n}")]
    TooFewPoints { n: usize },

    #[error("monodromies sum to {residue} mod {d}, expected 0")]
    SumNotZero { d: u64, residue: u64 },

    #[error("datum is disconnected: gcd(m_1, ..., m_n, d) = {gcd}")]
    Disconnected { gcd: u64 },

    #[error("character e = {e} out of range 0..{d}")]
    CharacterOutOfRange { e: u64, d: u64 },

    #[error("point index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed boundary curve: {0}")]
    MalformedCurve(String),

    #[error("mismatched spaces: {0}")]
    Mismatch(String),

    #[error("degenerate localization relation (alpha = 0); contributions: {breakdown}")]
    Degenerate { breakdown: String },

    #[error("integrality violated: {0}")]
    Integrality(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
