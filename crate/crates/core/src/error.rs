use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular (rank {rank} < {size})")]
    SingularMatrix { rank: usize, size: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("invalid genus {genus}: {reason}")]
    InvalidGenus { genus: u32, reason: &'static str },

    #[error("mixed basis: {0}")]
    MixedBasis(String),

    #[error("unknown label `{label}` for {space} at genus {genus}")]
    UnknownLabel {
        label: String,
        space: &'static str,
        genus: u32,
    },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("g+1 = {0} is prime, no Brill-Noether divisor with rho = -1")]
    NotComposite(u32),

    #[error("divisor slope a/b0 = {slope} exceeds the bound {bound} at genus {genus}")]
    SlopeViolation {
        genus: u32,
        slope: String,
        bound: String,
    },

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("side mismatch: curve {curve} pairs with {expected} classes")]
    SideMismatch {
        curve: String,
        expected: &'static str,
    },

    #[error("unknown curve `{0}`")]
    UnknownCurve(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("cannot certify genus {genus}: {reason}")]
    Uncertified { genus: u32, reason: String },
}
