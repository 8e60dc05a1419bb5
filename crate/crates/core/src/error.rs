use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a pole at {root}")]
    Pole { root: String },

    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("inadmissible h-vector {0:?}")]
    InadmissibleHVector(Vec<u64>),

    #[error("monomial ideal is not strongly stable: {0}")]
    NotStronglyStable(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("zero matrix has no normal form")]
    ZeroMatrix,

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("modulus {0} is not a prime greater than 3")]
    BadModulus(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
