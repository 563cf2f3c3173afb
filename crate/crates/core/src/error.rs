use thiserror::Error;

/// Everything that can go wrong while building states or evaluating measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("entries contain NaN or infinite values")]
    NonFinite,

    #[error("not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("not positive semi-definite (min eigenvalue {0:e})")]
    NotPSD(f64),

    #[error("eigensolver did not converge")]
    ConvergenceFailure,

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid Kraus channel: {0}")]
    InvalidChannel(String),

    #[error("decomposition does not reconstruct the target density (max deviation {0:e})")]
    InconsistentDecomposition(f64),

    #[error("decomposition length {length} is smaller than the rank {rank}")]
    LengthTooSmall { length: usize, rank: usize },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    /// A quantity that is non-negative analytically came out clearly negative.
    #[error("internal consistency failure: {what} = {value:e}")]
    Consistency { what: &'static str, value: f64 },

    #[error("invalid state file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
