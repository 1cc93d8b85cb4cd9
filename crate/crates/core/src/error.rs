use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("selection map is not injective")]
    NonInjectiveSelection,

    #[error("frame does not span the ambient space (frame operator is singular)")]
    NonSpanning,

    #[error("operation requires a tight frame: {0}")]
    NotTight(String),

    #[error("operation requires a Parseval frame (bounds {lower}, {upper})")]
    NotParseval { lower: f64, upper: f64 },

    #[error("vector-valued DFT is not invertible: gcd(s({component}) = {value}, {modulus}) != 1")]
    NotInvertible {
        component: usize,
        value: usize,
        modulus: usize,
    },

    #[error("table is not a frame multiplication for the frame: {0}")]
    NoFrameMultiplication(String),

    #[error("Gramian is not a G-matrix for the given group")]
    NotGMatrix,

    #[error("exhaustive enumeration capped at n <= {cap}; supply candidate tables for n = {n}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("simultaneous diagonalization failed: {0}")]
    DiagonalizationFailure(String),

    #[error("position weight q must be real-valued")]
    ComplexWeight,

    #[error("matrix is not Hermitian within tolerance (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
