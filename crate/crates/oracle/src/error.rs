use oqgt_core::CoreError;
use thiserror::Error;

/// Errors raised by the dense oracle constructions.
#[derive(Debug, Error)]
pub enum OracleError {
    /// The dense builders keep chains small enough to diagonalize exactly.
    #[error("spin count {n} unsupported here: need an odd count in {min}..={max}")]
    SpinCountOutOfRange { n: usize, min: usize, max: usize },

    /// A matrix handed to an oracle was not square.
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Failure propagated from the core numerics (non-Hermitian input,
    /// dimension mismatch, and so on).
    #[error(transparent)]
    Core(#[from] CoreError),
}
