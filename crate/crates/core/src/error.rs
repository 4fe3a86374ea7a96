use thiserror::Error;

/// Errors from tensor assembly, spectral operations, and phase integration.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds {tol:.1e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("matrix is not unitary: defect {defect:.3e} exceeds {tol:.1e}")]
    NotUnitary { defect: f64, tol: f64 },

    #[error("matrix is not a density operator: {reason}")]
    NotDensity { reason: String },

    #[error("state vector is not normalized: |norm - 1| = {defect:.3e}")]
    NotNormalized { defect: f64 },

    #[error(
        "reference state is not stationary: commutator norm {defect:.3e} exceeds {tol:.1e}"
    )]
    NotStationary { defect: f64, tol: f64 },

    #[error(
        "degenerate eigenvalue pair ({lower}, {upper}): gap {gap:.3e} is below {tol:.1e}; \
         the eigenbasis connection is undefined inside a degenerate block"
    )]
    DegenerateEigenvalues {
        lower: usize,
        upper: usize,
        gap: f64,
        tol: f64,
    },

    #[error(
        "eigenvalue crossing inside the finite-difference stencil on axis {axis}: \
         column {column} overlap dropped to {overlap:.3}"
    )]
    StencilCrossing {
        axis: usize,
        column: usize,
        overlap: f64,
    },

    #[error("family evaluation failed on axis {axis} at offset point {coords:?}: {source}")]
    EvaluationFailed {
        axis: usize,
        coords: Vec<f64>,
        #[source]
        source: Box<CoreError>,
    },

    #[error("parameter axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("loop path is not closed: first and last points differ")]
    OpenLoop,

    #[error("loop path needs at least two points, got {got}")]
    LoopTooShort { got: usize },

    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

impl CoreError {
    /// Shorthand for [`CoreError::Invalid`], for wrapping foreign failures
    /// inside family evaluation closures.
    pub fn invalid(context: &str, message: impl Into<String>) -> Self {
        CoreError::Invalid {
            context: context.to_string(),
            message: message.into(),
        }
    }
}
