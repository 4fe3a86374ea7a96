use thiserror::Error;

/// Failures specific to the XY-chain closed forms.
#[derive(Debug, Error)]
pub enum XYError {
    #[error("spin count must be an odd integer >= 3, got {n}")]
    InvalidSpinCount { n: usize },

    #[error("mode index {k} outside 0..={max}")]
    ModeIndexOutOfRange { k: usize, max: usize },

    #[error(
        "mode k = {k} is gapless (dispersion {lambda_k:.3e} <= {tol:.1e}); \
         the Bogoliubov angle has no value at a gap closing"
    )]
    CriticalMode { k: usize, lambda_k: f64, tol: f64 },

    #[error("chain has gapless modes at k = {ks:?}; no tensor value at a gap closing")]
    GaplessChain { ks: Vec<usize> },

    #[error("tensor has {dim} axes, expected the 3 chain axes (lambda, gamma, phi)")]
    WrongAxisCount { dim: usize },
}
