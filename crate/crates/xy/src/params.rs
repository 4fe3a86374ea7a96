use crate::error::XYError;

/// Point in the rotated XY chain's parameter space.
///
/// `lambda` is the transverse field, `gamma` the anisotropy, `phi` the
/// z-rotation angle in radians, `t` the evolution time (hbar = 1), and
/// `n_spins` the chain length `N = 2M + 1`, which must be odd so the
/// momentum grid pairs up cleanly around `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XYParams {
    pub lambda: f64,
    pub gamma: f64,
    pub phi: f64,
    pub t: f64,
    pub n_spins: usize,
}

impl XYParams {
    pub fn new(
        lambda: f64,
        gamma: f64,
        phi: f64,
        t: f64,
        n_spins: usize,
    ) -> Result<Self, XYError> {
        let p = XYParams {
            lambda,
            gamma,
            phi,
            t,
            n_spins,
        };
        p.validate()?;
        Ok(p)
    }

    /// Re-check the spin-count invariant (fields are public).
    pub fn validate(&self) -> Result<(), XYError> {
        if self.n_spins < 3 || self.n_spins % 2 == 0 {
            return Err(XYError::InvalidSpinCount { n: self.n_spins });
        }
        Ok(())
    }

    /// Number of paired modes `M` in `N = 2M + 1`.
    pub fn mode_count(&self) -> usize {
        (self.n_spins - 1) / 2
    }

    /// Momentum coordinate `x_k = 2 pi k / N` of mode `k`.
    pub(crate) fn momentum(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / self.n_spins as f64
    }

    pub(crate) fn check_mode_index(&self, k: usize) -> Result<(), XYError> {
        let max = self.mode_count();
        if k > max {
            return Err(XYError::ModeIndexOutOfRange { k, max });
        }
        Ok(())
    }
}
