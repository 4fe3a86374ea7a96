//! Closed-form operator geometric tensor of the rotated XY spin chain.
//!
//! The chain Hamiltonian factorizes over momentum pairs `(k, -k)` into
//! independent two-level modes. Each mode carries a dispersion `Lambda_k`,
//! a Bogoliubov angle `theta_k`, an explicit 2x2 time-evolution unitary,
//! and a stationary pure reference state, from which the 3x3 operator
//! geometric tensor over the axes `(lambda, gamma, phi)` follows in closed
//! form. [`chain_oqgt`] assembles the whole-chain tensor as a compensated
//! sum over modes; [`effective_field`] extracts the curvature components
//! that act on the anisotropy plane like a magnetic field.
//!
//! Everything here is a pure function of its inputs, safe to call from
//! concurrent scan workers.

mod chain;
mod error;
mod mode;
mod params;

pub use chain::{chain_oqgt, effective_field, EffectiveField};
pub use error::XYError;
pub use mode::{
    bogoliubov_angle, dispersion, mode_data, mode_ground_state, mode_oqgt, mode_unitary, ModeData,
    ModeTensor,
};
pub use params::XYParams;

/// Dispersion floor below which a mode counts as gapless.
///
/// The Bogoliubov angle is the argument of the complex number
/// `(lambda - cos x) + i gamma sin x`; at a gap closing that number is
/// zero and the angle has no value. The floor sits a couple of decades
/// above the rounding scale of the subtraction `lambda - cos x` for
/// order-one inputs, so only genuine closures trip it.
pub const GAP_CLOSING_TOL: f64 = 1e-14;
