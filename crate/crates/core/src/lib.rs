//! Geometric tensor machinery for parameterized unitary families.
//!
//! A family `p -> U(p)` together with a reference density state `rho`
//! defines the Hermitian tensor
//!
//! `Q_uv = <A_u A_v>_rho - <A_u>_rho <A_v>_rho`,  `A_u = i U^dag dU/dp_u`,
//!
//! whose real part is a Riemannian metric on the parameter manifold and
//! whose imaginary part gives the curvature 2-form. This crate provides
//! the generic dense-matrix path: generators by finite differences or
//! exact derivatives, tensor assembly, metric/curvature/connection
//! extraction, geometric phases by line and surface quadrature, Loschmidt
//! echoes, additive composition over tensor-product factors, and the
//! secular/oscillatory split available for stationary reference states.
//!
//! Everything is a pure function of value inputs; all types are `Send` and
//! `Sync`, and callers may evaluate families from parallel workers freely.

pub mod echo;
pub mod eigh;
pub mod error;
pub mod family;
pub mod matrix;
pub mod phase;
pub mod split;
pub mod state_qgt;
pub mod tensor;
pub mod tol;

pub use echo::{loschmidt_echo_exact, loschmidt_echo_first_order, FirstOrderEcho};
pub use eigh::{eigh, HermitianEigen};
pub use error::CoreError;
pub use family::{
    expm_hermitian, time_evolution_family, time_evolution_family_fd, HamiltonianFamily,
    ParameterPoint, ReferenceState, UnitaryFamily,
};
pub use matrix::{
    hermiticity_defect, hermitize, is_density, is_hermitian, is_unitary, kron, max_abs,
    unitarity_defect, CMat, CVec, RMat,
};
pub use phase::{
    geometric_phase_line, geometric_phase_surface, rectangle_loop, LoopPath, PhaseResult,
    SurfaceRect,
};
pub use split::{spectral_split, BetaTerm, SpectralSplit};
pub use state_qgt::state_qgt_check;
pub use tensor::{
    berry_connection, curvature, generators, generators_for_axes, metric, oqgt,
    oqgt_compose_additive, oqgt_entry, GeometricTensor, Generators,
};
