//! Brute-force cross-checks for the operator-geometry stack.
//!
//! Everything in this crate is deliberately slow and dumb: dense Pauli-string
//! assembly, full diagonalization, Taylor-series matrix exponentials, and
//! seeded randomized sweeps. None of it shares code with the closed-form
//! momentum-space crate, so an agreement between the two is evidence rather
//! than tautology.
//!
//! The randomized entry points (`additivity_oracle`, `splitting_oracle`,
//! `matexp_oracle`) each return an [`OracleReport`] whose `max_abs_error` is
//! bit-reproducible from the seed.

mod additivity;
mod error;
mod hamiltonian;
mod matexp;
mod pauli;
mod report;
mod sampling;
mod splitting;

pub use additivity::additivity_oracle;
pub use error::OracleError;
pub use hamiltonian::{
    build_xy_hamiltonian, finite_difference_chain_family, ground_state, integer_mode_energy,
    ring_ground_energy, staggered_mode_energy, GroundState, DEGENERATE_GROUND_TOL,
    MAX_DENSE_SPINS, MAX_FAMILY_SPINS,
};
pub use matexp::{expm_scaling_squaring, matexp_oracle};
pub use pauli::{Pauli, PauliString};
pub use report::OracleReport;
pub use sampling::{
    random_density, random_hermitian, random_state, sample_anisotropy, sample_field,
    sample_phase_angle, sample_spin_count, sample_time,
};
pub use splitting::splitting_oracle;
