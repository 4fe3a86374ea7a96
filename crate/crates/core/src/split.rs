//! Stationary-state split of the evolution-family tensor into a secular
//! `t^2` part and a bounded oscillatory part.
//!
//! For `U(p) = exp(-i t H(p))` with a reference state diagonal in the
//! eigenbasis of `H(p)`, the tensor separates into
//!
//! `Q1_uv = alpha_uv t^2` with
//! `alpha_uv = sum_i rho_i dE_i/du dE_i/dv - (sum_i rho_i dE_i/du)(sum_j rho_j dE_j/dv)`
//!
//! and
//!
//! `Q2_uv = sum_{i != j} beta^{ij}_uv (1 - cos[(E_i - E_j) t])` with
//! `beta^{ij}_uv = 2 rho_i [a_u]_ij [a_v]_ji`,
//!
//! where `a_u` is the eigenbasis connection obtained by differencing the
//! gauge-fixed eigenvector frame. Both `alpha` and the `beta` coefficients
//! are time-independent; `Q1` is real and grows as `t^2` while `Q2` stays
//! bounded.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigh::{eigh, HermitianEigen};
use crate::error::CoreError;
use crate::family::{HamiltonianFamily, ParameterPoint, ReferenceState};
use crate::matrix::{hermitize, CMat, RMat};
use crate::tol;

/// One oscillatory coefficient: the `d x d` matrix
/// `[beta^{ij}]_uv = 2 rho_i [a_u]_ij [a_v]_ji` for an eigenvalue pair.
#[derive(Debug, Clone)]
pub struct BetaTerm {
    pub i: usize,
    pub j: usize,
    pub value: CMat,
}

/// Result of [`spectral_split`].
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    /// Secular part `alpha t^2`; real within [`tol::SPLIT_REALNESS_TOL`].
    pub q1: CMat,
    /// Oscillatory part.
    pub q2: CMat,
    /// Time-independent secular coefficient.
    pub alpha: RMat,
    /// Time-independent oscillatory coefficients, one per ordered pair.
    pub beta_terms: Vec<BetaTerm>,
    /// Eigenvalues of `H(p)`, ascending.
    pub eigenvalues: Vec<f64>,
}

impl SpectralSplit {
    /// `Q1 + Q2`, for comparison against the directly assembled tensor.
    pub fn total(&self) -> CMat {
        &self.q1 + &self.q2
    }
}

/// Align a stencil eigendecomposition to the center one: match column
/// phases by the diagonal of the overlap matrix. Errors when an overlap
/// magnitude drops low enough to indicate an eigenvalue crossing inside
/// the stencil.
fn align_to_center(
    center: &HermitianEigen,
    mut side: HermitianEigen,
    axis: usize,
) -> Result<HermitianEigen, CoreError> {
    let overlap = center.vectors.adjoint() * &side.vectors;
    let n = center.values.len();
    for j in 0..n {
        let o = overlap[(j, j)];
        let mag = o.norm();
        if mag * mag <= tol::STENCIL_OVERLAP_MIN {
            return Err(CoreError::StencilCrossing {
                axis,
                column: j,
                overlap: mag,
            });
        }
        let phase = o.conj() / mag;
        for i in 0..n {
            side.vectors[(i, j)] *= phase;
        }
    }
    Ok(side)
}

/// Split the tensor of `exp(-i t H(p))` at `p` into secular and
/// oscillatory parts. Requires `[rho, H(p)] = 0` (a stationary reference)
/// and a nondegenerate spectrum at `p`.
pub fn spectral_split(
    h_family: &HamiltonianFamily,
    rho: &ReferenceState,
    p: &ParameterPoint,
    t: f64,
) -> Result<SpectralSplit, CoreError> {
    let h = h_family.eval(p)?;
    let defect = rho.stationarity_defect(&h);
    if defect > tol::STATIONARITY_TOL {
        return Err(CoreError::NotStationary {
            defect,
            tol: tol::STATIONARITY_TOL,
        });
    }
    let center = eigh(&h)?;
    center.require_nondegenerate(tol::DEGENERACY_GAP_TOL)?;

    let n = center.values.len();
    let d = h_family.param_dim();
    let h_step = tol::SPLIT_FD_STEP;

    // populations in the eigenbasis (off-diagonals vanish by stationarity)
    let rho_eig = center.vectors.adjoint() * rho.rho() * &center.vectors;
    let populations: Vec<f64> = (0..n).map(|i| rho_eig[(i, i)].re).collect();

    // Per-axis eigenvalue derivatives and eigenbasis connections, by a
    // five-point fourth-order stencil: its h^4 truncation is negligible at
    // this step, leaving only differencing rounding, so the split stays
    // inside its consistency gate even when the tensor itself is large.
    let mut de = vec![vec![0.0f64; n]; d];
    let mut connections: Vec<CMat> = Vec::with_capacity(d);
    for axis in 0..d {
        let side = |delta: f64| -> Result<HermitianEigen, CoreError> {
            align_to_center(&center, eigh(&h_family.eval(&p.offset(axis, delta)?)?)?, axis)
        };
        let p1 = side(h_step)?;
        let m1 = side(-h_step)?;
        let p2 = side(2.0 * h_step)?;
        let m2 = side(-2.0 * h_step)?;
        for i in 0..n {
            de[axis][i] = (8.0 * (p1.values[i] - m1.values[i]) - (p2.values[i] - m2.values[i]))
                / (12.0 * h_step);
        }
        let dv = ((&p1.vectors - &m1.vectors) * Complex64::new(8.0, 0.0)
            - (&p2.vectors - &m2.vectors))
            / Complex64::new(12.0 * h_step, 0.0);
        let raw = center.vectors.adjoint() * dv * Complex64::new(0.0, -1.0);
        connections.push(hermitize(&raw));
    }

    // secular coefficient: covariance of the eigenvalue derivatives
    let mean: Vec<f64> = (0..d)
        .map(|u| (0..n).map(|i| populations[i] * de[u][i]).sum())
        .collect();
    let alpha = RMat::from_fn(d, d, |u, v| {
        let second: f64 = (0..n).map(|i| populations[i] * de[u][i] * de[v][i]).sum();
        second - mean[u] * mean[v]
    });
    let q1 = CMat::from_fn(d, d, |u, v| Complex64::new(alpha[(u, v)] * t * t, 0.0));

    // oscillatory part
    let mut beta_terms = Vec::with_capacity(n * (n - 1));
    let mut q2 = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let weight = Complex64::new(2.0 * populations[i], 0.0);
            let value = CMat::from_fn(d, d, |u, v| {
                weight * connections[u][(i, j)] * connections[v][(j, i)]
            });
            let osc = 1.0 - ((center.values[i] - center.values[j]) * t).cos();
            q2 += &value * Complex64::new(osc, 0.0);
            beta_terms.push(BetaTerm { i, j, value });
        }
    }

    Ok(SpectralSplit {
        q1,
        q2,
        alpha,
        beta_terms,
        eigenvalues: center.values,
    })
}
