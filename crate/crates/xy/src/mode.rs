//! Per-mode quantities: dispersion, Bogoliubov angle, explicit 2x2
//! evolution, stationary reference state, and the closed-form tensor.

use num_complex::Complex64;

use oqgt_core::{CMat, CVec};

use crate::error::XYError;
use crate::params::XYParams;
use crate::GAP_CLOSING_TOL;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Spectral data of one momentum pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    pub k: usize,
    /// Mode energy `Lambda_k >= 0`.
    pub lambda_k: f64,
    /// Bogoliubov angle in `(-pi, pi]`.
    pub theta_k: f64,
}

/// Closed-form 3x3 tensor contribution of one mode, over the ordered
/// axes `(lambda, gamma, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTensor {
    pub k: usize,
    pub q: CMat,
}

/// In-plane components of the mode's effective field direction:
/// `(lambda - cos x, gamma sin x)` with `x = 2 pi k / N`.
fn field_components(k: usize, p: &XYParams) -> (f64, f64) {
    let x = p.momentum(k);
    (p.lambda - x.cos(), p.gamma * x.sin())
}

/// Mode energy `Lambda_k = 2 hypot(lambda - cos x, gamma sin x)`.
///
/// `hypot` keeps the value accurate when one component dwarfs the other,
/// which happens near the critical line where `lambda - cos x` crosses
/// zero.
pub fn dispersion(k: usize, p: &XYParams) -> Result<f64, XYError> {
    p.validate()?;
    p.check_mode_index(k)?;
    let (u, v) = field_components(k, p);
    Ok(2.0 * u.hypot(v))
}

/// Bogoliubov angle `theta_k = atan2(gamma sin x, lambda - cos x)`,
/// principal value in `(-pi, pi]`.
///
/// A signed zero in the second component would send `atan2` to `-pi` on
/// the `lambda < cos x` side; normalizing it to `+0.0` keeps the branch
/// at `+pi`.
pub fn bogoliubov_angle(k: usize, p: &XYParams) -> Result<f64, XYError> {
    p.validate()?;
    p.check_mode_index(k)?;
    let (u, mut v) = field_components(k, p);
    let lambda_k = 2.0 * u.hypot(v);
    if lambda_k <= GAP_CLOSING_TOL {
        return Err(XYError::CriticalMode {
            k,
            lambda_k,
            tol: GAP_CLOSING_TOL,
        });
    }
    if v == 0.0 {
        v = 0.0;
    }
    Ok(v.atan2(u))
}

/// Dispersion and angle of mode `k` in one call.
pub fn mode_data(k: usize, p: &XYParams) -> Result<ModeData, XYError> {
    Ok(ModeData {
        k,
        lambda_k: dispersion(k, p)?,
        theta_k: bogoliubov_angle(k, p)?,
    })
}

/// Closed-form tensor contribution of mode `k`.
///
/// With `s = sin(Lambda t)`, `sx = sin(2 pi k / N)` and the angle ratios
/// `sin theta = 2 gamma sx / Lambda`, `cos theta = 2 (lambda - cos x) / Lambda`:
///
/// ```text
/// Q_ll = (4/L^2) s^2 sin^2(th)          Q_lg = -(4/L^2) s^2 sin(th) cos(th) sx
/// Q_gg = (4/L^2) s^2 cos^2(th) sx^2     Q_lp = -i (2/L) s^2 sin^2(th)
/// Q_pp = s^2 sin^2(th)                  Q_gp = +i (2/L) s^2 sin(th) cos(th) sx
/// ```
///
/// The lower triangle is filled by conjugation. Every entry carries the
/// `sin^2(Lambda t)` envelope, so the tensor vanishes identically at
/// `t = 0`, and none of the entries depends on `phi`: the reference
/// state co-rotates with the z-rotation.
///
/// The angle ratios are taken directly from the field components rather
/// than through `sin(atan2(..))`, which keeps the `gamma -> -gamma`
/// antisymmetry exact in floating point.
pub fn mode_oqgt(k: usize, p: &XYParams) -> Result<ModeTensor, XYError> {
    p.validate()?;
    p.check_mode_index(k)?;
    let (u, v) = field_components(k, p);
    let lambda_k = 2.0 * u.hypot(v);
    if lambda_k <= GAP_CLOSING_TOL {
        return Err(XYError::CriticalMode {
            k,
            lambda_k,
            tol: GAP_CLOSING_TOL,
        });
    }
    let sth = 2.0 * v / lambda_k;
    let cth = 2.0 * u / lambda_k;
    let sx = p.momentum(k).sin();
    let s2 = {
        let s = (lambda_k * p.t).sin();
        s * s
    };
    let inv = 2.0 / lambda_k;

    let q_ll = inv * inv * s2 * sth * sth;
    let q_gg = inv * inv * s2 * cth * cth * sx * sx;
    let q_pp = s2 * sth * sth;
    let q_lg = -inv * inv * s2 * sth * cth * sx;
    let q_lp = inv * s2 * sth * sth; // imaginary magnitude, sign below
    let q_gp = inv * s2 * sth * cth * sx;

    let mut q = CMat::zeros(3, 3);
    q[(0, 0)] = c(q_ll, 0.0);
    q[(1, 1)] = c(q_gg, 0.0);
    q[(2, 2)] = c(q_pp, 0.0);
    q[(0, 1)] = c(q_lg, 0.0);
    q[(1, 0)] = c(q_lg, 0.0);
    q[(0, 2)] = c(0.0, -q_lp);
    q[(2, 0)] = c(0.0, q_lp);
    q[(1, 2)] = c(0.0, q_gp);
    q[(2, 1)] = c(0.0, -q_gp);
    Ok(ModeTensor { k, q })
}

/// `R_x(alpha) = exp(-i alpha sigma_x / 2)`.
fn rx(alpha: f64) -> CMat {
    let (co, si) = ((alpha / 2.0).cos(), (alpha / 2.0).sin());
    CMat::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, -si), c(0.0, -si), c(co, 0.0)])
}

/// `R_z(alpha) = exp(-i alpha sigma_z / 2)`.
fn rz(alpha: f64) -> CMat {
    let (co, si) = ((alpha / 2.0).cos(), (alpha / 2.0).sin());
    CMat::from_row_slice(
        2,
        2,
        &[c(co, -si), c(0.0, 0.0), c(0.0, 0.0), c(co, si)],
    )
}

/// Mode rotation `S_k = R_x(theta_k) R_z(phi)`.
fn mode_rotation(k: usize, p: &XYParams) -> Result<CMat, XYError> {
    Ok(rx(bogoliubov_angle(k, p)?) * rz(p.phi))
}

/// Explicit 2x2 evolution of mode `k` on the even-parity pair subspace:
/// `U_k = S_k^dag diag(e^{-i Lambda t}, e^{+i Lambda t}) S_k`.
pub fn mode_unitary(k: usize, p: &XYParams) -> Result<CMat, XYError> {
    let lambda_k = dispersion(k, p)?;
    let s = mode_rotation(k, p)?;
    let phase = lambda_k * p.t;
    let d = CMat::from_row_slice(
        2,
        2,
        &[
            c(phase.cos(), -phase.sin()),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(phase.cos(), phase.sin()),
        ],
    );
    Ok(s.adjoint() * d * s)
}

/// Stationary reference state of mode `k`: the `-Lambda_k` eigenvector
/// `S_k^dag |down>` of the rotated mode Hamiltonian, with its overall
/// phase fixed so the largest-magnitude entry is real positive.
pub fn mode_ground_state(k: usize, p: &XYParams) -> Result<CVec, XYError> {
    let s = mode_rotation(k, p)?;
    let down = CVec::from_column_slice(&[c(0.0, 0.0), c(1.0, 0.0)]);
    let mut g = s.adjoint() * down;
    let lead = if g[0].norm() > g[1].norm() { 0 } else { 1 };
    let phase = g[lead] / g[lead].norm();
    g *= phase.conj();
    Ok(g)
}
