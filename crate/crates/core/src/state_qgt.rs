//! Bridge check: the operator tensor with a pure reference state equals
//! the state-space geometric tensor of the orbit `U(p)|psi0>`.

use crate::error::CoreError;
use crate::family::{ParameterPoint, ReferenceState, UnitaryFamily};
use crate::matrix::{max_abs, CMat, CVec};
use crate::tensor::oqgt;
use crate::tol;

/// Compute the state-space tensor of `|psi(p)> = U(p)|psi0>` by the
/// projector formula
///
/// `T_uv = <d_u psi| (1 - |psi><psi|) |d_v psi>`
///
/// and assert it reproduces the operator tensor with reference
/// `|psi0><psi0|` within [`tol::STATE_QGT_TOL`]. Returns the state-space
/// tensor.
pub fn state_qgt_check(
    family: &UnitaryFamily,
    psi0: &CVec,
    p: &ParameterPoint,
) -> Result<CMat, CoreError> {
    let defect = (psi0.norm() - 1.0).abs();
    if defect > tol::DENSITY_TOL {
        return Err(CoreError::NotNormalized { defect });
    }
    let d = family.param_dim();
    let u = family.eval(p)?;
    let psi = &u * psi0;
    let mut dpsi: Vec<CVec> = Vec::with_capacity(d);
    for axis in 0..d {
        let du = family.derivative(p, axis)?;
        dpsi.push(&du * psi0);
    }
    let mut t = CMat::zeros(d, d);
    for u_ax in 0..d {
        for v_ax in 0..d {
            let direct = dpsi[u_ax].dotc(&dpsi[v_ax]);
            let proj = dpsi[u_ax].dotc(&psi) * psi.dotc(&dpsi[v_ax]);
            t[(u_ax, v_ax)] = direct - proj;
        }
    }

    let rho = ReferenceState::from_pure(psi0)?;
    let q = oqgt(family, &rho, p)?;
    let gap = max_abs(&(&t - q.q()));
    if gap > tol::STATE_QGT_TOL {
        return Err(CoreError::invalid(
            "state_qgt_check",
            format!(
                "state tensor and operator tensor disagree by {gap:.3e} (tolerance {:.1e})",
                tol::STATE_QGT_TOL
            ),
        ));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{expm_hermitian, UnitaryFamily};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sz() -> CMat {
        CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
    }

    fn sx() -> CMat {
        CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    #[test]
    fn z_rotation_on_its_eigenstate_gives_zero_both_ways() {
        let fam = UnitaryFamily::new_finite_difference(1, 1e-4, |p| {
            expm_hermitian(&sz(), c(0.0, -0.5 * p.coords[0]))
        });
        let psi0 = CVec::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let t = state_qgt_check(&fam, &psi0, &ParameterPoint::new(vec![0.9])).unwrap();
        assert!(max_abs(&t) < 1e-10);
    }

    #[test]
    fn x_rotation_on_up_state_gives_quarter() {
        let fam = UnitaryFamily::new_finite_difference(1, 1e-4, |p| {
            expm_hermitian(&sx(), c(0.0, -0.5 * p.coords[0]))
        });
        let psi0 = CVec::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let t = state_qgt_check(&fam, &psi0, &ParameterPoint::new(vec![0.3])).unwrap();
        assert_abs_diff_eq!(t[(0, 0)].re, 0.25, epsilon = 1e-8);
    }

    #[test]
    fn random_two_parameter_family_agrees_across_paths() {
        // 4x4 family built from two fixed noncommuting Hermitian blocks.
        let h1 = CMat::from_row_slice(
            4,
            4,
            &[
                c(0.2, 0.0), c(0.1, 0.3), c(0.0, -0.2), c(0.4, 0.0),
                c(0.1, -0.3), c(-0.5, 0.0), c(0.25, 0.1), c(0.0, 0.0),
                c(0.0, 0.2), c(0.25, -0.1), c(0.8, 0.0), c(-0.3, 0.15),
                c(0.4, 0.0), c(0.0, 0.0), c(-0.3, -0.15), c(0.1, 0.0),
            ],
        );
        let h2 = CMat::from_row_slice(
            4,
            4,
            &[
                c(-0.7, 0.0), c(0.05, -0.1), c(0.3, 0.0), c(0.0, 0.25),
                c(0.05, 0.1), c(0.4, 0.0), c(0.0, -0.35), c(0.2, 0.0),
                c(0.3, 0.0), c(0.0, 0.35), c(-0.1, 0.0), c(0.12, 0.05),
                c(0.0, -0.25), c(0.2, 0.0), c(0.12, -0.05), c(0.6, 0.0),
            ],
        );
        let fam = UnitaryFamily::new_finite_difference(2, 1e-4, move |p| {
            let h = &h1 * c(p.coords[0], 0.0) + &h2 * c(p.coords[1], 0.0);
            expm_hermitian(&h, c(0.0, -1.0))
        });
        let psi0 = CVec::from_column_slice(&[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.5)]);
        // passes the internal 1e-8 agreement assertion
        state_qgt_check(&fam, &psi0, &ParameterPoint::new(vec![0.7, -0.4])).unwrap();
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let fam = UnitaryFamily::new_finite_difference(1, 1e-4, |_p| Ok(CMat::identity(2, 2)));
        let psi0 = CVec::from_column_slice(&[c(2.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            state_qgt_check(&fam, &psi0, &ParameterPoint::new(vec![0.0])),
            Err(CoreError::NotNormalized { .. })
        ));
    }
}
