//! Generators, inner products, and assembly of the geometric tensor.

use num_complex::Complex64;

use crate::error::CoreError;
use crate::family::{ParameterPoint, ReferenceState, UnitaryFamily};
use crate::matrix::{
    check_same_dim, check_unitary, hermiticity_defect, hermitize, trace_prod2, trace_prod3,
    CMat, RMat,
};
use crate::tol;

/// Hermitian tensor `Q_uv = <A_u A_v> - <A_u><A_v>` at a parameter point.
/// `Re Q` is the metric, `Im Q` the curvature components.
#[derive(Debug, Clone)]
pub struct GeometricTensor {
    q: CMat,
    point: ParameterPoint,
}

impl GeometricTensor {
    pub fn new(q: CMat, point: ParameterPoint) -> Self {
        assert!(q.is_square(), "tensor must be square");
        GeometricTensor { q, point }
    }

    pub fn dim(&self) -> usize {
        self.q.nrows()
    }

    pub fn q(&self) -> &CMat {
        &self.q
    }

    pub fn point(&self) -> &ParameterPoint {
        &self.point
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.q)
    }

    /// `g_uv = Re Q_uv`.
    pub fn metric(&self) -> RMat {
        self.q.map(|z| z.re)
    }

    /// `s_uv = Im Q_uv` (antisymmetric up to rounding).
    pub fn curvature(&self) -> RMat {
        self.q.map(|z| z.im)
    }

    /// Eigenvalues of the symmetrized metric, ascending.
    pub fn metric_eigenvalues(&self) -> Vec<f64> {
        let g = self.metric();
        let sym = (&g + g.transpose()) * 0.5;
        let mut vals: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        vals
    }

    /// Check the tensor invariants: Hermiticity, metric positivity, real
    /// nonnegative diagonal.
    pub fn validate(&self) -> Result<(), CoreError> {
        let defect = self.hermiticity_defect();
        if defect > tol::HERMITICITY_TOL {
            return Err(CoreError::NotHermitian {
                defect,
                tol: tol::HERMITICITY_TOL,
            });
        }
        if let Some(&min) = self
            .metric_eigenvalues()
            .first()
            .filter(|&&w| w < tol::METRIC_PSD_FLOOR)
        {
            return Err(CoreError::invalid(
                "geometric tensor",
                format!("metric eigenvalue {min:.3e} below {:.1e}", tol::METRIC_PSD_FLOOR),
            ));
        }
        Ok(())
    }
}

/// Metric components `Re Q` as a standalone operation.
pub fn metric(q: &GeometricTensor) -> RMat {
    q.metric()
}

/// Curvature components `Im Q` as a standalone operation.
///
/// These are the component array of the curvature 2-form; the 2-form
/// evaluated on a coordinate plane `(a, b)` is `2 Im Q_ab` (the wedge
/// antisymmetrization contributes the factor of two), which is what the
/// surface phase integral uses.
pub fn curvature(q: &GeometricTensor) -> RMat {
    q.curvature()
}

/// `<X, Y>_rho = tr(X^dag Y rho)`.
pub fn operator_inner_product(
    x: &CMat,
    y: &CMat,
    rho: &ReferenceState,
) -> Result<Complex64, CoreError> {
    check_same_dim(x, y)?;
    if x.nrows() != rho.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: rho.dim(),
            found: x.nrows(),
        });
    }
    let xdag = x.adjoint();
    Ok(trace_prod3(&xdag, y, rho.rho()))
}

/// `|tr(U1^dag U2 rho)|`: overlap of two unitaries relative to `rho`.
/// Symmetric in its arguments and invariant under global phases.
pub fn operator_fidelity(
    u1: &CMat,
    u2: &CMat,
    rho: &ReferenceState,
) -> Result<f64, CoreError> {
    check_same_dim(u1, u2)?;
    check_unitary(u1)?;
    check_unitary(u2)?;
    let inner = operator_inner_product(u1, u2, rho)?;
    Ok(inner.norm())
}

/// The Hermitian displacement generators `A_u = i U^dag dU/dp_u`, with the
/// pre-symmetrization Hermiticity defect of each recorded as a diagnostic
/// (analytically zero; finite differencing breaks it at `O(h^2)`).
#[derive(Debug, Clone)]
pub struct Generators {
    pub matrices: Vec<CMat>,
    pub presym_defects: Vec<f64>,
}

/// Generators for a chosen subset of axes (full assembly uses all axes;
/// the surface integral needs only two).
pub fn generators_for_axes(
    family: &UnitaryFamily,
    p: &ParameterPoint,
    axes: &[usize],
) -> Result<Generators, CoreError> {
    let u = family.eval(p)?;
    check_unitary(&u)?;
    let udag = u.adjoint();
    let i_unit = Complex64::new(0.0, 1.0);
    let mut matrices = Vec::with_capacity(axes.len());
    let mut presym_defects = Vec::with_capacity(axes.len());
    for &axis in axes {
        let du = family.derivative(p, axis)?;
        let raw = &udag * du * i_unit;
        presym_defects.push(hermiticity_defect(&raw));
        matrices.push(hermitize(&raw));
    }
    Ok(Generators {
        matrices,
        presym_defects,
    })
}

/// Generators on every parameter axis.
pub fn generators(family: &UnitaryFamily, p: &ParameterPoint) -> Result<Generators, CoreError> {
    let axes: Vec<usize> = (0..family.param_dim()).collect();
    generators_for_axes(family, p, &axes)
}

/// Tensor entries from prepared generators:
/// `Q_uv = tr(A_u A_v rho) - tr(A_u rho) tr(A_v rho)`.
pub(crate) fn tensor_from_generators(a: &[CMat], rho: &CMat) -> CMat {
    let d = a.len();
    let means: Vec<Complex64> = a.iter().map(|m| trace_prod2(m, rho)).collect();
    CMat::from_fn(d, d, |u, v| {
        trace_prod3(&a[u], &a[v], rho) - means[u].conj() * means[v]
    })
}

/// The geometric tensor of a unitary family at a point with respect to a
/// reference state. Every entry is computed independently; Hermiticity of
/// the result is measured by the validation suite, not imposed.
pub fn oqgt(
    family: &UnitaryFamily,
    rho: &ReferenceState,
    p: &ParameterPoint,
) -> Result<GeometricTensor, CoreError> {
    let gens = generators(family, p)?;
    if let Some(m) = gens.matrices.first() {
        if m.nrows() != rho.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: rho.dim(),
                found: m.nrows(),
            });
        }
    }
    let q = tensor_from_generators(&gens.matrices, rho.rho());
    Ok(GeometricTensor::new(q, p.clone()))
}

/// Single tensor entry `Q_ab` over two chosen axes (used by quadrature
/// loops that do not need the remaining rows).
pub fn oqgt_entry(
    family: &UnitaryFamily,
    rho: &ReferenceState,
    p: &ParameterPoint,
    axis_a: usize,
    axis_b: usize,
) -> Result<Complex64, CoreError> {
    let gens = generators_for_axes(family, p, &[axis_a, axis_b])?;
    let q = tensor_from_generators(&gens.matrices, rho.rho());
    Ok(q[(0, 1)])
}

/// Connection components `beta_u = -tr(rho A_u)`, real for Hermitian
/// generators; meaningful when `rho` does not vary with the parameters.
pub fn berry_connection(
    family: &UnitaryFamily,
    rho: &ReferenceState,
    p: &ParameterPoint,
) -> Result<Vec<f64>, CoreError> {
    let gens = generators(family, p)?;
    let mut beta = Vec::with_capacity(gens.matrices.len());
    for a in &gens.matrices {
        let v = -trace_prod2(a, rho.rho());
        if v.im.abs() > tol::HERMITICITY_TOL {
            return Err(CoreError::invalid(
                "berry_connection",
                format!("connection component has imaginary part {:.3e}", v.im),
            ));
        }
        beta.push(v.re);
    }
    Ok(beta)
}

/// Sum of per-factor tensors for a family with tensor-product structure
/// and a product reference state. The caller asserts the factorization
/// premise; this operation only checks shape compatibility.
pub fn oqgt_compose_additive(parts: &[GeometricTensor]) -> Result<GeometricTensor, CoreError> {
    let first = parts.first().ok_or_else(|| {
        CoreError::invalid("oqgt_compose_additive", "no parts to compose")
    })?;
    let d = first.dim();
    let coords = &first.point().coords;
    let mut q = CMat::zeros(d, d);
    for part in parts {
        if part.dim() != d {
            return Err(CoreError::DimensionMismatch {
                expected: d,
                found: part.dim(),
            });
        }
        if &part.point().coords != coords {
            return Err(CoreError::invalid(
                "oqgt_compose_additive",
                "parts evaluated at different parameter coordinates",
            ));
        }
        q += part.q();
    }
    Ok(GeometricTensor::new(q, first.point().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::UnitaryFamily;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sz() -> CMat {
        CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
    }

    fn sx() -> CMat {
        CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    fn up_state() -> ReferenceState {
        ReferenceState::new(CMat::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ))
        .unwrap()
    }

    /// U(p) = exp(-i p sigma_z / 2) as a finite-difference family.
    fn z_rotation_family(step: f64) -> UnitaryFamily {
        UnitaryFamily::new_finite_difference(1, step, |p| {
            let half = 0.5 * p.coords[0];
            Ok(CMat::from_row_slice(
                2,
                2,
                &[
                    Complex64::from_polar(1.0, -half),
                    c(0.0, 0.0),
                    c(0.0, 0.0),
                    Complex64::from_polar(1.0, half),
                ],
            ))
        })
    }

    #[test]
    fn inner_product_of_identity_is_unit_trace() {
        let rho = ReferenceState::maximally_mixed(4);
        let id = CMat::identity(4, 4);
        let v = operator_inner_product(&id, &id, &rho).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn inner_product_reads_out_expectation_values() {
        let v = operator_inner_product(&CMat::identity(2, 2), &sz(), &up_state()).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn inner_product_matches_naive_elementwise_sum() {
        // Independent O(n^3) reference: sum_{abc} conj(X_ba) Y_bc rho_ca.
        let n = 4;
        let mut s = 77u64;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let x = DMatrix::from_fn(n, n, |_, _| c(next(), next()));
        let y = DMatrix::from_fn(n, n, |_, _| c(next(), next()));
        let raw = DMatrix::from_fn(n, n, |_, _| c(next(), next()));
        let pos = &raw * raw.adjoint();
        let rho_mat = &pos / pos.trace();
        let rho = ReferenceState::new(rho_mat.clone()).unwrap();

        let mut naive = Complex64::ZERO;
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    naive += x[(b, a)].conj() * y[(b, d)] * rho_mat[(d, a)];
                }
            }
        }
        let got = operator_inner_product(&x, &y, &rho).unwrap();
        assert_abs_diff_eq!(got.re, naive.re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.im, naive.im, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_is_one_for_equal_and_phase_shifted_unitaries() {
        let rho = ReferenceState::maximally_mixed(2);
        let u = crate::family::expm_hermitian(&(sz() + sx()), c(0.0, -0.7)).unwrap();
        assert_abs_diff_eq!(operator_fidelity(&u, &u, &rho).unwrap(), 1.0, epsilon = 1e-12);
        let phased = &u * Complex64::from_polar(1.0, 1.9);
        assert_abs_diff_eq!(
            operator_fidelity(&u, &phased, &rho).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn fidelity_of_z_rotation_against_identity_is_cosine() {
        let rho = ReferenceState::maximally_mixed(2);
        for &theta in &[0.3, 1.2, 2.9] {
            let u2 = crate::family::expm_hermitian(&sz(), c(0.0, -theta)).unwrap();
            let f = operator_fidelity(&CMat::identity(2, 2), &u2, &rho).unwrap();
            assert_abs_diff_eq!(f, theta.cos().abs(), epsilon = 1e-12);
        }
    }

    #[test]
    fn fidelity_rejects_non_unitary_input() {
        let rho = ReferenceState::maximally_mixed(2);
        let m = CMat::identity(2, 2) * c(1.5, 0.0);
        assert!(matches!(
            operator_fidelity(&m, &CMat::identity(2, 2), &rho),
            Err(CoreError::NotUnitary { .. })
        ));
    }

    #[test]
    fn generators_vanish_for_constant_family() {
        let fam = UnitaryFamily::new_finite_difference(2, 1e-4, |_p| Ok(CMat::identity(3, 3)));
        let gens = generators(&fam, &ParameterPoint::new(vec![0.4, -1.0])).unwrap();
        for a in &gens.matrices {
            assert!(crate::matrix::max_abs(a) < 1e-12);
        }
    }

    #[test]
    fn z_rotation_generator_is_half_sigma_z() {
        let fam = z_rotation_family(1e-4);
        let gens = generators(&fam, &ParameterPoint::new(vec![0.8])).unwrap();
        let expected = sz() * c(0.5, 0.0);
        assert!(crate::matrix::max_abs(&(&gens.matrices[0] - expected)) < 1e-8);
        // pre-symmetrization defect is O(h^2)
        assert!(gens.presym_defects[0] <= 10.0 * 1e-4f64.powi(2));
    }

    #[test]
    fn commuting_evolution_generator_is_t_times_field() {
        // U(p) = exp(-i t p sigma_x) at t = 1: A = t sigma_x.
        let fam = UnitaryFamily::new_finite_difference(1, 1e-4, |p| {
            crate::family::expm_hermitian(&sx(), c(0.0, -p.coords[0]))
        });
        let gens = generators(&fam, &ParameterPoint::with_time(vec![0.37], 1.0)).unwrap();
        assert!(crate::matrix::max_abs(&(&gens.matrices[0] - sx())) < 1e-8);
    }

    #[test]
    fn tensor_vanishes_on_eigenstate_and_is_quarter_on_mixed() {
        let fam = z_rotation_family(1e-4);
        let p = ParameterPoint::new(vec![1.1]);
        let q_up = oqgt(&fam, &up_state(), &p).unwrap();
        assert!(crate::matrix::max_abs(q_up.q()) < 1e-12);

        let q_mixed = oqgt(&fam, &ReferenceState::maximally_mixed(2), &p).unwrap();
        assert_abs_diff_eq!(q_mixed.q()[(0, 0)].re, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(q_mixed.q()[(0, 0)].im, 0.0, epsilon = 1e-12);
        q_mixed.validate().unwrap();
    }

    #[test]
    fn connection_examples() {
        let fam = z_rotation_family(1e-4);
        let p = ParameterPoint::new(vec![0.3]);
        let beta_up = berry_connection(&fam, &up_state(), &p).unwrap();
        assert_abs_diff_eq!(beta_up[0], -0.5, epsilon = 1e-9);
        let beta_mixed =
            berry_connection(&fam, &ReferenceState::maximally_mixed(2), &p).unwrap();
        assert_abs_diff_eq!(beta_mixed[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn composition_sums_parts() {
        let fam = z_rotation_family(1e-4);
        let p = ParameterPoint::new(vec![0.6]);
        let q = oqgt(&fam, &ReferenceState::maximally_mixed(2), &p).unwrap();
        let single = oqgt_compose_additive(std::slice::from_ref(&q)).unwrap();
        assert_eq!(single.q(), q.q());
        let doubled = oqgt_compose_additive(&[q.clone(), q.clone()]).unwrap();
        assert_abs_diff_eq!(
            doubled.q()[(0, 0)].re,
            2.0 * q.q()[(0, 0)].re,
            epsilon = 1e-14
        );
    }

    #[test]
    fn composition_rejects_mismatched_points() {
        let fam = z_rotation_family(1e-4);
        let rho = ReferenceState::maximally_mixed(2);
        let qa = oqgt(&fam, &rho, &ParameterPoint::new(vec![0.5])).unwrap();
        let qb = oqgt(&fam, &rho, &ParameterPoint::new(vec![0.6])).unwrap();
        assert!(oqgt_compose_additive(&[qa, qb]).is_err());
    }
}
