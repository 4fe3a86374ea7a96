//! Parameterized families of unitaries and Hamiltonians, and the reference
//! states defining the operator inner product.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigh::eigh;
use crate::error::CoreError;
use crate::matrix::{commutator_defect, hermiticity_defect, is_density, CMat, CVec};
use crate::tol;

/// A point on the parameter manifold: dimensionless model coordinates plus
/// the evolution time (hbar = 1). The coordinates are the differentiation
/// axes; `time` is carried for bookkeeping and is fixed within any one
/// tensor evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterPoint {
    pub coords: Vec<f64>,
    pub time: f64,
}

impl ParameterPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        ParameterPoint { coords, time: 0.0 }
    }

    pub fn with_time(coords: Vec<f64>, time: f64) -> Self {
        ParameterPoint { coords, time }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Copy with `coords[axis]` shifted by `delta`.
    pub fn offset(&self, axis: usize, delta: f64) -> Result<Self, CoreError> {
        if axis >= self.coords.len() {
            return Err(CoreError::AxisOutOfRange {
                axis,
                dim: self.coords.len(),
            });
        }
        let mut p = self.clone();
        p.coords[axis] += delta;
        Ok(p)
    }
}

type EvalFn = dyn Fn(&ParameterPoint) -> Result<CMat, CoreError> + Send + Sync;
type DerivFn = dyn Fn(&ParameterPoint, usize) -> Result<CMat, CoreError> + Send + Sync;

/// How a family's parameter derivatives are obtained.
enum Derivative {
    /// Central differences with the given step per axis.
    FiniteDifference(Vec<f64>),
    /// Exact derivative supplied by the family.
    Analytic(Box<DerivFn>),
}

/// A parameterized family of unitary operators `p -> U(p)`.
pub struct UnitaryFamily {
    param_dim: usize,
    eval: Box<EvalFn>,
    derivative: Derivative,
}

impl UnitaryFamily {
    /// Family differentiated by central differences with one step for all
    /// axes.
    pub fn new_finite_difference(
        param_dim: usize,
        step: f64,
        eval: impl Fn(&ParameterPoint) -> Result<CMat, CoreError> + Send + Sync + 'static,
    ) -> Self {
        Self::new_finite_difference_steps(param_dim, vec![step; param_dim], eval)
    }

    /// Family differentiated by central differences with a per-axis step.
    pub fn new_finite_difference_steps(
        param_dim: usize,
        steps: Vec<f64>,
        eval: impl Fn(&ParameterPoint) -> Result<CMat, CoreError> + Send + Sync + 'static,
    ) -> Self {
        assert_eq!(
            steps.len(),
            param_dim,
            "one finite-difference step per parameter axis"
        );
        UnitaryFamily {
            param_dim,
            eval: Box::new(eval),
            derivative: Derivative::FiniteDifference(steps),
        }
    }

    /// Family carrying an exact derivative `(p, axis) -> dU/dp_axis`.
    pub fn new_analytic(
        param_dim: usize,
        eval: impl Fn(&ParameterPoint) -> Result<CMat, CoreError> + Send + Sync + 'static,
        derivative: impl Fn(&ParameterPoint, usize) -> Result<CMat, CoreError> + Send + Sync + 'static,
    ) -> Self {
        UnitaryFamily {
            param_dim,
            eval: Box::new(eval),
            derivative: Derivative::Analytic(Box::new(derivative)),
        }
    }

    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self.derivative, Derivative::Analytic(_))
    }

    pub fn eval(&self, p: &ParameterPoint) -> Result<CMat, CoreError> {
        if p.dim() != self.param_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.param_dim,
                found: p.dim(),
            });
        }
        (self.eval)(p)
    }

    /// `dU/dp_axis` at `p`, by the family's derivative mode.
    pub fn derivative(&self, p: &ParameterPoint, axis: usize) -> Result<CMat, CoreError> {
        if axis >= self.param_dim {
            return Err(CoreError::AxisOutOfRange {
                axis,
                dim: self.param_dim,
            });
        }
        match &self.derivative {
            Derivative::Analytic(f) => f(p, axis),
            Derivative::FiniteDifference(steps) => {
                let h = steps[axis];
                let stencil = |delta: f64| -> Result<CMat, CoreError> {
                    let q = p.offset(axis, delta)?;
                    self.eval(&q).map_err(|e| CoreError::EvaluationFailed {
                        axis,
                        coords: q.coords.clone(),
                        source: Box::new(e),
                    })
                };
                let plus = stencil(h)?;
                let minus = stencil(-h)?;
                Ok((plus - minus) / Complex64::new(2.0 * h, 0.0))
            }
        }
    }
}

/// A parameterized family of Hermitian operators `p -> H(p)`, optionally
/// with exact parameter derivatives.
pub struct HamiltonianFamily {
    param_dim: usize,
    eval: Box<EvalFn>,
    deriv: Option<Box<DerivFn>>,
}

impl HamiltonianFamily {
    pub fn new(
        param_dim: usize,
        eval: impl Fn(&ParameterPoint) -> Result<CMat, CoreError> + Send + Sync + 'static,
    ) -> Self {
        HamiltonianFamily {
            param_dim,
            eval: Box::new(eval),
            deriv: None,
        }
    }

    pub fn with_derivative(
        mut self,
        deriv: impl Fn(&ParameterPoint, usize) -> Result<CMat, CoreError> + Send + Sync + 'static,
    ) -> Self {
        self.deriv = Some(Box::new(deriv));
        self
    }

    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    pub fn eval(&self, p: &ParameterPoint) -> Result<CMat, CoreError> {
        if p.dim() != self.param_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.param_dim,
                found: p.dim(),
            });
        }
        let h = (self.eval)(p)?;
        let defect = hermiticity_defect(&h);
        if defect > tol::HERMITICITY_TOL {
            return Err(CoreError::NotHermitian {
                defect,
                tol: tol::HERMITICITY_TOL,
            });
        }
        Ok(h)
    }

    /// `dH/dp_axis`: the exact closure when present, otherwise central
    /// differences at [`tol::DEFAULT_FD_STEP`].
    pub fn derivative(&self, p: &ParameterPoint, axis: usize) -> Result<CMat, CoreError> {
        if axis >= self.param_dim {
            return Err(CoreError::AxisOutOfRange {
                axis,
                dim: self.param_dim,
            });
        }
        if let Some(f) = &self.deriv {
            return f(p, axis);
        }
        let h = tol::DEFAULT_FD_STEP;
        let plus = self.eval(&p.offset(axis, h)?)?;
        let minus = self.eval(&p.offset(axis, -h)?)?;
        Ok((plus - minus) / Complex64::new(2.0 * h, 0.0))
    }
}

/// Density operator defining the inner product `<X, Y> = tr(X^dag Y rho)`.
#[derive(Debug, Clone)]
pub struct ReferenceState {
    rho: CMat,
    purity_flag: bool,
}

impl ReferenceState {
    /// Validate and wrap a density matrix.
    pub fn new(rho: CMat) -> Result<Self, CoreError> {
        if !rho.is_square() {
            return Err(CoreError::NotDensity {
                reason: "matrix is not square".into(),
            });
        }
        if !is_density(&rho, tol::DENSITY_TOL) {
            return Err(CoreError::NotDensity {
                reason: format!(
                    "Hermiticity/trace/positivity check failed at tolerance {:.1e}",
                    tol::DENSITY_TOL
                ),
            });
        }
        let tr_rho_sq = (&rho * &rho).trace().re;
        let purity_flag = (tr_rho_sq - 1.0).abs() <= tol::PURITY_TOL;
        Ok(ReferenceState { rho, purity_flag })
    }

    /// Projector onto a normalized state vector.
    pub fn from_pure(psi: &CVec) -> Result<Self, CoreError> {
        let defect = (psi.norm() - 1.0).abs();
        if defect > tol::DENSITY_TOL {
            return Err(CoreError::NotNormalized { defect });
        }
        let rho = psi * psi.adjoint();
        Ok(ReferenceState {
            rho,
            purity_flag: true,
        })
    }

    /// Maximally mixed state `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        let rho = CMat::identity(n, n) / Complex64::new(n as f64, 0.0);
        ReferenceState {
            rho,
            purity_flag: n == 1,
        }
    }

    pub fn rho(&self) -> &CMat {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn is_pure(&self) -> bool {
        self.purity_flag
    }

    /// Entrywise max norm of `[rho, M]`.
    pub fn stationarity_defect(&self, m: &CMat) -> f64 {
        commutator_defect(&self.rho, m)
    }

    /// True when the state commutes with `m` within
    /// [`tol::STATIONARITY_TOL`].
    pub fn is_stationary_for(&self, m: &CMat) -> bool {
        self.stationarity_defect(m) <= tol::STATIONARITY_TOL
    }
}

/// `sin(x)/x`, series-expanded near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `exp(c H)` for Hermitian `H`, through the eigendecomposition.
pub fn expm_hermitian(h: &CMat, c: Complex64) -> Result<CMat, CoreError> {
    let eig = eigh(h)?;
    Ok(eig.map_spectrum(|w| (c * w).exp()))
}

/// The evolution family `p -> exp(-i t H(p))` at fixed time `t`, with
/// exact parameter derivatives.
///
/// The derivative uses the standard divided-difference form for functions
/// of a Hermitian family: with `H = V diag(E) V^dag` and `M = V^dag (dH) V`,
///
/// `dU = V (Phi . M) V^dag`,  `Phi_ij = -i t e^{-i t (E_i+E_j)/2} sinc(t (E_i-E_j)/2)`,
///
/// where `.` is the entrywise product. The `sinc` form is exact for
/// coinciding eigenvalues, so no degeneracy handling is needed.
///
/// At `t = 0` the family returns the exact identity and exact zero
/// derivatives, making the tensor vanish identically there.
pub fn time_evolution_family(h_family: Arc<HamiltonianFamily>, t: f64) -> UnitaryFamily {
    let dim_p = h_family.param_dim();
    let h_eval = Arc::clone(&h_family);
    let h_deriv = Arc::clone(&h_family);
    UnitaryFamily::new_analytic(
        dim_p,
        move |p| {
            let hm = h_eval.eval(p)?;
            if t == 0.0 {
                return Ok(CMat::identity(hm.nrows(), hm.nrows()));
            }
            let eig = eigh(&hm)?;
            Ok(eig.map_spectrum(|w| (Complex64::new(0.0, -t) * w).exp()))
        },
        move |p, axis| {
            let hm = h_deriv.eval(p)?;
            let n = hm.nrows();
            if t == 0.0 {
                return Ok(CMat::zeros(n, n));
            }
            let eig = eigh(&hm)?;
            let dh = h_deriv.derivative(p, axis)?;
            let m = eig.vectors.adjoint() * dh * &eig.vectors;
            let mut phi_m = DMatrix::<Complex64>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mean = 0.5 * (eig.values[i] + eig.values[j]);
                    let half_gap = 0.5 * t * (eig.values[i] - eig.values[j]);
                    let phi = Complex64::new(0.0, -t)
                        * (Complex64::new(0.0, -t * mean)).exp()
                        * sinc(half_gap);
                    phi_m[(i, j)] = phi * m[(i, j)];
                }
            }
            Ok(&eig.vectors * phi_m * eig.vectors.adjoint())
        },
    )
}

/// The same evolution family differentiated by central differences on the
/// unitary itself (the fully independent generic path used by oracles).
pub fn time_evolution_family_fd(
    h_family: Arc<HamiltonianFamily>,
    t: f64,
    step: f64,
) -> UnitaryFamily {
    let dim_p = h_family.param_dim();
    UnitaryFamily::new_finite_difference(dim_p, step, move |p| {
        let hm = h_family.eval(p)?;
        if t == 0.0 {
            return Ok(CMat::identity(hm.nrows(), hm.nrows()));
        }
        let eig = eigh(&hm)?;
        Ok(eig.map_spectrum(|w| (Complex64::new(0.0, -t) * w).exp()))
    })
}
