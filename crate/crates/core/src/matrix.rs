//! Dense complex matrix helpers: predicates, symmetrization, products.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::CoreError;
use crate::tol;

/// Dense complex square matrix used throughout the crate.
pub type CMat = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVec = DVector<Complex64>;
/// Dense real matrix (metric / curvature components).
pub type RMat = DMatrix<f64>;

/// Largest entrywise magnitude, `max_ij |m_ij|`.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise Hermiticity defect `max |M - M^dag|`.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Entrywise unitarity defect `max |U^dag U - I|`.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let gram = m.adjoint() * m;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::ZERO };
            worst = worst.max((gram[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    m.is_square() && hermiticity_defect(m) <= tol
}

pub fn is_unitary(m: &CMat, tol: f64) -> bool {
    m.is_square() && unitarity_defect(m) <= tol
}

/// Density check: Hermitian, unit trace, eigenvalues above `-tol`.
pub fn is_density(m: &CMat, tol: f64) -> bool {
    if !is_hermitian(m, tol) {
        return false;
    }
    if (m.trace() - Complex64::new(1.0, 0.0)).norm() > tol {
        return false;
    }
    match crate::eigh::eigh(m) {
        Ok(eig) => eig.values.iter().all(|&w| w >= -tol),
        Err(_) => false,
    }
}

/// Symmetrize to the nearest Hermitian matrix, `(M + M^dag) / 2`.
pub fn hermitize(m: &CMat) -> CMat {
    let half = Complex64::new(0.5, 0.0);
    (m + m.adjoint()) * half
}

/// `tr(A B rho)` without forming the full triple product.
pub fn trace_prod3(a: &CMat, b: &CMat, rho: &CMat) -> Complex64 {
    let brho = b * rho;
    let n = a.nrows();
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * brho[(k, i)];
        }
    }
    acc
}

/// `tr(A rho)`.
pub fn trace_prod2(a: &CMat, rho: &CMat) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * rho[(k, i)];
        }
    }
    acc
}

/// Kronecker product `A (x) B`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Entrywise max norm of the commutator `[A, B]`.
pub fn commutator_defect(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a * b - b * a))
}

pub(crate) fn check_same_dim(a: &CMat, b: &CMat) -> Result<(), CoreError> {
    if a.nrows() != b.nrows() || !a.is_square() || !b.is_square() {
        return Err(CoreError::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(())
}

pub(crate) fn check_unitary(m: &CMat) -> Result<(), CoreError> {
    let defect = unitarity_defect(m);
    if defect > tol::UNITARITY_TOL {
        return Err(CoreError::NotUnitary {
            defect,
            tol: tol::UNITARITY_TOL,
        });
    }
    Ok(())
}
