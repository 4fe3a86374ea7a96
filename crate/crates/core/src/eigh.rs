//! Hermitian eigendecomposition with a deterministic eigenvector gauge
//! and a certified result.
//!
//! The backend solver returns eigenpairs in arbitrary order with arbitrary
//! column phases. Downstream consumers (spectral split, evolution
//! operators, reproducible reports) need a canonical form, so this wrapper
//! sorts eigenvalues ascending and rotates each eigenvector's phase so that
//! its largest-magnitude component is real and positive.
//!
//! The wrapper also refuses to hand back a bad decomposition. The backend's
//! implicit-QL pass misconverges on some structured inputs (coupling
//! matrices of translation-invariant rings, whose spectra carry tightly
//! clustered level pairs, trigger it reliably): it returns orthonormal
//! columns that simply fail to diagonalize the matrix, with reconstruction
//! errors up to order one while random dense inputs solve to 1e-15. Every
//! decomposition is therefore checked against [`CERT_FACTOR`]; on failure
//! the matrix is re-solved by a cyclic Jacobi fallback, which is backward
//! stable unconditionally, and re-checked.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::CoreError;
use crate::matrix::{hermiticity_defect, hermitize, max_abs, CMat};
use crate::tol;

/// Multiplier on `n * eps * max(1, max|H_ij|)` for the decomposition
/// certificate `max(|V D V^dag - H|, |V^dag V - I|)`. Backward-stable
/// solves land one to two orders below this line (measured near 6e-14
/// for structured 32x32 inputs with entries of order ten); backend
/// misconvergence lands many orders above it (1e-7 to 3e-1 on the same
/// family), so the classifier has a wide moat on both sides.
const CERT_FACTOR: f64 = 64.0;

/// Sweep cap for the fallback solver. Cyclic Jacobi converges
/// quadratically once the off-diagonal mass is small; inputs up to
/// dimension 1024 settle well under twenty sweeps, and doubling that
/// leaves headroom without risking an unbounded loop.
const MAX_JACOBI_SWEEPS: usize = 40;

/// Eigendecomposition of a Hermitian matrix, `H = V diag(values) V^dag`,
/// with `values` ascending and gauge-fixed columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `values`.
    pub vectors: CMat,
}

impl HermitianEigen {
    /// Smallest gap between consecutive (sorted) eigenvalues, with the
    /// index of the lower member of the pair. `None` for dimension 1.
    pub fn min_gap(&self) -> Option<(usize, f64)> {
        self.values
            .windows(2)
            .enumerate()
            .map(|(i, w)| (i, w[1] - w[0]))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("eigenvalue gaps are finite"))
    }

    /// Apply a spectral function: `V diag(f(E_i)) V^dag`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, &w) in self.values.iter().enumerate() {
            let fw = f(w);
            for i in 0..n {
                scaled[(i, k)] *= fw;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// Error if any consecutive eigenvalue gap is below `gap_tol`.
    pub fn require_nondegenerate(&self, gap_tol: f64) -> Result<(), CoreError> {
        if let Some((i, gap)) = self.min_gap() {
            if gap < gap_tol {
                return Err(CoreError::DegenerateEigenvalues {
                    lower: i,
                    upper: i + 1,
                    gap,
                    tol: gap_tol,
                });
            }
        }
        Ok(())
    }
}

/// Index of the largest-magnitude component (first maximum on ties).
fn dominant_index(col: nalgebra::DVectorView<Complex64>) -> usize {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, z) in col.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    best
}

/// Rotate each column's global phase so its dominant component is real
/// positive. Deterministic for any nonzero column.
pub(crate) fn gauge_fix_columns(v: &mut CMat) {
    let n = v.nrows();
    for k in 0..v.ncols() {
        let idx = dominant_index(v.column(k));
        let z = v[(idx, k)];
        let mag = z.norm();
        if mag > 0.0 {
            let phase = z.conj() / mag;
            for i in 0..n {
                v[(i, k)] *= phase;
            }
        }
    }
}

/// Sort eigenpairs ascending and gauge-fix the columns.
fn assemble(values_raw: &[f64], vectors_raw: &CMat) -> HermitianEigen {
    let n = values_raw.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values_raw[a]
            .partial_cmp(&values_raw[b])
            .expect("Hermitian eigenvalues are finite")
    });

    let values: Vec<f64> = order.iter().map(|&i| values_raw[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &vectors_raw.column(src));
    }
    gauge_fix_columns(&mut vectors);

    HermitianEigen { values, vectors }
}

/// Worst of reconstruction error and orthonormality defect, the two
/// quantities a backward-stable solve keeps at the `eps * ||H||` scale.
fn certificate_defect(eig: &HermitianEigen, sym: &CMat) -> f64 {
    let n = sym.nrows();
    let rec = eig.map_spectrum(|w| Complex64::new(w, 0.0));
    let residual = max_abs(&(&rec - sym));
    let gram = eig.vectors.adjoint() * &eig.vectors - CMat::identity(n, n);
    residual.max(max_abs(&gram))
}

/// Cyclic-by-rows complex Jacobi eigensolver.
///
/// Every update is a unitary congruence by an exactly unitary 2x2
/// rotation, so the accumulated vectors stay orthonormal to rounding and
/// the reconstruction error stays at the `eps * ||H||` scale no matter
/// how the spectrum clusters. Cubic cost per sweep makes it far slower
/// than the backend, which is why it only runs when the certificate
/// rejects the fast path.
fn jacobi_eigh(sym: &CMat) -> (Vec<f64>, CMat) {
    let n = sym.nrows();
    let mut a = sym.clone();
    let mut v = CMat::identity(n, n);
    let fro = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    if n >= 2 && fro > 0.0 {
        for _ in 0..MAX_JACOBI_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
                .map(|(p, q)| a[(p, q)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= f64::EPSILON * fro {
                break;
            }
            for p in 0..(n - 1) {
                for q in (p + 1)..n {
                    let beta = a[(p, q)];
                    let m = beta.norm();
                    if m == 0.0 {
                        continue;
                    }
                    let alpha = a[(p, p)].re;
                    let delta = a[(q, q)].re;
                    let phase = beta / m;
                    // Zero the (p, q) entry: with tau = (delta - alpha) / 2|beta|
                    // the tangent solves t^2 + 2 tau t - 1 = 0; the smaller
                    // root keeps the rotation minimal and the sweep stable.
                    let tau = (delta - alpha) / (2.0 * m);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let sp = phase * s;
                    let spc = phase.conj() * s;

                    for i in 0..n {
                        if i == p || i == q {
                            continue;
                        }
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        let new_ip = aip * c - aiq * spc;
                        let new_iq = aip * sp + aiq * c;
                        a[(i, p)] = new_ip;
                        a[(p, i)] = new_ip.conj();
                        a[(i, q)] = new_iq;
                        a[(q, i)] = new_iq.conj();
                    }
                    a[(p, p)] = Complex64::new(alpha * c * c - 2.0 * m * c * s + delta * s * s, 0.0);
                    a[(q, q)] = Complex64::new(alpha * s * s + 2.0 * m * c * s + delta * c * c, 0.0);
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);

                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c - viq * spc;
                        v[(i, q)] = vip * sp + viq * c;
                    }
                }
            }
        }
    }

    let values = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v)
}

/// Eigendecompose a Hermitian matrix with deterministic ordering and gauge.
///
/// The input must be Hermitian within [`tol::HERMITICITY_TOL`]; it is then
/// exactly symmetrized before the solve so the backend sees a clean input.
/// The returned decomposition always satisfies the module-level
/// certificate; inputs the backend misconverges on are re-solved by the
/// Jacobi fallback, and the rare input failing both paths is an error
/// rather than a silently wrong answer.
pub fn eigh(h: &CMat) -> Result<HermitianEigen, CoreError> {
    if !h.is_square() {
        return Err(CoreError::DimensionMismatch {
            expected: h.nrows(),
            found: h.ncols(),
        });
    }
    let defect = hermiticity_defect(h);
    if defect > tol::HERMITICITY_TOL {
        return Err(CoreError::NotHermitian {
            defect,
            tol: tol::HERMITICITY_TOL,
        });
    }
    let sym = hermitize(h);
    let n = h.nrows();
    let cert_tol = CERT_FACTOR * n as f64 * f64::EPSILON * max_abs(&sym).max(1.0);

    let eig = sym.clone().symmetric_eigen();
    let fast = assemble(eig.eigenvalues.as_slice(), &eig.eigenvectors);
    if certificate_defect(&fast, &sym) <= cert_tol {
        return Ok(fast);
    }

    let (values, vectors) = jacobi_eigh(&sym);
    let slow = assemble(&values, &vectors);
    let defect = certificate_defect(&slow, &sym);
    if defect <= cert_tol {
        Ok(slow)
    } else {
        Err(CoreError::invalid(
            "hermitian eigensolver",
            format!("decomposition defect {defect:e} exceeds certificate {cert_tol:e}"),
        ))
    }
}
