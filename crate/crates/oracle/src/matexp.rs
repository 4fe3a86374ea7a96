use num_complex::Complex64;
use oqgt_core::{expm_hermitian, max_abs, CMat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::OracleReport;
use crate::sampling::random_hermitian;

/// Gate for the exponential cross-check: both code paths are accurate to
/// machine precision on order-one matrices, so anything past 1e-10 means one
/// of them is wrong rather than merely ill-conditioned.
pub const MATEXP_TOL: f64 = 1e-10;

const MATEXP_SAMPLES: usize = 25;

/// Matrix exponential by scaling and squaring with a plain Taylor tail.
///
/// Completely independent of the diagonalization path used in the core
/// crate: halve the argument until its 1-norm drops below 1/2, sum the
/// series (24 terms leave a remainder under 1e-30 at that norm), then square
/// back up.
///
/// # Panics
/// Panics on non-square input; this oracle is for internal cross-checking,
/// not user data.
pub fn expm_scaling_squaring(a: &CMat) -> CMat {
    assert!(a.is_square(), "matrix exponential needs a square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a * Complex64::new((0.5f64).powi(squarings as i32), 0.0);

    let mut sum = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for j in 1..=24 {
        term = (&term * &scaled) / Complex64::new(j as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Maximum absolute column sum.
fn one_norm(a: &CMat) -> f64 {
    (0..a.ncols())
        .map(|c| a.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Compares the diagonalization-based exponential against the scaling and
/// squaring series on random 8x8 Hermitian generators with unitary arguments
/// `exp(-i t H)`, `t` up to 3.
pub fn matexp_oracle(seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..MATEXP_SAMPLES {
        let h = random_hermitian(&mut rng, 8);
        let t = rng.gen_range(0.1..3.0);
        let z = Complex64::new(0.0, -t);
        let via_eigh = expm_hermitian(&h, z)
            .expect("random Hermitian matrices have an exact spectral exponential");
        let via_series = expm_scaling_squaring(&(&h * z));
        worst = worst.max(max_abs(&(via_eigh - via_series)));
    }
    OracleReport::new("matexp", seed, MATEXP_SAMPLES, worst, MATEXP_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use oqgt_core::CVec;

    #[test]
    fn series_matches_the_scalar_exponential_on_diagonal_input() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![
            Complex64::new(0.3, -1.2),
            Complex64::new(-2.0, 0.4),
            Complex64::new(0.0, 3.0),
        ]));
        let e = expm_scaling_squaring(&d);
        for k in 0..3 {
            let gap = (e[(k, k)] - d[(k, k)].exp()).norm();
            assert!(gap <= 1e-13, "diagonal entry {k} off by {gap}");
        }
        assert_abs_diff_eq!(e[(0, 1)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn series_handles_the_zero_matrix() {
        let z = CMat::zeros(3, 3);
        assert_eq!(max_abs(&(expm_scaling_squaring(&z) - CMat::identity(3, 3))), 0.0);
    }

    #[test]
    fn nilpotent_argument_terminates_the_series_exactly() {
        // exp of a strictly upper triangular 2x2 is I + N, no tail at all.
        let mut n = CMat::zeros(2, 2);
        n[(0, 1)] = Complex64::new(5.0, -2.0);
        let e = expm_scaling_squaring(&n);
        assert_abs_diff_eq!((e[(0, 1)] - n[(0, 1)]).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((e[(0, 0)] - Complex64::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn oracle_passes_and_reproduces_bit_identically() {
        let a = matexp_oracle(5);
        let b = matexp_oracle(5);
        assert!(a.passed, "{a}");
        assert_eq!(a.max_abs_error.to_bits(), b.max_abs_error.to_bits());
        assert_eq!(a.samples, 25);
        assert_ne!(
            matexp_oracle(6).max_abs_error.to_bits(),
            a.max_abs_error.to_bits()
        );
    }
}
