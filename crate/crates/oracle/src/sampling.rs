//! Seeded parameter and matrix samplers shared by the randomized oracles.
//!
//! All samplers take a generic `Rng` so callers control reproducibility; the
//! oracles themselves always feed them a counter-based stream cipher seeded
//! from a single `u64`, which keeps every report bit-reproducible.

use std::sync::Arc;

use num_complex::Complex64;
use oqgt_core::{CMat, CVec, HamiltonianFamily};
use rand::Rng;

/// How much of the field axis around the critical point gets excluded when
/// sampling: dispersions can close there and conditioning degrades.
const FIELD_EXCLUSION_HALF_WIDTH: f64 = 0.02;

/// Transverse field drawn uniformly from `[0, 2]` with the band
/// `|lambda - 1| < 0.02` around the critical point rejected and redrawn.
pub fn sample_field<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let lambda: f64 = rng.gen_range(0.0..2.0);
        if (lambda - 1.0).abs() >= FIELD_EXCLUSION_HALF_WIDTH {
            return lambda;
        }
    }
}

/// Anisotropy drawn uniformly from `[0.1, 1.5]`; staying well away from zero
/// keeps every mode gapped for any field in the sampled range.
pub fn sample_anisotropy<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.1..1.5)
}

/// Rotation angle drawn uniformly from `[0, 2 pi)`.
pub fn sample_phase_angle<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..std::f64::consts::TAU)
}

/// Evolution time drawn uniformly from `[0, 20]`.
pub fn sample_time<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..20.0)
}

/// Odd spin count drawn uniformly from the odd integers in `[min, max]`.
///
/// # Panics
/// Panics if the range contains no odd integer.
pub fn sample_spin_count<R: Rng>(rng: &mut R, min: usize, max: usize) -> usize {
    let lo = if min % 2 == 1 { min } else { min + 1 };
    assert!(lo <= max, "no odd spin count in {min}..={max}");
    let choices = (max - lo) / 2 + 1;
    lo + 2 * rng.gen_range(0..choices)
}

/// Random Hermitian matrix with entries of order one: independent uniform
/// real and imaginary parts, then symmetrized.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    for r in 0..n {
        m[(r, r)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for c in (r + 1)..n {
            let entry = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(r, c)] = entry;
            m[(c, r)] = entry.conj();
        }
    }
    m
}

/// Random normalized state vector.
pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> CVec {
    loop {
        let v = CVec::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let norm = v.norm();
        if norm > 1e-3 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Random density matrix: a random pure state mixed with the maximally mixed
/// state, `(1 - w) |psi><psi| + w I/n` with `w` uniform in `[0, 1)`.
pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let psi = random_state(rng, n);
    let w = rng.gen_range(0.0..1.0);
    let pure = &psi * psi.adjoint();
    pure * Complex64::new(1.0 - w, 0.0)
        + CMat::identity(n, n) * Complex64::new(w / n as f64, 0.0)
}

/// Random linear operator pencil `H(p) = H0 + sum_i p_i H_{i+1}` with exact
/// derivatives (the constant coefficient matrices). The workhorse test
/// family: dense, no special structure, smooth in every parameter.
pub fn random_linear_pencil<R: Rng>(rng: &mut R, dim: usize, n_params: usize) -> HamiltonianFamily {
    let mats: Arc<Vec<CMat>> = Arc::new((0..=n_params).map(|_| random_hermitian(rng, dim)).collect());
    let eval_mats = Arc::clone(&mats);
    let deriv_mats = mats;
    HamiltonianFamily::new(n_params, move |p| {
        let mut h = eval_mats[0].clone();
        for (i, c) in p.coords.iter().enumerate() {
            h += &eval_mats[i + 1] * Complex64::new(*c, 0.0);
        }
        Ok(h)
    })
    .with_derivative(move |_p, axis| Ok(deriv_mats[axis + 1].clone()))
}
