use std::sync::Arc;

use oqgt_core::{
    eigh, max_abs, oqgt, spectral_split, time_evolution_family, CMat, ParameterPoint,
    ReferenceState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::OracleReport;
use crate::sampling::random_linear_pencil;

/// Shared budget the four splitting sub-checks are folded into. The
/// recombination and quadratic-scaling checks carry it directly; the
/// realness and pure-state checks have native 1e-10 gates and enter scaled
/// by the tolerance ratio, so a single report line covers all four.
pub const SPLITTING_TOL: f64 = 1e-8;

/// Native gate for the two exact-cancellation checks (imaginary part of the
/// secular term, secular coefficient of a pure eigenstate).
pub const SPLITTING_EXACT_TOL: f64 = 1e-10;

const SPLITTING_SAMPLES: usize = 50;

/// Smallest spectral gap accepted when drawing trial Hamiltonians. The
/// split differentiates a gauge-fixed eigenframe whose truncation error
/// grows with the inverse gap; near 1e-3 the 1e-5 stencil was measured to
/// leak a few 1e-8 into the recombination check, so draws below a few 1e-2
/// are treated as a conditioning problem and resampled, not a correctness
/// signal.
const MIN_TRIAL_GAP: f64 = 2e-2;

/// Checks the secular/oscillatory decomposition of the evolution-family
/// tensor on random gapped 4-level pencils with stationary mixed states.
///
/// Per trial, with `t` uniform in `[0.1, 5]`:
/// 1. `Q1 + Q2` matches the directly assembled tensor (budget 1e-8,
///    relative to the tensor magnitude floored at one: the secular part
///    grows as `t^2` and drags the achievable absolute agreement with it),
/// 2. `Q1` is real (budget 1e-10),
/// 3. `Q1(2t) = 4 Q1(t)` relatively (budget 1e-8),
/// 4. the secular coefficient vanishes for a pure eigenstate (budget 1e-10).
///
/// The reported `max_abs_error` is the worst sub-check deviation after
/// rescaling the 1e-10 checks into the common 1e-8 budget; `passed` is
/// therefore true exactly when every sub-check passed its own gate.
pub fn splitting_oracle(seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exact_rescale = SPLITTING_TOL / SPLITTING_EXACT_TOL;
    let mut worst = 0.0f64;
    for _ in 0..SPLITTING_SAMPLES {
        // Draw until the spectrum at the base point is comfortably gapped.
        let (ham, p, eig) = loop {
            let ham = random_linear_pencil(&mut rng, 4, 2);
            let p = ParameterPoint::new(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let h = ham.eval(&p).expect("linear pencils evaluate everywhere");
            let eig = eigh(&h).expect("pencil values are Hermitian by construction");
            let gapped = eig.min_gap().map_or(false, |(_, g)| g > MIN_TRIAL_GAP);
            if gapped {
                break (ham, p, eig);
            }
        };
        let t = rng.gen_range(0.1..5.0);

        // Stationary mixed state: random weights, none negligible, in the
        // eigenbasis of H(p).
        let dim = eig.values.len();
        let mut weights: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut rho = CMat::zeros(dim, dim);
        for (i, w) in weights.iter().enumerate() {
            let v = eig.vectors.column(i);
            rho += (v * v.adjoint()) * num_complex::Complex64::new(*w, 0.0);
        }
        let state = ReferenceState::new(rho)
            .expect("eigenbasis mixtures with normalized weights are densities");

        let ham = Arc::new(ham);
        let split = spectral_split(&ham, &state, &p, t)
            .expect("gapped pencils with stationary states split cleanly");
        let split_double = spectral_split(&ham, &state, &p, 2.0 * t)
            .expect("gapped pencils with stationary states split cleanly");
        let direct = oqgt(
            &time_evolution_family(Arc::clone(&ham), t),
            &state,
            &ParameterPoint::with_time(p.coords.clone(), t),
        )
        .expect("evolution families of gapped pencils evaluate cleanly");

        // The secular part grows as t^2, so raw entrywise gaps scale with
        // the tensor itself; compare relative to the tensor's magnitude,
        // floored at one so small tensors are still held to the absolute
        // budget.
        let recombine =
            max_abs(&(split.total() - direct.q())) / max_abs(direct.q()).max(1.0);
        let imag = split
            .q1
            .iter()
            .map(|z| z.im.abs())
            .fold(0.0f64, f64::max);
        let scale_gap = max_abs(&(&split_double.q1 - &split.q1 * num_complex::Complex64::new(4.0, 0.0)));
        let scale_rel = scale_gap / max_abs(&split_double.q1).max(1.0);

        // Point-mass reference on a random eigenlevel: its secular
        // coefficient is a variance of a single value, identically zero.
        let j = rng.gen_range(0..dim);
        let v = eig.vectors.column(j);
        let pure = ReferenceState::new(v * v.adjoint())
            .expect("a normalized eigenvector projector is a density");
        let pure_split = spectral_split(&ham, &pure, &p, t)
            .expect("pure eigenstates are stationary and split cleanly");
        let pure_alpha = pure_split.alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()));

        worst = worst
            .max(recombine)
            .max(scale_rel)
            .max(imag * exact_rescale)
            .max(pure_alpha * exact_rescale);
    }
    OracleReport::new("splitting", seed, SPLITTING_SAMPLES, worst, SPLITTING_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use oqgt_core::{CVec, HamiltonianFamily};

    #[test]
    fn report_passes_and_reproduces_bit_identically() {
        let a = splitting_oracle(7);
        assert!(a.passed, "{a}");
        assert_eq!(a.samples, 50);
        let b = splitting_oracle(7);
        assert_eq!(a.max_abs_error.to_bits(), b.max_abs_error.to_bits());
        assert_ne!(
            splitting_oracle(8).max_abs_error.to_bits(),
            a.max_abs_error.to_bits()
        );
    }

    #[test]
    fn sweep_stays_inside_the_gate_across_many_seeds() {
        for seed in 0..20 {
            let report = splitting_oracle(seed);
            assert!(report.passed, "{report}");
        }
    }

    #[test]
    fn commuting_families_have_no_oscillatory_part() {
        // H(p) = (1 + p0) D + p1 D^2 with fixed diagonal D: the eigenbasis
        // never moves, so the eigenframe connection is diagonal and every
        // oscillatory coefficient vanishes.
        let d = CMat::from_diagonal(&CVec::from_vec(vec![
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.9, 0.0),
            Complex64::new(1.4, 0.0),
        ]));
        let d2 = &d * &d;
        let ham = HamiltonianFamily::new(2, move |p: &ParameterPoint| {
            Ok(&d * Complex64::new(1.0 + p.coords[0], 0.0)
                + &d2 * Complex64::new(p.coords[1], 0.0))
        });

        let weights = [0.5, 0.3, 0.2];
        let mut rho = CMat::zeros(3, 3);
        for (i, w) in weights.iter().enumerate() {
            rho[(i, i)] = Complex64::new(*w, 0.0);
        }
        let state = ReferenceState::new(rho).unwrap();
        let p = ParameterPoint::new(vec![0.4, 0.7]);
        let split = spectral_split(&ham, &state, &p, 2.3).unwrap();

        assert!(max_abs(&split.q2) <= 1e-10, "q2 = {:?}", split.q2);
        for term in &split.beta_terms {
            assert!(max_abs(&term.value) <= 1e-10);
        }
        // The whole tensor collapses onto the secular part.
        assert!(max_abs(&(split.total() - &split.q1)) <= 1e-10);
    }
}
