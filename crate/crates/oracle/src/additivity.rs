use std::sync::Arc;

use oqgt_core::{
    kron, max_abs, oqgt, time_evolution_family, CMat, ParameterPoint, ReferenceState,
    UnitaryFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::OracleReport;
use crate::sampling::{random_density, random_linear_pencil};

/// Gate for the additivity sweep. The composed and direct tensors are both
/// built from exact derivatives, so they agree to rounding; 1e-10 leaves two
/// orders of headroom over the worst accumulation seen in practice.
pub const ADDITIVITY_TOL: f64 = 1e-10;

const ADDITIVITY_SAMPLES: usize = 50;

/// Tensor product of two unitary families over the same parameter space,
/// with the exact product-rule derivative.
fn product_family(a: UnitaryFamily, b: UnitaryFamily) -> UnitaryFamily {
    let dim = a.param_dim();
    assert_eq!(dim, b.param_dim(), "factors must share a parameter space");
    let a = Arc::new(a);
    let b = Arc::new(b);
    let (ae, be) = (Arc::clone(&a), Arc::clone(&b));
    UnitaryFamily::new_analytic(
        dim,
        move |p| Ok(kron(&ae.eval(p)?, &be.eval(p)?)),
        move |p, axis| {
            let ua = a.eval(p)?;
            let ub = b.eval(p)?;
            let da = a.derivative(p, axis)?;
            let db = b.derivative(p, axis)?;
            Ok(kron(&da, &ub) + kron(&ua, &db))
        },
    )
}

/// Checks that the tensor of a product family with a product reference state
/// is the sum of the factor tensors.
///
/// Each trial draws two independent single-qubit evolution families (random
/// linear operator pencils exponentiated at a random time), random factor
/// states, and a random shared parameter point, then compares the directly
/// assembled 4-dimensional tensor against the sum of the two 2-dimensional
/// ones entrywise.
pub fn additivity_oracle(seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..ADDITIVITY_SAMPLES {
        let t = rng.gen_range(0.2..3.0);
        let ham_a = Arc::new(random_linear_pencil(&mut rng, 2, 2));
        let ham_b = Arc::new(random_linear_pencil(&mut rng, 2, 2));
        let rho_a = random_density(&mut rng, 2);
        let rho_b = random_density(&mut rng, 2);
        let p = ParameterPoint::with_time(
            vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
            t,
        );

        let fam_a = time_evolution_family(ham_a, t);
        let fam_b = time_evolution_family(ham_b, t);
        let q_a = tensor_of(&fam_a, &rho_a, &p);
        let q_b = tensor_of(&fam_b, &rho_b, &p);

        let joint = product_family(fam_a, fam_b);
        let q_ab = tensor_of(&joint, &kron(&rho_a, &rho_b), &p);

        worst = worst.max(max_abs(&(q_ab - (q_a + q_b))));
    }
    OracleReport::new("additivity", seed, ADDITIVITY_SAMPLES, worst, ADDITIVITY_TOL)
}

fn tensor_of(family: &UnitaryFamily, rho: &CMat, p: &ParameterPoint) -> CMat {
    let state = ReferenceState::new(rho.clone())
        .expect("mixture-constructed reference states are valid densities");
    oqgt(family, &state, p)
        .expect("exact-derivative families on gapless-free pencils evaluate cleanly")
        .q()
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use oqgt_core::CoreError;

    #[test]
    fn report_passes_and_reproduces_bit_identically() {
        let a = additivity_oracle(42);
        assert!(a.passed, "{a}");
        assert_eq!(a.samples, 50);
        let b = additivity_oracle(42);
        assert_eq!(a.max_abs_error.to_bits(), b.max_abs_error.to_bits());
        assert_ne!(
            additivity_oracle(43).max_abs_error.to_bits(),
            a.max_abs_error.to_bits()
        );
    }

    #[test]
    fn identical_factors_double_the_tensor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ham = Arc::new(random_linear_pencil(&mut rng, 2, 2));
        let rho = random_density(&mut rng, 2);
        let p = ParameterPoint::new(vec![0.4, -0.6]);
        let t = 1.7;

        let single = tensor_of(&time_evolution_family(Arc::clone(&ham), t), &rho, &p);
        let joint = product_family(
            time_evolution_family(Arc::clone(&ham), t),
            time_evolution_family(ham, t),
        );
        let double = tensor_of(&joint, &kron(&rho, &rho), &p);
        let gap = max_abs(&(double - &single * Complex64::new(2.0, 0.0)));
        assert!(gap <= 1e-10, "doubling defect {gap}");
    }

    #[test]
    fn a_constant_factor_contributes_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ham = Arc::new(random_linear_pencil(&mut rng, 2, 2));
        let rho = random_density(&mut rng, 2);
        let rho_other = random_density(&mut rng, 2);
        let p = ParameterPoint::new(vec![-0.2, 0.9]);
        let t = 0.8;

        // A parameter-independent factor: fixed unitary, zero derivative.
        let fixed = oqgt_core::expm_hermitian(
            &crate::sampling::random_hermitian(&mut rng, 2),
            Complex64::new(0.0, -1.3),
        )
        .unwrap();
        let constant = UnitaryFamily::new_analytic(
            2,
            move |_p| Ok(fixed.clone()),
            |_p, _axis| Ok(CMat::zeros(2, 2)),
        );

        let moving = time_evolution_family(ham, t);
        let alone = tensor_of(&moving, &rho, &p);
        let joint = product_family(moving, constant);
        let with_spectator = tensor_of(&joint, &kron(&rho, &rho_other), &p);
        let gap = max_abs(&(with_spectator - alone));
        assert!(gap <= 1e-12, "spectator leaked {gap} into the tensor");
    }

    #[test]
    fn product_families_reject_mismatched_parameter_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let joint = product_family(
            time_evolution_family(Arc::new(random_linear_pencil(&mut rng, 2, 2)), 1.0),
            time_evolution_family(Arc::new(random_linear_pencil(&mut rng, 2, 2)), 1.0),
        );
        let bad = ParameterPoint::new(vec![0.1]);
        assert!(matches!(
            joint.eval(&bad),
            Err(CoreError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }
}
