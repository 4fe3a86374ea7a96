//! Randomized invariants of the closed-form chain tensors.

use num_complex::Complex64;
use proptest::prelude::*;

use oqgt_core::{eigh, hermiticity_defect, max_abs, oqgt, CMat, ParameterPoint, ReferenceState, RMat, UnitaryFamily};
use oqgt_xy::{
    bogoliubov_angle, chain_oqgt, dispersion, mode_ground_state, mode_oqgt, mode_unitary,
    XYParams,
};

fn params(lambda: f64, gamma: f64, phi: f64, t: f64, n: usize) -> XYParams {
    XYParams::new(lambda, gamma, phi, t, n).unwrap()
}

/// Off-critical transverse field: stays clear of the gap closing at
/// `lambda = 1`, where the angle and tensor are undefined for the
/// `k -> 0` modes of long chains.
fn off_critical_lambda() -> impl Strategy<Value = f64> {
    prop_oneof![0.0..0.98f64, 1.02..2.0f64]
}

fn odd_spins() -> impl Strategy<Value = usize> {
    (1usize..=50).prop_map(|m| 2 * m + 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn spectrum_is_rotation_independent(
        lambda in off_critical_lambda(),
        gamma in 0.1..1.5f64,
        phi1 in -3.0..3.0f64,
        phi2 in -3.0..3.0f64,
        t in 0.0..20.0f64,
        n in odd_spins(),
        k_frac in 0.0..1.0f64,
    ) {
        let p1 = params(lambda, gamma, phi1, t, n);
        let p2 = params(lambda, gamma, phi2, t, n);
        let m = p1.mode_count();
        let k = 1 + ((m - 1) as f64 * k_frac) as usize;
        prop_assert_eq!(dispersion(k, &p1).unwrap(), dispersion(k, &p2).unwrap());
        prop_assert_eq!(bogoliubov_angle(k, &p1).unwrap(), bogoliubov_angle(k, &p2).unwrap());
        // the co-rotating reference state keeps every tensor entry
        // rotation-independent as well
        let q1 = mode_oqgt(k, &p1).unwrap().q;
        let q2 = mode_oqgt(k, &p2).unwrap().q;
        prop_assert_eq!(max_abs(&(&q1 - &q2)), 0.0);
    }

    #[test]
    fn anisotropy_reflection_flips_the_angle_and_cross_entries(
        lambda in off_critical_lambda(),
        gamma in 0.1..1.5f64,
        phi in -3.0..3.0f64,
        t in 0.0..20.0f64,
        n in odd_spins(),
        k_frac in 0.0..1.0f64,
    ) {
        let plus = params(lambda, gamma, phi, t, n);
        let minus = params(lambda, -gamma, phi, t, n);
        let m = plus.mode_count();
        let k = 1 + ((m - 1) as f64 * k_frac) as usize;

        let th_p = bogoliubov_angle(k, &plus).unwrap();
        let th_m = bogoliubov_angle(k, &minus).unwrap();
        prop_assert!((th_p + th_m).abs() <= 1e-14);

        let qp = mode_oqgt(k, &plus).unwrap().q;
        let qm = mode_oqgt(k, &minus).unwrap().q;
        for (r, col) in [(0, 0), (1, 1), (2, 2), (0, 2)] {
            prop_assert!((qp[(r, col)] - qm[(r, col)]).norm() <= 1e-14);
        }
        for (r, col) in [(0, 1), (1, 2)] {
            prop_assert!((qp[(r, col)] + qm[(r, col)]).norm() <= 1e-14);
        }
    }

    #[test]
    fn mode_tensor_is_hermitian_psd_and_envelope_bounded(
        lambda in off_critical_lambda(),
        gamma in 0.1..1.5f64,
        phi in -3.0..3.0f64,
        t in 0.0..20.0f64,
        n in odd_spins(),
        k_frac in 0.0..1.0f64,
    ) {
        let p = params(lambda, gamma, phi, t, n);
        let m = p.mode_count();
        let k = 1 + ((m - 1) as f64 * k_frac) as usize;
        let lambda_k = dispersion(k, &p).unwrap();
        let q = mode_oqgt(k, &p).unwrap().q;

        prop_assert_eq!(hermiticity_defect(&q), 0.0);
        let re = RMat::from_fn(3, 3, |r, col| q[(r, col)].re);
        let sym = (&re + re.transpose()) * 0.5;
        let eigs = eigh(&CMat::from_fn(3, 3, |r, col| Complex64::new(sym[(r, col)], 0.0)))
            .unwrap();
        for ev in &eigs.values {
            prop_assert!(*ev >= -1e-12);
        }

        prop_assert!(q[(0, 0)].re <= 4.0 / (lambda_k * lambda_k) + 1e-12);
        prop_assert!(q[(2, 2)].re <= 1.0 + 1e-12);

        // structural: purely imaginary phi rows, real lambda-gamma entry
        prop_assert_eq!(q[(0, 2)].re, 0.0);
        prop_assert_eq!(q[(1, 2)].re, 0.0);
        prop_assert_eq!(q[(0, 1)].im, 0.0);
    }

    #[test]
    fn chain_equals_the_plain_mode_sum_for_short_chains(
        lambda in off_critical_lambda(),
        gamma in 0.1..1.5f64,
        phi in -3.0..3.0f64,
        t in 0.0..20.0f64,
        m in 1usize..=7,
    ) {
        let n = 2 * m + 1;
        let p = params(lambda, gamma, phi, t, n);
        let mut plain = CMat::zeros(3, 3);
        for k in 1..=m {
            plain += &mode_oqgt(k, &p).unwrap().q;
        }
        let chain = chain_oqgt(&p).unwrap();
        prop_assert!(max_abs(&(chain.q() - &plain)) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn closed_form_tracks_the_generic_path(
        lambda in off_critical_lambda(),
        gamma in 0.1..1.5f64,
        phi in -3.0..3.0f64,
        t in 0.1..10.0f64,
        m in 2usize..=12,
        k_frac in 0.0..1.0f64,
    ) {
        let n = 2 * m + 1;
        let p = params(lambda, gamma, phi, t, n);
        let k = 1 + ((m - 1) as f64 * k_frac) as usize;

        let family = UnitaryFamily::new_finite_difference(3, 1e-6, move |pt: &ParameterPoint| {
            let xp = XYParams::new(pt.coords[0], pt.coords[1], pt.coords[2], t, n)
                .map_err(|e| oqgt_core::CoreError::Invalid {
                    context: "mode family".into(),
                    message: e.to_string(),
                })?;
            mode_unitary(k, &xp).map_err(|e| oqgt_core::CoreError::Invalid {
                context: "mode family".into(),
                message: e.to_string(),
            })
        });
        let rho = ReferenceState::from_pure(&mode_ground_state(k, &p).unwrap()).unwrap();
        let point = ParameterPoint::with_time(vec![lambda, gamma, phi], t);
        let generic = oqgt(&family, &rho, &point).unwrap();
        let closed = mode_oqgt(k, &p).unwrap();
        prop_assert!(max_abs(&(generic.q() - &closed.q)) <= 1e-8);
    }
}
