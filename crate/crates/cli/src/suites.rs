//! Validation batteries behind `oqgt validate`, shared with the
//! acceptance checks.
//!
//! Every battery folds into an [`OracleReport`] line. Reports whose name
//! starts with `finding_` are measurements published for the record
//! rather than gates: they never affect the exit status, and some of
//! them fail their nominal target by design (the file-level docs of the
//! batteries below say why).

use std::f64::consts::{FRAC_PI_3, PI};

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oqgt_core::{
    geometric_phase_line, geometric_phase_surface, loschmidt_echo_first_order, max_abs, oqgt,
    rectangle_loop, CoreError, ParameterPoint, RMat, ReferenceState, UnitaryFamily,
};
use oqgt_oracle::{
    additivity_oracle, build_xy_hamiltonian, finite_difference_chain_family, ground_state,
    matexp_oracle, ring_ground_energy, sample_anisotropy, sample_field, sample_phase_angle,
    sample_spin_count, sample_time, splitting_oracle, OracleReport,
};
use oqgt_xy::{chain_oqgt, mode_ground_state, mode_oqgt, mode_unitary, XYParams};

use crate::echo::dense_echo_exact;
use crate::error::CliError;
use crate::phase::{cone_job, ConeSpec};

/// Reports with this name prefix are informational measurements; the
/// validate exit status ignores them.
pub const FINDING_PREFIX: &str = "finding_";

/// Trials in the closed-form vs generic-path mode battery.
pub const MODE_BATTERY_SAMPLES: usize = 200;

/// Gate for the mode battery. The generic path differentiates the 2x2
/// evolution by central differences at [`GENERIC_PATH_STEP`]; its
/// truncation error grows with the cube of the evolution time and stays
/// below a few 1e-9 out to t = 20, so 1e-8 passes honestly without
/// hiding a formula error (any wrong closed-form coefficient shows up
/// at percent scale).
pub const MODE_BATTERY_TOL: f64 = 1e-8;

/// Central-difference step for generic-path families. Second-order
/// truncation at 1e-6 meets f64 rounding noise near 1e-10 for the
/// order-one-norm unitaries used here; smaller steps amplify rounding,
/// larger ones leak truncation into the 1e-8 gates.
pub const GENERIC_PATH_STEP: f64 = 1e-6;

/// Gate for dense-ring vs momentum-formula tensors at matched points.
/// On the parity sector where the two constructions share a ground
/// state the measured gap is ~1e-10; 1e-6 leaves room for the
/// finite-difference noise of the dense path while still catching any
/// structural disagreement.
pub const CHAIN_TENSOR_TOL: f64 = 1e-6;

/// Gate for the min-of-sectors ground-energy formula against dense
/// diagonalization. Both sides are assembled from sums of order-one
/// terms; agreement is limited only by rounding.
pub const GROUND_ENERGY_TOL: f64 = 1e-10;

/// Gate for |exact - first-order| echo agreement at displacement 1e-3
/// on the 7-spin ring. The residual is cubic in the displacement with
/// an order-ten coefficient, a few 1e-9 here; 1e-7 is an order-of-
/// magnitude cushion that still fails if the quadratic coefficient is
/// off by as little as one part in ten.
pub const ECHO_CONSISTENCY_TOL: f64 = 1e-7;

/// Gate for the cone-loop line integral against the closed-form cap
/// phase, dominated by trapezoid quadrature at the battery's 2000
/// boundary segments.
pub const CONE_PHASE_TOL: f64 = 1e-4;

/// Gate for loop reversal antisymmetry: the same numbers are summed in
/// reverse order, so only rounding separates the two runs.
pub const REVERSAL_TOL: f64 = 1e-10;

/// Gate for the sign-flip findings. The probe value is the distance
/// from an actual flip (zero when the two samples straddle zero), so
/// any genuinely sign-definite pair fails by a macroscopic margin.
pub const SIGN_FLIP_TOL: f64 = 1e-12;

/// Which batteries `oqgt validate` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Core,
    Xy,
    Oracle,
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<OracleReport>, CliError> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::All | Suite::Core) {
        reports.extend(core_reports(seed)?);
    }
    if matches!(suite, Suite::All | Suite::Xy) {
        reports.extend(xy_reports(seed)?);
    }
    if matches!(suite, Suite::All | Suite::Oracle) {
        reports.extend(oracle_reports(seed));
    }
    Ok(reports)
}

/// Names of the hard-gate reports that failed. Findings never appear.
pub fn gate_failures(reports: &[OracleReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.name.starts_with(FINDING_PREFIX) && !r.passed)
        .map(|r| r.name.clone())
        .collect()
}

/// The randomized cross-implementation batteries.
pub fn oracle_reports(seed: u64) -> Vec<OracleReport> {
    vec![
        matexp_oracle(seed),
        additivity_oracle(seed),
        splitting_oracle(seed),
    ]
}

/// Deterministic geometry batteries on the two-level cone family.
pub fn core_reports(seed: u64) -> Result<Vec<OracleReport>, CliError> {
    // line integral vs the closed-form cap phase, two cone angles (one
    // angle alone can masquerade as a lucky coincidence)
    let mut line_worst = 0.0f64;
    for theta in [FRAC_PI_3, 2.0 * FRAC_PI_3] {
        let mut job = cone_job(&ConeSpec { theta })?;
        job.rect.na = 1;
        job.rect.nb = 1;
        let path = rectangle_loop(&job.rect, 900, 100)?;
        let line = geometric_phase_line(&job.family, &job.rho, &path)?;
        line_worst = line_worst.max((line.raw - PI * (1.0 - theta.cos())).abs());
    }

    // Stokes: boundary line integral vs curvature flux over the cap
    let mut job = cone_job(&ConeSpec { theta: FRAC_PI_3 })?;
    job.rect.na = 200;
    job.rect.nb = 200;
    let path = rectangle_loop(&job.rect, 900, 100)?;
    let line = geometric_phase_line(&job.family, &job.rho, &path)?;
    let surface = geometric_phase_surface(&job.family, &job.rho, &job.rect)?;
    let residual = (line.raw - surface.raw).abs();

    // traversing the same polyline backwards must negate the phase
    let mut job = cone_job(&ConeSpec { theta: 1.0 })?;
    job.rect.na = 1;
    job.rect.nb = 1;
    let fwd_path = rectangle_loop(&job.rect, 120, 40)?;
    let fwd = geometric_phase_line(&job.family, &job.rho, &fwd_path)?;
    let bwd = geometric_phase_line(&job.family, &job.rho, &fwd_path.reversed())?;
    let reversal = (fwd.raw + bwd.raw).abs();

    Ok(vec![
        OracleReport::new("cone_phase_line", seed, 2, line_worst, CONE_PHASE_TOL),
        OracleReport::new(
            "cone_stokes_residual",
            seed,
            1,
            residual,
            oqgt_core::tol::STOKES_TOL,
        ),
        OracleReport::new("phase_reversal_antisymmetry", seed, 1, reversal, REVERSAL_TOL),
    ])
}

/// Chain-level batteries: per-mode closed forms, ground-energy sectors,
/// dense-ring correspondence, echo truncation, and the curvature-sign
/// findings.
///
/// Two reports here are findings, not gates. The dense five-spin ring at
/// `lambda = 2, gamma = 1` sits on the parity sector the momentum
/// construction does not describe, so `finding_chain_boundary_point`
/// reports an order-one gap by design. And the measured
/// `lambda`-`phi` curvature component does not change sign across the
/// critical field, so `finding_curvature_sign_lambda_phi` publishes how
/// far from a flip the measured pair is; README.md carries the analysis.
pub fn xy_reports(seed: u64) -> Result<Vec<OracleReport>, CliError> {
    let mut reports = vec![
        mode_battery(seed, MODE_BATTERY_SAMPLES)?,
        ground_energy_report(seed)?,
    ];

    // a point on the shared parity sector: both paths see the same state
    let bulk = chain_comparison(5, 0.5, 0.8, 1.2, 2.0)?;
    reports.push(OracleReport::new(
        "chain_tensor_lg_block",
        seed,
        1,
        bulk.lg_block_gap,
        CHAIN_TENSOR_TOL,
    ));
    reports.push(OracleReport::new(
        "chain_tensor_full",
        seed,
        1,
        bulk.full_gap,
        CHAIN_TENSOR_TOL,
    ));

    reports.push(chain_echo_report(seed)?);

    let boundary = chain_comparison(5, 2.0, 1.0, 0.3, 1.0)?;
    reports.push(OracleReport::new(
        "finding_chain_boundary_point",
        seed,
        1,
        boundary.full_gap,
        CHAIN_TENSOR_TOL,
    ));

    let signs = curvature_sign_probe()?;
    reports.push(OracleReport::new(
        "finding_curvature_sign_lambda_phi",
        seed,
        2,
        flip_gap(signs.lambda_phi.0, signs.lambda_phi.1),
        SIGN_FLIP_TOL,
    ));
    reports.push(OracleReport::new(
        "finding_curvature_sign_gamma_phi",
        seed,
        2,
        flip_gap(signs.gamma_phi.0, signs.gamma_phi.1),
        SIGN_FLIP_TOL,
    ));
    Ok(reports)
}

/// Generic-path family of one momentum mode: the explicit 2x2 evolution
/// differentiated by central differences, no closed-form tensor pieces.
fn mode_family(k: usize, n_spins: usize, t: f64) -> UnitaryFamily {
    UnitaryFamily::new_finite_difference(3, GENERIC_PATH_STEP, move |p| {
        let xp = XYParams {
            lambda: p.coords[0],
            gamma: p.coords[1],
            phi: p.coords[2],
            t,
            n_spins,
        };
        mode_unitary(k, &xp).map_err(|e| CoreError::invalid("xy mode", e.to_string()))
    })
}

/// Closed-form mode tensor vs the generic finite-difference path at
/// seeded random parameters, spin counts, and mode indices.
pub fn mode_battery(seed: u64, samples: usize) -> Result<OracleReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let lambda = sample_field(&mut rng);
        let gamma = sample_anisotropy(&mut rng);
        let phi = sample_phase_angle(&mut rng);
        let t = sample_time(&mut rng);
        let n_spins = sample_spin_count(&mut rng, 5, 101);
        let p = XYParams::new(lambda, gamma, phi, t, n_spins)?;
        let k = rng.gen_range(1..=p.mode_count());

        let closed = mode_oqgt(k, &p)?;
        let family = mode_family(k, n_spins, t);
        let rho = ReferenceState::from_pure(&mode_ground_state(k, &p)?)?;
        let point = ParameterPoint::with_time(vec![lambda, gamma, phi], t);
        let generic = oqgt(&family, &rho, &point)?;
        worst = worst.max(max_abs(&(generic.q() - &closed.q)));
    }
    Ok(OracleReport::new(
        "mode_battery",
        seed,
        samples,
        worst,
        MODE_BATTERY_TOL,
    ))
}

/// Min-of-sectors closed form vs dense ground energy. The dense side is
/// built at a nonzero rotation angle on purpose: the rotation is a
/// unitary conjugation, so the spectrum must not move.
fn ground_energy_report(seed: u64) -> Result<OracleReport, CliError> {
    let points: [(usize, f64, f64); 5] = [
        (5, 0.5, 1.0),
        (5, 2.0, 1.0),
        (5, 0.8, 0.5),
        (7, 1.5, 1.0),
        (9, 0.5, 0.8),
    ];
    let mut worst = 0.0f64;
    for (n, lambda, gamma) in points {
        let h = build_xy_hamiltonian(n, lambda, gamma, 0.7)?;
        let dense = ground_state(&h)?.energy;
        let formula = ring_ground_energy(n, lambda, gamma)?;
        worst = worst.max((dense - formula).abs());
    }
    Ok(OracleReport::new(
        "ground_energy_sectors",
        seed,
        points.len(),
        worst,
        GROUND_ENERGY_TOL,
    ))
}

/// Dense generic-path tensor vs the momentum-formula tensor at one
/// parameter point.
#[derive(Debug, Clone, Copy)]
pub struct ChainComparison {
    /// Worst gap over the four field-anisotropy components, which are
    /// convention-free.
    pub lg_block_gap: f64,
    /// Worst gap over all nine components after the rotation-convention
    /// bridge on the rotation axis.
    pub full_gap: f64,
}

/// Compare the dense ring's finite-difference tensor against the
/// momentum-space closed form at one point.
///
/// The dense ring advances a momentum pair's occupation by 0 or 2 under
/// the rotation, while the momentum construction's half-angle rotation
/// advances its pseudo-spin by half that, so the momentum-side rotation
/// generator carries half the dense one. The bridge doubles the
/// momentum tensor's rotation row and column (the diagonal rotation
/// entry picks up the factor twice) before comparing.
pub fn chain_comparison(
    n_spins: usize,
    lambda: f64,
    gamma: f64,
    phi: f64,
    t: f64,
) -> Result<ChainComparison, CliError> {
    let family = finite_difference_chain_family(n_spins, t, GENERIC_PATH_STEP)?;
    let h = build_xy_hamiltonian(n_spins, lambda, gamma, phi)?;
    let rho = ReferenceState::from_pure(&ground_state(&h)?.vector)?;
    let point = ParameterPoint::with_time(vec![lambda, gamma, phi], t);
    let dense = oqgt(&family, &rho, &point)?;

    let p = XYParams {
        lambda,
        gamma,
        phi,
        t,
        n_spins,
    };
    let mode_sum = chain_oqgt(&p)?;

    let mut lg_block_gap = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            lg_block_gap = lg_block_gap.max((dense.q()[(i, j)] - mode_sum.q()[(i, j)]).norm());
        }
    }

    let mut bridged = mode_sum.q().clone();
    for i in 0..3 {
        bridged[(i, 2)] *= 2.0;
        bridged[(2, i)] *= 2.0;
    }
    let full_gap = max_abs(&(dense.q() - &bridged));

    Ok(ChainComparison {
        lg_block_gap,
        full_gap,
    })
}

/// Metric of the dense generic-path family at one point, for echo
/// cross-checks that must not assume the momentum construction.
pub fn dense_chain_metric(
    n_spins: usize,
    lambda: f64,
    gamma: f64,
    phi: f64,
    t: f64,
) -> Result<RMat, CliError> {
    let family = finite_difference_chain_family(n_spins, t, GENERIC_PATH_STEP)?;
    let h = build_xy_hamiltonian(n_spins, lambda, gamma, phi)?;
    let rho = ReferenceState::from_pure(&ground_state(&h)?.vector)?;
    let point = ParameterPoint::with_time(vec![lambda, gamma, phi], t);
    Ok(oqgt(&family, &rho, &point)?.metric())
}

/// |exact - first-order| echo gap with the first order taken from the
/// momentum-formula chain metric.
pub fn chain_echo_gap(
    n_spins: usize,
    lambda: f64,
    gamma: f64,
    phi: f64,
    t: f64,
    deltas: [f64; 3],
) -> Result<f64, CliError> {
    let p = XYParams {
        lambda,
        gamma,
        phi,
        t,
        n_spins,
    };
    let g = chain_oqgt(&p)?.metric();
    let first = loschmidt_echo_first_order(&g, &deltas)?;
    let exact = dense_echo_exact(n_spins, [lambda, gamma, phi], deltas, t)?;
    Ok((exact - first.value).abs())
}

fn chain_echo_report(seed: u64) -> Result<OracleReport, CliError> {
    let gap = chain_echo_gap(7, 0.5, 0.8, 0.3, 2.0, [1e-3, 0.0, 0.0])?;
    Ok(OracleReport::new(
        "chain_echo_consistency",
        seed,
        1,
        gap,
        ECHO_CONSISTENCY_TOL,
    ))
}

/// The two imaginary tensor components at matched points either side of
/// the critical field, long after the quench.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSigns {
    /// `Im Q` on the (field, rotation) plane at `lambda` = 0.95 and 1.05.
    pub lambda_phi: (f64, f64),
    /// `Im Q` on the (anisotropy, rotation) plane at the same points.
    pub gamma_phi: (f64, f64),
}

/// Probe the curvature components at `N = 1001`, `gamma = 1`, `t = 20`.
pub fn curvature_sign_probe() -> Result<CurvatureSigns, CliError> {
    let at = |lambda: f64| -> Result<(f64, f64), CliError> {
        let p = XYParams {
            lambda,
            gamma: 1.0,
            phi: 0.0,
            t: 20.0,
            n_spins: 1001,
        };
        let q = chain_oqgt(&p)?;
        Ok((q.q()[(0, 2)].im, q.q()[(1, 2)].im))
    };
    let (lp_below, gp_below) = at(0.95)?;
    let (lp_above, gp_above) = at(1.05)?;
    Ok(CurvatureSigns {
        lambda_phi: (lp_below, lp_above),
        gamma_phi: (gp_below, gp_above),
    })
}

/// Distance from a sign flip: zero when the pair straddles (or touches)
/// zero, otherwise the smaller magnitude.
pub fn flip_gap(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else {
        a.abs().min(b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn findings_never_gate_but_hard_failures_do() {
        let reports = vec![
            OracleReport::new("solid_check", 1, 10, 1e-12, 1e-10),
            OracleReport::new("finding_known_gap", 1, 1, 3.6, 1e-6),
        ];
        assert!(gate_failures(&reports).is_empty());

        // the same failure without the finding prefix must trip the gate,
        // which is what a mutated constant upstream would produce
        let mutated = vec![OracleReport::new("solid_check", 1, 10, 3.6e-2, 1e-10)];
        assert_eq!(gate_failures(&mutated), vec!["solid_check".to_string()]);
    }

    #[test]
    fn mode_battery_is_reproducible_and_inside_its_gate() {
        let a = mode_battery(3, 25).unwrap();
        let b = mode_battery(3, 25).unwrap();
        assert!(a.passed, "{a}");
        assert_eq!(a.max_abs_error.to_bits(), b.max_abs_error.to_bits());
        let c = mode_battery(4, 25).unwrap();
        assert_ne!(a.max_abs_error.to_bits(), c.max_abs_error.to_bits());
    }

    #[test]
    fn shared_sector_point_matches_to_rounding() {
        let cmp = chain_comparison(5, 0.5, 0.8, 1.2, 2.0).unwrap();
        assert!(cmp.lg_block_gap <= 1e-8, "lg block {}", cmp.lg_block_gap);
        assert!(cmp.full_gap <= 1e-8, "full {}", cmp.full_gap);
    }

    #[test]
    fn other_sector_point_disagrees_by_order_one() {
        let cmp = chain_comparison(5, 2.0, 1.0, 0.3, 1.0).unwrap();
        assert!(
            cmp.full_gap > 1e-3,
            "expected a sector mismatch, got {}",
            cmp.full_gap
        );
    }

    #[test]
    fn ground_energy_formula_matches_dense_diagonalization() {
        let r = ground_energy_report(0).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn echo_first_order_tracks_the_dense_ring() {
        let gap = chain_echo_gap(7, 0.5, 0.8, 0.3, 2.0, [1e-3, 0.0, 0.0]).unwrap();
        assert!(gap <= ECHO_CONSISTENCY_TOL, "gap {gap}");
    }

    #[test]
    fn cone_batteries_pass() {
        let reports = core_reports(0).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn lambda_phi_curvature_is_sign_definite_across_the_transition() {
        let signs = curvature_sign_probe().unwrap();
        let (a, b) = signs.lambda_phi;
        assert!(
            flip_gap(a, b) > SIGN_FLIP_TOL,
            "a sign flip appeared at ({a}, {b}); README analysis is stale"
        );
    }

    #[test]
    fn flip_gap_arithmetic() {
        assert_eq!(flip_gap(-1.0, 2.0), 0.0);
        assert_eq!(flip_gap(0.0, 2.0), 0.0);
        assert_eq!(flip_gap(3.0, 2.0), 2.0);
        assert_eq!(flip_gap(-3.0, -0.5), 0.5);
    }

    #[test]
    fn suite_selection_composes() {
        let oracle_only = run_suite(Suite::Oracle, 42).unwrap();
        assert_eq!(oracle_only.len(), 3);
        assert!(oracle_only.iter().all(|r| r.passed));
    }
}
