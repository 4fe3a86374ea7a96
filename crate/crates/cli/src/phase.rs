//! Geometric-phase utility: line and surface integrals around built-in
//! family presets, with their Stokes residual.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use oqgt_core::{
    geometric_phase_line, geometric_phase_surface, rectangle_loop, CMat, CVec, ParameterPoint,
    ReferenceState, SurfaceRect, UnitaryFamily,
};
use oqgt_xy::{mode_ground_state, mode_unitary, XYParams};

use crate::error::CliError;
use crate::numfmt::fmt_f64;

/// Derivative step for the preset families. Both presets are smooth
/// rotations with order-one derivatives, so a central difference at this
/// width carries ~1e-10 truncation error, far below the 1e-4 quadrature
/// budget of the default meshes.
const PRESET_FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Spin-1/2 coherent state dragged around a cone of fixed polar
    /// angle: the loop encloses the spherical cap.
    Cone,
    /// One momentum mode of the rotated XY chain, looped over the
    /// rotation angle and a small field interval, with the reference
    /// state frozen at the base point.
    XyMode,
}

fn default_boundary_a() -> usize {
    900
}
fn default_boundary_b() -> usize {
    100
}
fn default_mesh() -> usize {
    200
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    /// Polar angle of the cone in radians.
    pub theta: f64,
}

impl Default for ConeSpec {
    fn default() -> Self {
        ConeSpec {
            theta: std::f64::consts::FRAC_PI_3,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XyModeSpec {
    pub k: usize,
    pub n_spins: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub t: f64,
    /// Field-interval width paired with the rotation angle to span a
    /// genuine 2-surface.
    pub lambda_span: f64,
    /// Rotation-angle extent of the loop.
    pub phi_span: f64,
}

impl Default for XyModeSpec {
    fn default() -> Self {
        XyModeSpec {
            k: 1,
            n_spins: 5,
            lambda: 0.8,
            gamma: 0.6,
            t: 1.5,
            lambda_span: 0.2,
            phi_span: std::f64::consts::TAU,
        }
    }
}

/// TOML layout of a phase job: a preset plus loop and mesh resolution.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseConfig {
    pub preset: Preset,
    /// Traverse the loop the other way round; both integrals negate.
    #[serde(default)]
    pub reversed: bool,
    /// Polyline segments along the loop's two edge directions.
    #[serde(default = "default_boundary_a")]
    pub boundary_a: usize,
    #[serde(default = "default_boundary_b")]
    pub boundary_b: usize,
    /// Midpoint-quadrature cells of the surface integral.
    #[serde(default = "default_mesh")]
    pub mesh_a: usize,
    #[serde(default = "default_mesh")]
    pub mesh_b: usize,
    #[serde(default)]
    pub cone: Option<ConeSpec>,
    #[serde(default)]
    pub xy_mode: Option<XyModeSpec>,
}

impl PhaseConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }
}

/// A preset instantiated into the pieces the integrators need. Also
/// used by the validation suites, which drive the same presets at their
/// own resolutions.
pub(crate) struct PhaseJob {
    pub(crate) family: UnitaryFamily,
    pub(crate) rho: ReferenceState,
    pub(crate) rect: SurfaceRect,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `U(theta, phi) = R_z(phi) R_x(theta)` acting on the up state: the
/// standard coherent-state family whose loop at fixed `theta` encloses
/// the cap of solid angle `2 pi (1 - cos theta)`.
pub(crate) fn cone_job(spec: &ConeSpec) -> Result<PhaseJob, CliError> {
    if !spec.theta.is_finite() {
        return Err(CliError::usage("cone theta must be finite"));
    }
    let family = UnitaryFamily::new_finite_difference(2, PRESET_FD_STEP, |p| {
        let (th, ph) = (p.coords[0], p.coords[1]);
        let (ct, st) = ((0.5 * th).cos(), (0.5 * th).sin());
        let rx = CMat::from_row_slice(
            2,
            2,
            &[c(ct, 0.0), c(0.0, -st), c(0.0, -st), c(ct, 0.0)],
        );
        let rz = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::from_polar(1.0, -0.5 * ph),
                c(0.0, 0.0),
                c(0.0, 0.0),
                Complex64::from_polar(1.0, 0.5 * ph),
            ],
        );
        Ok(rz * rx)
    });
    let rho = ReferenceState::from_pure(&CVec::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0)]))?;
    let rect = SurfaceRect {
        base: ParameterPoint::new(vec![0.0, 0.0]),
        // a = phi (axis 1), b = theta (axis 0): counterclockwise in
        // (phi, theta) carries the positive solid-angle orientation
        axis_a: 1,
        axis_b: 0,
        a_range: (0.0, std::f64::consts::TAU),
        b_range: (0.0, spec.theta),
        na: 0, // filled from the config by run_phase
        nb: 0,
    };
    Ok(PhaseJob { family, rho, rect })
}

/// Mode-`k` evolution over `(lambda, gamma, phi)` at fixed time, with
/// the reference state frozen at the rectangle's base corner.
fn xy_mode_job(spec: &XyModeSpec) -> Result<PhaseJob, CliError> {
    let base = XYParams::new(spec.lambda, spec.gamma, 0.0, spec.t, spec.n_spins)?;
    if spec.k == 0 {
        return Err(CliError::usage(
            "mode k = 0 carries no phase; pick a mode in 1..=(n_spins-1)/2",
        ));
    }
    // surface-evaluating the ground state would make the connection
    // gauge-dependent; freeze it where the loop starts
    let psi = mode_ground_state(spec.k, &base)?;
    let rho = ReferenceState::from_pure(&psi)?;
    let (k, n_spins, t) = (spec.k, spec.n_spins, spec.t);
    let family = UnitaryFamily::new_finite_difference(3, PRESET_FD_STEP, move |p| {
        let xp = XYParams {
            lambda: p.coords[0],
            gamma: p.coords[1],
            phi: p.coords[2],
            t,
            n_spins,
        };
        mode_unitary(k, &xp).map_err(|e| oqgt_core::CoreError::invalid("xy mode", e.to_string()))
    });
    let rect = SurfaceRect {
        base: ParameterPoint::new(vec![spec.lambda, spec.gamma, 0.0]),
        // a = phi (axis 2), b = lambda (axis 0)
        axis_a: 2,
        axis_b: 0,
        a_range: (0.0, spec.phi_span),
        b_range: (spec.lambda, spec.lambda + spec.lambda_span),
        na: 0,
        nb: 0,
    };
    Ok(PhaseJob { family, rho, rect })
}

/// Run the configured phase job and render its report.
///
/// A rectangle with a zero-extent edge encloses nothing; both integrals
/// are reported as exact zeros without quadrature, which would otherwise
/// leave cancellation dust in the line value.
pub fn phase_report(cfg: &PhaseConfig) -> Result<String, CliError> {
    if cfg.boundary_a < 1 || cfg.boundary_b < 1 || cfg.mesh_a < 1 || cfg.mesh_b < 1 {
        return Err(CliError::usage(
            "boundary and mesh counts must be at least 1",
        ));
    }
    let (name, mut job) = match cfg.preset {
        Preset::Cone => ("cone", cone_job(&cfg.cone.unwrap_or_default())?),
        Preset::XyMode => ("xy-mode", xy_mode_job(&cfg.xy_mode.unwrap_or_default())?),
    };

    let mut out = String::new();
    let _ = writeln!(out, "preset={name}");

    let (a0, a1) = job.rect.a_range;
    let (b0, b1) = job.rect.b_range;
    if a1 - a0 == 0.0 || b1 - b0 == 0.0 {
        let _ = writeln!(out, "line_phase=0");
        let _ = writeln!(out, "surface_phase=0");
        let _ = writeln!(out, "stokes_residual=0");
        return Ok(out);
    }

    job.rect.na = cfg.mesh_a;
    job.rect.nb = cfg.mesh_b;
    let (mut boundary_a, mut boundary_b) = (cfg.boundary_a, cfg.boundary_b);
    if cfg.reversed {
        // swapping the rectangle's two axes flips its orientation, and
        // with it both the boundary loop and the surface element
        let r = &mut job.rect;
        std::mem::swap(&mut r.axis_a, &mut r.axis_b);
        std::mem::swap(&mut r.a_range, &mut r.b_range);
        std::mem::swap(&mut r.na, &mut r.nb);
        std::mem::swap(&mut boundary_a, &mut boundary_b);
    }

    let path = rectangle_loop(&job.rect, boundary_a, boundary_b)?;
    let line = geometric_phase_line(&job.family, &job.rho, &path)?;
    let surface = geometric_phase_surface(&job.family, &job.rho, &job.rect)?;

    let _ = writeln!(out, "line_phase={}", fmt_f64(line.raw));
    let _ = writeln!(out, "surface_phase={}", fmt_f64(surface.raw));
    let _ = writeln!(out, "stokes_residual={}", fmt_f64(line.raw - surface.raw));
    let _ = writeln!(out, "line_phase_principal={}", fmt_f64(line.principal));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone_cfg(theta: f64) -> PhaseConfig {
        PhaseConfig {
            preset: Preset::Cone,
            reversed: false,
            boundary_a: 300,
            boundary_b: 60,
            // 80x80 leaves ~1.3e-4 of midpoint-rule error on the wide
            // 2pi/3 cap; 160x160 brings both test angles under the gate
            mesh_a: 160,
            mesh_b: 160,
            cone: Some(ConeSpec { theta }),
            xy_mode: None,
        }
    }

    fn field(out: &str, key: &str) -> f64 {
        out.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap_or_else(|| panic!("missing {key} in {out}"))
            .parse()
            .unwrap()
    }

    #[test]
    fn cone_loop_encloses_the_spherical_cap() {
        // two angles, because pi/3 alone cannot tell pi(1 - cos theta)
        // apart from pi/2 coincidences
        for theta in [std::f64::consts::FRAC_PI_3, 2.0 * std::f64::consts::FRAC_PI_3] {
            let out = phase_report(&cone_cfg(theta)).unwrap();
            let expected = std::f64::consts::PI * (1.0 - theta.cos());
            assert!(
                (field(&out, "line_phase") - expected).abs() < 1e-4,
                "theta={theta}: {out}"
            );
            assert!(field(&out, "stokes_residual").abs() < 1e-4, "{out}");
        }
    }

    #[test]
    fn zero_area_loop_reports_exact_zeros() {
        let out = phase_report(&cone_cfg(0.0)).unwrap();
        assert!(out.contains("line_phase=0\n"), "{out}");
        assert!(out.contains("surface_phase=0\n"), "{out}");
        assert!(out.contains("stokes_residual=0\n"), "{out}");
    }

    #[test]
    fn reversal_negates_both_integrals() {
        let fwd = phase_report(&cone_cfg(1.0)).unwrap();
        let bwd = phase_report(&PhaseConfig {
            reversed: true,
            ..cone_cfg(1.0)
        })
        .unwrap();
        let f = field(&fwd, "line_phase");
        let b = field(&bwd, "line_phase");
        assert!((f + b).abs() < 1e-12, "fwd {f} bwd {b}");
        assert!(f.abs() > 0.1);
        let fs = field(&fwd, "surface_phase");
        let bs = field(&bwd, "surface_phase");
        assert!((fs + bs).abs() < 1e-12, "fwd {fs} bwd {bs}");
    }

    #[test]
    fn xy_mode_loop_obeys_stokes() {
        let cfg = PhaseConfig {
            preset: Preset::XyMode,
            reversed: false,
            boundary_a: 300,
            boundary_b: 60,
            mesh_a: 60,
            mesh_b: 40,
            cone: None,
            xy_mode: Some(XyModeSpec::default()),
        };
        let out = phase_report(&cfg).unwrap();
        let line = field(&out, "line_phase");
        assert!(line.is_finite() && line != 0.0, "{out}");
        assert!(field(&out, "stokes_residual").abs() < 1e-3, "{out}");
    }

    #[test]
    fn config_parses_from_toml_with_defaults() {
        let cfg: PhaseConfig = toml::from_str(
            r#"
            preset = "xy-mode"
            [xy_mode]
            k = 2
            n_spins = 7
            lambda = 0.5
            gamma = 0.9
            t = 2.0
            lambda_span = 0.1
            phi_span = 3.141592653589793
            "#,
        )
        .unwrap();
        assert_eq!(cfg.preset, Preset::XyMode);
        assert_eq!(cfg.boundary_a, 900);
        assert_eq!(cfg.mesh_b, 200);
        assert_eq!(cfg.xy_mode.unwrap().k, 2);

        let bad: Result<PhaseConfig, _> = toml::from_str("preset = \"torus\"");
        assert!(bad.is_err());
    }
}
