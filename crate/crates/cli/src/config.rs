//! Scan configuration: defaults, TOML file layer, flag overrides, and
//! the metadata preamble that records the effective values.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;
use crate::numfmt::fmt_f64;

/// Inclusive sampling range: `steps` evenly spaced values from `min` to
/// `max`, endpoints hit exactly. A single step collapses to `min`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn validate(&self, label: &str) -> Result<(), CliError> {
        if self.steps < 1 {
            return Err(CliError::usage(format!(
                "{label}: steps must be at least 1, got {}",
                self.steps
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(CliError::usage(format!(
                "{label}: bounds must be finite, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.min > self.max {
            return Err(CliError::usage(format!(
                "{label}: min {} exceeds max {}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    /// Value of grid node `i`. Endpoints are returned exactly as given,
    /// so grid files never show `0.30000000000000004` where the config
    /// said `0.3`.
    pub fn value_at(&self, i: usize) -> f64 {
        if i == 0 || self.steps == 1 {
            self.min
        } else if i == self.steps - 1 {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value_at(i)).collect()
    }
}

/// Full description of one grid scan over `(lambda, t)` at fixed
/// `(gamma, phi, n_spins)`.
///
/// Defaults reproduce the large reference scan: an Ising-anisotropy
/// chain of 1001 spins on a 200 x 200 grid covering the critical field.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub gamma: f64,
    pub phi: f64,
    pub n_spins: usize,
    pub lambda_range: Range,
    pub t_range: Range,
    /// Divide every tensor column by the spin count, making columns
    /// comparable across chain lengths (intensive values).
    pub rescale_by_n: bool,
    pub output_path: PathBuf,
    /// Worker count. Output bytes never depend on it.
    pub threads: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            gamma: 1.0,
            phi: 0.0,
            n_spins: 1001,
            lambda_range: Range {
                min: 0.0,
                max: 2.0,
                steps: 200,
            },
            t_range: Range {
                min: 0.0,
                max: 50.0,
                steps: 200,
            },
            rescale_by_n: true,
            output_path: PathBuf::from("scan.csv"),
            threads: 1,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.lambda_range.validate("lambda range")?;
        self.t_range.validate("t range")?;
        if self.n_spins < 3 || self.n_spins % 2 == 0 {
            return Err(CliError::usage(format!(
                "spin count must be an odd integer >= 3, got {}",
                self.n_spins
            )));
        }
        if self.threads < 1 {
            return Err(CliError::usage("threads must be at least 1"));
        }
        if !(self.gamma.is_finite() && self.phi.is_finite()) {
            return Err(CliError::usage("gamma and phi must be finite"));
        }
        Ok(())
    }

    /// Metadata lines for the top of the scan file: code version plus
    /// every effective value that shapes the data.
    ///
    /// The worker count is deliberately absent (it is echoed on stderr
    /// instead): two runs differing only in `threads` must produce
    /// byte-identical files, and recording the count would forfeit that.
    pub fn preamble_lines(&self) -> Vec<String> {
        let r = &self.lambda_range;
        let t = &self.t_range;
        vec![
            format!("# oqgt scan v{}", env!("CARGO_PKG_VERSION")),
            format!(
                "# gamma={} phi={} n_spins={} rescale_by_n={}",
                fmt_f64(self.gamma),
                fmt_f64(self.phi),
                self.n_spins,
                self.rescale_by_n
            ),
            format!(
                "# lambda_range min={} max={} steps={}",
                fmt_f64(r.min),
                fmt_f64(r.max),
                r.steps
            ),
            format!(
                "# t_range min={} max={} steps={}",
                fmt_f64(t.min),
                fmt_f64(t.max),
                t.steps
            ),
            format!("# output_path={}", self.output_path.display()),
        ]
    }
}

/// Optional layer read from a TOML file. Absent keys keep whatever the
/// layer below (the defaults) already holds.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub gamma: Option<f64>,
    pub phi: Option<f64>,
    pub n_spins: Option<usize>,
    pub lambda_range: Option<Range>,
    pub t_range: Option<Range>,
    pub rescale_by_n: Option<bool>,
    pub output_path: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }

    pub fn apply_to(&self, cfg: &mut ScanConfig) {
        if let Some(v) = self.gamma {
            cfg.gamma = v;
        }
        if let Some(v) = self.phi {
            cfg.phi = v;
        }
        if let Some(v) = self.n_spins {
            cfg.n_spins = v;
        }
        if let Some(v) = self.lambda_range {
            cfg.lambda_range = v;
        }
        if let Some(v) = self.t_range {
            cfg.t_range = v;
        }
        if let Some(v) = self.rescale_by_n {
            cfg.rescale_by_n = v;
        }
        if let Some(v) = &self.output_path {
            cfg.output_path = v.clone();
        }
        if let Some(v) = self.threads {
            cfg.threads = v;
        }
    }
}

/// Flag-level overrides, applied after the config file so that the
/// precedence is flags over file over defaults. Range bounds override
/// per field: `--lambda-steps 50` alone keeps the configured bounds.
#[derive(Debug, Clone, Default)]
pub struct ScanOverrides {
    pub gamma: Option<f64>,
    pub phi: Option<f64>,
    pub n_spins: Option<usize>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub lambda_steps: Option<usize>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub rescale_by_n: Option<bool>,
    pub output_path: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl ScanOverrides {
    pub fn apply_to(&self, cfg: &mut ScanConfig) {
        if let Some(v) = self.gamma {
            cfg.gamma = v;
        }
        if let Some(v) = self.phi {
            cfg.phi = v;
        }
        if let Some(v) = self.n_spins {
            cfg.n_spins = v;
        }
        if let Some(v) = self.lambda_min {
            cfg.lambda_range.min = v;
        }
        if let Some(v) = self.lambda_max {
            cfg.lambda_range.max = v;
        }
        if let Some(v) = self.lambda_steps {
            cfg.lambda_range.steps = v;
        }
        if let Some(v) = self.t_min {
            cfg.t_range.min = v;
        }
        if let Some(v) = self.t_max {
            cfg.t_range.max = v;
        }
        if let Some(v) = self.t_steps {
            cfg.t_range.steps = v;
        }
        if let Some(v) = self.rescale_by_n {
            cfg.rescale_by_n = v;
        }
        if let Some(v) = &self.output_path {
            cfg.output_path = v.clone();
        }
        if let Some(v) = self.threads {
            cfg.threads = v;
        }
    }
}

/// Defaults, then file (if any), then flags.
pub fn effective_config(
    file: Option<&ConfigFile>,
    flags: &ScanOverrides,
) -> Result<ScanConfig, CliError> {
    let mut cfg = ScanConfig::default();
    if let Some(f) = file {
        f.apply_to(&mut cfg);
    }
    flags.apply_to(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}
