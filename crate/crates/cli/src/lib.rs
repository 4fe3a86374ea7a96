//! Batch command-line driver for operator geometric tensor work on the
//! rotated XY chain: grid scans to CSV, a per-mode inspector, validation
//! batteries, and echo and geometric-phase utilities.
//!
//! The binary is `oqgt`; everything it does is also callable from here,
//! which is how the integration tests drive it. Output bytes are a
//! function of the configuration alone: worker counts and wall time are
//! reported on stderr, never written into data files.

pub mod config;
pub mod echo;
pub mod error;
pub mod mode;
pub mod numfmt;
pub mod phase;
pub mod scan;
pub mod suites;

pub use config::{effective_config, ConfigFile, Range, ScanConfig, ScanOverrides};
pub use echo::{dense_echo_exact, echo_report, EchoArgs, EXACT_ECHO_MAX_SPINS};
pub use error::{CliError, EXIT_IO, EXIT_NUMERICAL, EXIT_USAGE};
pub use mode::mode_report;
pub use phase::{phase_report, ConeSpec, PhaseConfig, Preset, XyModeSpec};
pub use scan::{run_scan, write_scan, SCAN_HEADER};
pub use suites::{gate_failures, run_suite, Suite};
