use std::fmt;

/// Outcome of one seeded randomized oracle sweep.
///
/// The invariant `passed == (max_abs_error <= tolerance)` is enforced by the
/// constructor, so a report can never claim success while carrying an error
/// above its own gate. Rebuilding a report from the same `(name, seed)` pair
/// reproduces `max_abs_error` bit for bit: every oracle draws from a counter
/// based stream cipher seeded only by `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Stable identifier, used as the key in validation output.
    pub name: String,
    /// Seed the sweep was generated from.
    pub seed: u64,
    /// Number of randomized trials folded into `max_abs_error`.
    pub samples: usize,
    /// Worst absolute deviation observed across all trials.
    pub max_abs_error: f64,
    /// Gate the deviation is compared against.
    pub tolerance: f64,
    /// Whether the sweep stayed inside the gate.
    pub passed: bool,
}

impl OracleReport {
    /// Builds a report, deriving `passed` from the error and the gate.
    ///
    /// A NaN error always fails: the comparison `max_abs_error <= tolerance`
    /// is false for NaN, which is exactly the conservative behavior wanted.
    pub fn new(
        name: impl Into<String>,
        seed: u64,
        samples: usize,
        max_abs_error: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            seed,
            samples,
            max_abs_error,
            tolerance,
            passed: max_abs_error <= tolerance,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "name={} seed={} samples={} max_abs_error={:e} tol={:e} passed={}",
            self.name, self.seed, self.samples, self.max_abs_error, self.tolerance, self.passed
        )
    }
}
