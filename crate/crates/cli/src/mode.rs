//! Single-mode inspector: dispersion, mixing angle, and the mode's 3x3
//! tensor, printed at fixed precision for column-aligned reading.

use std::fmt::Write as _;

use oqgt_xy::{mode_data, mode_oqgt, XYParams};

use crate::error::CliError;
use crate::numfmt::sci12;

/// Render the report for mode `k` of the configured chain.
///
/// Mode `k = 0` short-circuits to an explanatory message: that fermion's
/// evolution commutes with the rotation and its reference state is an
/// eigenstate, so its tensor contribution vanishes identically and there
/// is nothing to print.
pub fn mode_report(
    k: usize,
    lambda: f64,
    gamma: f64,
    phi: f64,
    t: f64,
    n_spins: usize,
) -> Result<String, CliError> {
    let p = XYParams::new(lambda, gamma, phi, t, n_spins)?;
    if k == 0 {
        return Ok(format!(
            "mode k=0 of n_spins={n_spins}: zero contribution \
             (evolution commutes with the rotation; reference state is an eigenstate)\n"
        ));
    }
    let data = mode_data(k, &p)?;
    let tensor = mode_oqgt(k, &p)?;
    let q = &tensor.q;

    let mut out = String::new();
    let _ = writeln!(out, "mode k={k} n_spins={n_spins}");
    let _ = writeln!(
        out,
        "lambda={} gamma={} phi={} t={}",
        sci12(lambda),
        sci12(gamma),
        sci12(phi),
        sci12(t)
    );
    let _ = writeln!(out, "Lambda_k={}", sci12(data.lambda_k));
    let _ = writeln!(out, "theta_k={}", sci12(data.theta_k));
    for (label, part) in [("re_q", false), ("im_q", true)] {
        let _ = writeln!(out, "{label}: # axes (lambda, gamma, phi)");
        for i in 0..3 {
            let row: Vec<String> = (0..3)
                .map(|j| {
                    let z = q[(i, j)];
                    sci12(if part { z.im } else { z.re })
                })
                .collect();
            let _ = writeln!(out, "  {}", row.join(" "));
        }
    }
    Ok(out)
}
