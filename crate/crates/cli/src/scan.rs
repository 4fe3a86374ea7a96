//! Grid scans over `(lambda, t)`: parallel evaluation, deterministic
//! CSV emission.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use rayon::prelude::*;

use oqgt_xy::{chain_oqgt, XYError, XYParams};

use crate::config::ScanConfig;
use crate::error::CliError;
use crate::numfmt::fmt_f64;

/// Exact column schema of every scan file. The six `g_` columns are the
/// independent real (metric) components over the axes
/// `(lambda, gamma, phi)`, the three `s_` columns the independent
/// imaginary (curvature) components; both families are divided by the
/// spin count when rescaling is on.
pub const SCAN_HEADER: &str =
    "lambda,gamma,phi,t,n_spins,g_ll,g_gg,g_pp,g_lg,g_lp,g_gp,s_lg,s_lp,s_gp";

/// Run the configured scan into its output file; reports wall time and
/// worker count on stderr so the file itself stays run-independent.
pub fn run_scan(cfg: &ScanConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let started = Instant::now();
    let file = File::create(&cfg.output_path)?;
    let mut w = BufWriter::new(file);
    let rows = write_scan(cfg, &mut w)?;
    w.flush()?;
    eprintln!(
        "# wrote {} rows to {} in {:.3} s on {} worker(s)",
        rows,
        cfg.output_path.display(),
        started.elapsed().as_secs_f64(),
        cfg.threads
    );
    Ok(())
}

/// Emit the complete scan (preamble, header, rows) to any writer and
/// return the data-row count.
///
/// Rows are computed a lambda-block at a time on a private worker pool
/// of `cfg.threads` threads; each worker renders its block into a
/// private string and the blocks are written in grid order afterwards,
/// so the bytes cannot depend on scheduling. Row order is row-major:
/// lambda outer, t inner.
pub fn write_scan<W: Write>(cfg: &ScanConfig, w: &mut W) -> Result<usize, CliError> {
    cfg.validate()?;
    for line in cfg.preamble_lines() {
        writeln!(w, "{line}")?;
    }
    writeln!(w, "{SCAN_HEADER}")?;

    let lambdas = cfg.lambda_range.values();
    let ts = cfg.t_range.values();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot build a {}-worker pool: {e}", cfg.threads)))?;
    let blocks: Vec<String> = pool.install(|| {
        lambdas
            .par_iter()
            .map(|&lambda| lambda_block(cfg, lambda, &ts))
            .collect()
    });

    for block in &blocks {
        w.write_all(block.as_bytes())?;
    }
    Ok(lambdas.len() * ts.len())
}

/// All rows sharing one lambda value, with any warning lines inlined
/// directly above the rows they explain.
fn lambda_block(cfg: &ScanConfig, lambda: f64, ts: &[f64]) -> String {
    let mut out = String::new();
    for &t in ts {
        render_row(&mut out, cfg, lambda, t);
    }
    out
}

/// One grid point. A gap closing (or any other pointwise failure) keeps
/// the scan alive: the row is emitted with `nan` tensor fields under a
/// `#` warning line, and neighbouring points are unaffected.
fn render_row(out: &mut String, cfg: &ScanConfig, lambda: f64, t: f64) {
    let p = XYParams {
        lambda,
        gamma: cfg.gamma,
        phi: cfg.phi,
        t,
        n_spins: cfg.n_spins,
    };
    let prefix = |out: &mut String| {
        let _ = write!(
            out,
            "{},{},{},{},{}",
            fmt_f64(lambda),
            fmt_f64(cfg.gamma),
            fmt_f64(cfg.phi),
            fmt_f64(t),
            cfg.n_spins
        );
    };
    match chain_oqgt(&p) {
        Ok(tensor) => {
            let q = tensor.q();
            let n = cfg.n_spins as f64;
            let scale = |x: f64| if cfg.rescale_by_n { x / n } else { x };
            let fields = [
                q[(0, 0)].re,
                q[(1, 1)].re,
                q[(2, 2)].re,
                q[(0, 1)].re,
                q[(0, 2)].re,
                q[(1, 2)].re,
                q[(0, 1)].im,
                q[(0, 2)].im,
                q[(1, 2)].im,
            ];
            prefix(out);
            for x in fields {
                let _ = write!(out, ",{}", fmt_f64(scale(x)));
            }
            out.push('\n');
        }
        Err(e) => {
            let detail = match &e {
                XYError::GaplessChain { ks } => format!("gapless mode(s) k = {ks:?}"),
                other => other.to_string(),
            };
            let _ = writeln!(
                out,
                "# warning: no tensor at lambda={} t={}: {detail}",
                fmt_f64(lambda),
                fmt_f64(t)
            );
            prefix(out);
            out.push_str(&",nan".repeat(9));
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Range;
    use std::path::PathBuf;

    fn tiny_config() -> ScanConfig {
        ScanConfig {
            gamma: 0.8,
            phi: 0.4,
            n_spins: 25,
            lambda_range: Range {
                min: 0.2,
                max: 1.7,
                steps: 11,
            },
            t_range: Range {
                min: 0.0,
                max: 6.0,
                steps: 7,
            },
            rescale_by_n: true,
            output_path: PathBuf::from("unused.csv"),
            threads: 1,
        }
    }

    fn scan_bytes(cfg: &ScanConfig) -> Vec<u8> {
        let mut buf = Vec::new();
        write_scan(cfg, &mut buf).unwrap();
        buf
    }

    fn data_rows(bytes: &[u8]) -> Vec<String> {
        String::from_utf8(bytes.to_vec())
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("lambda,"))
            .map(str::to_string)
            .collect()
    }

    #[test]
    fn single_point_grid_at_zero_time_is_all_zeros() {
        let cfg = ScanConfig {
            lambda_range: Range {
                min: 0.5,
                max: 0.5,
                steps: 1,
            },
            t_range: Range {
                min: 0.0,
                max: 0.0,
                steps: 1,
            },
            n_spins: 5,
            gamma: 1.0,
            phi: 0.3,
            ..tiny_config()
        };
        let rows = data_rows(&scan_bytes(&cfg));
        assert_eq!(rows.len(), 1);
        let fields: Vec<&str> = rows[0].split(',').collect();
        assert_eq!(fields.len(), 14);
        assert_eq!(fields[0], "0.5");
        assert_eq!(fields[3], "0");
        assert_eq!(fields[4], "5");
        for f in &fields[5..] {
            assert_eq!(*f, "0", "row was {}", rows[0]);
        }
    }

    #[test]
    fn header_preamble_and_row_major_order() {
        let cfg = tiny_config();
        let text = String::from_utf8(scan_bytes(&cfg)).unwrap();
        let mut lines = text.lines();
        // preamble first, then the exact header
        let mut line = lines.next().unwrap();
        while line.starts_with('#') {
            line = lines.next().unwrap();
        }
        assert_eq!(line, SCAN_HEADER);

        let rows = data_rows(text.as_bytes());
        assert_eq!(rows.len(), 11 * 7);
        // lambda outer: first seven rows share lambda, t ascends
        let first: Vec<&str> = rows[0].split(',').collect();
        let seventh: Vec<&str> = rows[6].split(',').collect();
        let eighth: Vec<&str> = rows[7].split(',').collect();
        assert_eq!(first[0], seventh[0]);
        assert_ne!(first[0], eighth[0]);
        assert_eq!(first[3], "0");
        assert_eq!(seventh[3], "6");
    }

    #[test]
    fn bytes_do_not_depend_on_worker_count_or_repetition() {
        let cfg = tiny_config();
        let once = scan_bytes(&cfg);
        let again = scan_bytes(&cfg);
        let threaded = scan_bytes(&ScanConfig {
            threads: 3,
            ..cfg.clone()
        });
        assert_eq!(once, again);
        assert_eq!(once, threaded);
    }

    #[test]
    fn rescaling_divides_each_tensor_field_by_the_spin_count() {
        let cfg = ScanConfig {
            rescale_by_n: true,
            ..tiny_config()
        };
        let raw = ScanConfig {
            rescale_by_n: false,
            ..tiny_config()
        };
        let a = data_rows(&scan_bytes(&cfg));
        let b = data_rows(&scan_bytes(&raw));
        for (ra, rb) in a.iter().zip(&b) {
            let fa: Vec<f64> = ra.split(',').map(|x| x.parse().unwrap()).collect();
            let fb: Vec<f64> = rb.split(',').map(|x| x.parse().unwrap()).collect();
            for i in 5..14 {
                assert_eq!(fa[i].to_bits(), (fb[i] / 25.0).to_bits());
            }
        }
    }

    #[test]
    fn gapless_grid_point_gets_nan_fields_and_a_warning() {
        // gamma = 0 with lambda = cos(2 pi / 5) closes mode k = 1 of the
        // five-spin chain exactly
        let lambda = (2.0 * std::f64::consts::PI / 5.0).cos();
        let cfg = ScanConfig {
            gamma: 0.0,
            phi: 0.0,
            n_spins: 5,
            lambda_range: Range {
                min: lambda,
                max: lambda,
                steps: 1,
            },
            t_range: Range {
                min: 1.0,
                max: 1.0,
                steps: 1,
            },
            ..tiny_config()
        };
        let text = String::from_utf8(scan_bytes(&cfg)).unwrap();
        assert!(text.contains("# warning: no tensor at"), "{text}");
        assert!(text.contains("gapless mode(s) k = [1]"), "{text}");
        let rows = data_rows(text.as_bytes());
        assert_eq!(rows.len(), 1);
        let fields: Vec<&str> = rows[0].split(',').collect();
        assert_eq!(&fields[5..], &["nan"; 9]);
        // the coordinate fields stay real values
        assert_eq!(fields[4], "5");
    }

    #[test]
    fn every_emitted_number_reparses_to_identical_bits() {
        let cfg = ScanConfig {
            rescale_by_n: false,
            ..tiny_config()
        };
        for row in data_rows(&scan_bytes(&cfg)) {
            for field in row.split(',') {
                let x: f64 = field.parse().unwrap();
                assert_eq!(fmt_f64(x), field);
            }
        }
    }

    #[test]
    fn unwritable_output_path_is_an_io_failure() {
        let cfg = ScanConfig {
            output_path: PathBuf::from("/nonexistent-dir-for-sure/out.csv"),
            lambda_range: Range {
                min: 0.5,
                max: 0.5,
                steps: 1,
            },
            t_range: Range {
                min: 0.0,
                max: 0.0,
                steps: 1,
            },
            n_spins: 5,
            ..tiny_config()
        };
        let err = run_scan(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn scan_file_lands_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mini.csv");
        let cfg = ScanConfig {
            output_path: path.clone(),
            n_spins: 5,
            lambda_range: Range {
                min: 0.3,
                max: 0.9,
                steps: 3,
            },
            t_range: Range {
                min: 0.0,
                max: 2.0,
                steps: 2,
            },
            ..tiny_config()
        };
        run_scan(&cfg).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(data_rows(text.as_bytes()).len(), 6);

        let mut buf = Vec::new();
        write_scan(&cfg, &mut buf).unwrap();
        assert_eq!(text.as_bytes(), &buf[..]);
    }
}
