//! Rendering of command reports in the three output formats.
//!
//! Text rounds to 7 digits; CSV and JSON carry full double precision (the
//! shortest representation that round-trips). Reports never contain clocks,
//! paths, or thread schedules, so a fixed input always renders to identical
//! bytes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use crate::commands::{ContextReport, PentagramReport, SimulateReport, SweepReport};
use crate::{AppError, Format};

const OUTCOME_LABELS: [&str; 4] = ["(-1,-1)", "(-1,+1)", "(+1,-1)", "(+1,+1)"];

/// Exact column set of the sweep table; a version bump in `schema_version`
/// accompanies any change.
pub const SWEEP_CSV_HEADER: &str =
    "zeta,theta,qm_mm,qm_mp,qm_pm,qm_pp,hv_mm,hv_mp,hv_pm,hv_pp,max_abs_discrepancy";

#[derive(Serialize)]
struct Envelope<I: Serialize, R: Serialize> {
    schema_version: u32,
    command: &'static str,
    inputs: I,
    results: R,
}

fn to_json<I: Serialize, R: Serialize>(
    command: &'static str,
    inputs: I,
    results: R,
) -> String {
    let envelope = Envelope {
        schema_version: 1,
        command,
        inputs,
        results,
    };
    let mut body = serde_json::to_string_pretty(&envelope)
        .expect("reports contain only finite numbers and strings");
    body.push('\n');
    body
}

/// Writes a rendered report to the requested destination.
pub fn emit(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(path) => fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn csv_unsupported(command: &str) -> AppError {
    AppError::Usage(format!(
        "csv format is only available for sweep, not for {command}; use text or json"
    ))
}

pub fn render_pentagram(report: &PentagramReport, format: Format) -> Result<String, AppError> {
    match format {
        Format::Csv => Err(csv_unsupported("pentagram")),
        Format::Json => {
            #[derive(Serialize)]
            struct Inputs {
                zeta_pent: f64,
                tol: f64,
            }
            Ok(to_json(
                "pentagram",
                Inputs {
                    zeta_pent: report.zeta_pent,
                    tol: report.tol,
                },
                report,
            ))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "KCBS pentagram at zeta_pent = {:.7}", report.zeta_pent);
            let _ = writeln!(s, "state = (0, 0, 1)");
            let _ = writeln!(s);
            for (i, v) in report.vectors.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  chi_{} = ({}, {}, {})",
                    i + 1,
                    fmt_complex(v[0]),
                    fmt_complex(v[1]),
                    fmt_complex(v[2]),
                );
            }
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "adjacency |<chi_i|chi_i+1>| (tol = {:.1e}):",
                report.tol
            );
            for (i, modulus) in report.adjacency_moduli.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  ({},{})  {:.3e}  {}",
                    i + 1,
                    (i + 1) % 5 + 1,
                    modulus,
                    if *modulus <= report.tol { "ok" } else { "FAIL" },
                );
            }
            let _ = writeln!(
                s,
                "orthogonality: {}",
                if report.orthogonality_pass {
                    "PASS"
                } else {
                    "FAIL"
                }
            );
            let _ = writeln!(s);
            let _ = writeln!(s, "quantum_sum   = {:.7}", report.quantum_sum);
            let _ = writeln!(
                s,
                "classical_min = {}  (admissible assignments: {})",
                report.classical_bound, report.admissible_count
            );
            let _ = writeln!(
                s,
                "verdict: {}  (quantum_sum {} classical_min)",
                report.verdict,
                if report.verdict == "VIOLATED" { "<" } else { ">=" },
            );
            Ok(s)
        }
    }
}

pub fn render_context(report: &ContextReport, format: Format) -> Result<String, AppError> {
    match format {
        Format::Csv => Err(csv_unsupported("context")),
        Format::Json => {
            #[derive(Serialize)]
            struct Inputs {
                zeta_canon: f64,
                theta: f64,
                rho: f64,
                panels: u32,
            }
            Ok(to_json(
                "context",
                Inputs {
                    zeta_canon: report.zeta_canon,
                    theta: report.theta,
                    rho: report.rho,
                    panels: report.panels,
                },
                report,
            ))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "gauge-fixed context");
            let _ = writeln!(s, "  zeta_canon = {:.7}", report.zeta_canon);
            let _ = writeln!(s, "  theta      = {:.7}", report.theta);
            let _ = writeln!(s, "  rho        = {:.7}", report.rho);
            let _ = writeln!(s, "  omega      = {:.7}", report.omega);
            let _ = writeln!(s, "  panels     = {}", report.panels);
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "outcome      {:>12} {:>12} {:>12}",
                "qm", "closed_form", "quadrature"
            );
            let qm = report.qm.as_array();
            let closed = report.closed_form.as_array();
            let quad = report.quadrature.as_array();
            for i in 0..4 {
                let _ = writeln!(
                    s,
                    "{:<12} {:>12.7} {:>12.7} {:>12.7}",
                    OUTCOME_LABELS[i], qm[i], closed[i], quad[i],
                );
            }
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "max |qm - closed_form| = {:.3e}",
                report.max_abs_discrepancy_closed_form
            );
            let _ = writeln!(
                s,
                "max |qm - quadrature|  = {:.3e}",
                report.max_abs_discrepancy_quadrature
            );
            Ok(s)
        }
    }
}

pub fn render_sweep(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Inputs {
                grid: u32,
            }
            to_json("sweep", Inputs { grid: report.grid }, report)
        }
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "{SWEEP_CSV_HEADER}");
            for row in &report.rows {
                let qm = row.qm.as_array();
                let hv = row.hv.as_array();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    row.zeta_canon,
                    row.theta,
                    qm[0],
                    qm[1],
                    qm[2],
                    qm[3],
                    hv[0],
                    hv[1],
                    hv[2],
                    hv[3],
                    row.max_abs_discrepancy,
                );
            }
            // Summary row: only the global maximum, all other fields empty.
            let _ = writeln!(s, ",,,,,,,,,,{}", report.max_abs_discrepancy);
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "sweep over a {0} x {0} interior grid of (zeta_canon, theta)",
                report.grid
            );
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "{:>10} {:>10} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11} {:>10}",
                "zeta",
                "theta",
                "qm_mm",
                "qm_mp",
                "qm_pm",
                "qm_pp",
                "hv_mm",
                "hv_mp",
                "hv_pm",
                "hv_pp",
                "max_disc",
            );
            for row in &report.rows {
                let qm = row.qm.as_array();
                let hv = row.hv.as_array();
                let _ = writeln!(
                    s,
                    "{:>10.7} {:>10.7} {:>11.7} {:>11.7} {:>11.7} {:>11.7} {:>11.7} {:>11.7} {:>11.7} {:>11.7} {:>10.3e}",
                    row.zeta_canon,
                    row.theta,
                    qm[0],
                    qm[1],
                    qm[2],
                    qm[3],
                    hv[0],
                    hv[1],
                    hv[2],
                    hv[3],
                    row.max_abs_discrepancy,
                );
            }
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "global max_abs_discrepancy = {:.3e}",
                report.max_abs_discrepancy
            );
            s
        }
    }
}

pub fn render_simulate(report: &SimulateReport, format: Format) -> Result<String, AppError> {
    match format {
        Format::Csv => Err(csv_unsupported("simulate")),
        Format::Json => {
            #[derive(Serialize)]
            struct Inputs {
                zeta_canon: f64,
                theta: f64,
                rho: f64,
                samples: u64,
                seed: u64,
                threads: String,
            }
            Ok(to_json(
                "simulate",
                Inputs {
                    zeta_canon: report.zeta_canon,
                    theta: report.theta,
                    rho: report.rho,
                    samples: report.simulation.n_samples,
                    seed: report.seed,
                    threads: report.threads.clone(),
                },
                report,
            ))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "hidden-variable simulation");
            let _ = writeln!(s, "  zeta_canon = {:.7}", report.zeta_canon);
            let _ = writeln!(s, "  theta      = {:.7}", report.theta);
            let _ = writeln!(s, "  rho        = {:.7}", report.rho);
            let _ = writeln!(s, "  samples    = {}", report.simulation.n_samples);
            let _ = writeln!(s, "  seed       = {}", report.seed);
            let _ = writeln!(s, "  rng        = {}", report.simulation.rng_algorithm);
            let _ = writeln!(s, "  chunks     = {}", report.simulation.chunk_count);
            let _ = writeln!(s, "  threads    = {}", report.threads);
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "outcome      {:>10} {:>12} {:>12} {:>12} {:>8}",
                "count", "estimate", "std_error", "analytic", "z",
            );
            let estimate = report.simulation.estimate.as_array();
            let analytic = report.analytic.as_array();
            for i in 0..4 {
                let _ = writeln!(
                    s,
                    "{:<12} {:>10} {:>12.7} {:>12.7} {:>12.7} {:>8.2}",
                    OUTCOME_LABELS[i],
                    report.simulation.counts[i],
                    estimate[i],
                    report.simulation.std_errors[i],
                    analytic[i],
                    report.z_scores[i],
                );
            }
            let max_z = report
                .z_scores
                .iter()
                .fold(0.0f64, |acc, z| acc.max(z.abs()));
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "max |z| = {:.2}  (all within 4 sigma: {})",
                max_z,
                if max_z <= 4.0 { "yes" } else { "NO" },
            );
            Ok(s)
        }
    }
}

fn fmt_complex(c: [f64; 2]) -> String {
    if c[1] == 0.0 {
        format!("{:.7}", c[0])
    } else {
        format!("{:.7}{:+.7}i", c[0], c[1])
    }
}
