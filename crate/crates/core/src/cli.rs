//! The `pteg` command line.
//!
//! Exit codes: 0 for a positive verdict (consistent, valid, no infinite
//! path, closure reached), 1 for a negative one, 2 for any input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io;
use crate::kleene::Circuit;
use crate::matrix::MaxPlusMatrix;
use crate::periodic::{detect_inf_weight_n_with, DetectOptions, PeriodicOutcome, PeriodicVerdict};
use crate::precedence::{phi_closure, CantorOrder};
use crate::pteg::{
    check, validate_trajectory, witness_prefix, Certificate, ConsistencyReport, Pteg, Semantics,
    StrictOutcome,
};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::ultimate::{detect_inf_weight_u_with, UltimateVerdict};

#[derive(Debug, Parser)]
#[command(name = "pteg", version, about = "Consistency analysis of P-time event graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Print a JSON report instead of a summary
    #[arg(long, global = true)]
    json: bool,
    /// Leave the timings out of the JSON report
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a net admits an infinite consistent trajectory
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = parse_semantics)]
        semantics: Semantics,
        /// Start time of the initial tokens, used by --length
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
        /// Also attach the earliest schedule of this many firings
        #[arg(long)]
        length: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Print the earliest schedule of the first K firings
    Witness {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = parse_semantics)]
        semantics: Semantics,
        #[arg(long)]
        length: usize,
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a finite trajectory against every constraint of a net
    Validate {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long, value_parser = parse_semantics)]
        semantics: Semantics,
        #[command(flatten)]
        output: Output,
    },
    /// Look for infinite-weight paths in a periodic graph given by L, C, R
    Analyze {
        /// Static graph (positive part when --ultimate is given)
        #[arg(long)]
        lcr: PathBuf,
        /// Negative part and transient layer of an ultimately periodic graph
        #[arg(long)]
        ultimate: Option<PathBuf>,
        /// Evaluate every Π up to n² + 1 instead of stopping at a fixpoint
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Close a matrix under Φ with the Cantor order
    Phi {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        max_iters: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_semantics(s: &str) -> std::result::Result<Semantics, String> {
    s.parse().map_err(|_| format!("expected `loose` or `strict`, got `{s}`"))
}

/// A finished command: exit code, JSON report and text summary.
struct Outcome {
    code: i32,
    report: Value,
    summary: String,
}

/// Runs the command line `argv` (program name first) and returns its exit
/// code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 2 };
        }
    };

    let started = Instant::now();
    let (output, result) = match &cli.command {
        Command::Check {
            file,
            semantics,
            t0,
            length,
            output,
        } => (output, run_check(file, *semantics, t0.as_deref(), *length)),
        Command::Witness {
            file,
            semantics,
            length,
            t0,
            output,
        } => (output, run_witness(file, *semantics, *length, t0.as_deref())),
        Command::Validate {
            file,
            trajectory,
            semantics,
            output,
        } => (output, run_validate(file, trajectory, *semantics)),
        Command::Analyze {
            lcr,
            ultimate,
            full,
            output,
        } => (output, run_analyze(lcr, ultimate.as_deref(), *full)),
        Command::Phi {
            matrix,
            max_iters,
            output,
        } => (output, run_phi(matrix, *max_iters)),
    };

    match result {
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Ok(mut outcome) => {
            let written = if output.json {
                if !output.no_timings {
                    let ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
                    outcome.report["timings"] = json!({ "elapsed_ms": ms });
                }
                write!(out, "{}", io::to_json_string(&outcome.report))
            } else {
                write!(out, "{}", outcome.summary)
            };
            if written.is_err() {
                return 2;
            }
            outcome.code
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Read {
            path: path.display().to_string(),
            reason: e.to_string(),
        })
}

fn read_net(path: &Path) -> Result<Pteg> {
    io::parse_net(&read(path)?)
}

fn parse_t0(t0: Option<&str>) -> Result<Rational> {
    t0.map_or_else(|| Ok(Rational::from_integer(0.into())), parse_rational)
}

fn verdict_code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn circuit_text(c: &Circuit, labels: &[String]) -> String {
    let mut names: Vec<&str> = c.nodes.iter().map(|&i| labels[i].as_str()).collect();
    names.push(names[0]);
    format!("{} (weight {})", names.join(" -> "), format_rational(&c.weight))
}

fn node_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn entries_text(entries: &[(usize, usize)]) -> String {
    entries
        .iter()
        .map(|(i, j)| format!("({}, {})", i + 1, j + 1))
        .collect::<Vec<_>>()
        .join(", ")
}

fn periodic_text(v: &PeriodicVerdict, labels: &[String]) -> String {
    match &v.outcome {
        PeriodicOutcome::NoInfPath { fixpoint_at, .. } => match fixpoint_at {
            Some(h) => format!("no infinite-weight path; Π reaches its fixpoint at h = {h}\n"),
            None => "no infinite-weight path\n".to_string(),
        },
        PeriodicOutcome::PositiveCircuit {
            shift_bound,
            circuit,
        } => format!(
            "positive circuit at shift bound {shift_bound}: {}\n",
            circuit_text(circuit, labels)
        ),
        PeriodicOutcome::Divergence { entries, .. } => {
            format!("Π keeps growing after n² steps at {}\n", entries_text(entries))
        }
    }
}

fn certificate_text(report: &ConsistencyReport, labels: &[String]) -> String {
    match &report.certificate {
        Certificate::Loose(v) => periodic_text(v, labels),
        Certificate::Strict(v) => match &v.outcome {
            StrictOutcome::Consistent { fixpoint_at, .. } => {
                format!("Π reaches its fixpoint at h = {fixpoint_at}\n")
            }
            StrictOutcome::CenterCircuit { circuit } => {
                format!("positive circuit among simultaneous firings: {}\n", circuit_text(circuit, labels))
            }
            StrictOutcome::PositiveCircuit { step, circuit } => {
                format!("positive circuit at step {step}: {}\n", circuit_text(circuit, labels))
            }
            StrictOutcome::TransientCircuit { circuit, .. } => {
                format!("positive circuit through the initial tokens: {}\n", circuit_text(circuit, labels))
            }
            StrictOutcome::NoFixpoint { entries, .. } => {
                format!("Π keeps growing after n² steps at {}\n", entries_text(entries))
            }
        },
    }
}

fn trajectory_text(x: &[Vec<Rational>]) -> String {
    x.iter()
        .enumerate()
        .map(|(k, row)| {
            let row: Vec<String> = row.iter().map(format_rational).collect();
            format!("x({}) = ({})\n", k + 1, row.join(", "))
        })
        .collect()
}

fn consistency_outcome(net: &Pteg, semantics: Semantics) -> Result<(ConsistencyReport, Outcome)> {
    let report = check(net, semantics)?;
    let normalized = net.normalize_marking();
    let verdict = if report.consistent {
        "consistent"
    } else {
        "inconsistent"
    };
    let json = io::check_report(net, &report);
    let summary = format!(
        "{verdict} under {semantics} semantics\n{}",
        certificate_text(&report, normalized.transitions())
    );
    let outcome = Outcome {
        code: verdict_code(report.consistent),
        report: json,
        summary,
    };
    Ok((report, outcome))
}

fn run_check(file: &Path, semantics: Semantics, t0: Option<&str>, length: Option<usize>) -> Result<Outcome> {
    let net = read_net(file)?;
    let t0 = parse_t0(t0)?;
    let (report, mut outcome) = consistency_outcome(&net, semantics)?;
    if let (Some(k), true) = (length, report.consistent) {
        let w = witness_prefix(&net, semantics, k, &t0)?;
        outcome.report["witness"] = io::trajectory_value(&w);
        outcome.summary.push_str(&trajectory_text(&w.x));
    }
    Ok(outcome)
}

fn run_witness(file: &Path, semantics: Semantics, length: usize, t0: Option<&str>) -> Result<Outcome> {
    let net = read_net(file)?;
    let t0 = parse_t0(t0)?;
    if length == 0 {
        return Err(Error::ZeroLength);
    }
    let (report, mut outcome) = consistency_outcome(&net, semantics)?;
    outcome.report["command"] = json!("witness");
    if report.consistent {
        let w = witness_prefix(&net, semantics, length, &t0)?;
        outcome.report["witness"] = io::trajectory_value(&w);
        outcome.summary = trajectory_text(&w.x);
    }
    Ok(outcome)
}

fn run_validate(file: &Path, trajectory: &Path, semantics: Semantics) -> Result<Outcome> {
    let net = read_net(file)?;
    let traj = io::parse_trajectory(&read(trajectory)?)?;
    let violations = validate_trajectory(&net, semantics, &traj)?;
    let verdict = if violations.is_empty() { "valid" } else { "invalid" };
    let mut summary = format!("{verdict} under {semantics} semantics ({} violations)\n", violations.len());
    for v in &violations {
        summary.push_str(&format!("  {v}\n"));
    }
    Ok(Outcome {
        code: verdict_code(violations.is_empty()),
        report: json!({
            "command": "validate",
            "semantics": semantics.to_string(),
            "verdict": verdict,
            "firings": traj.len(),
            "violations": violations.iter().map(io::violation_value).collect::<Vec<_>>(),
        }),
        summary,
    })
}

fn run_analyze(lcr: &Path, ultimate: Option<&Path>, full: bool) -> Result<Outcome> {
    let options = DetectOptions { early_exit: !full };
    let pos_text = read(lcr)?;
    let (inf, certificate, summary) = match ultimate {
        None => {
            let g = io::parse_static_graph(&pos_text)?;
            let v = detect_inf_weight_n_with(&g, options);
            (v.has_inf_path(), io::periodic_value(&v, None), periodic_text(&v, &node_labels(g.n())))
        }
        Some(path) => {
            let spec = io::parse_ultimate(&pos_text, &read(path)?)?;
            let labels = node_labels(spec.n());
            let v = detect_inf_weight_u_with(&spec, options);
            let text = match &v {
                UltimateVerdict::NoInfPath { .. } => "no infinite-weight path\n".to_string(),
                UltimateVerdict::NegPartDiverges { neg } => {
                    format!("negative part: {}", periodic_text(neg, &labels))
                }
                UltimateVerdict::PosPartDiverges { pos } => {
                    format!("positive part: {}", periodic_text(pos, &labels))
                }
                UltimateVerdict::TransientPositiveCircuit { circuit, .. } => format!(
                    "positive circuit through the transient layer: {}\n",
                    circuit_text(circuit, &labels)
                ),
            };
            (v.has_inf_path(), io::ultimate_value(&v), text)
        }
    };
    let verdict = if inf { "inf-path" } else { "no-inf-path" };
    Ok(Outcome {
        code: verdict_code(!inf),
        report: json!({
            "command": "analyze",
            "graph": if ultimate.is_some() { "ultimately-periodic" } else { "periodic" },
            "verdict": verdict,
            "certificate": certificate,
        }),
        summary,
    })
}

fn run_phi(path: &Path, max_iters: Option<usize>) -> Result<Outcome> {
    let a = io::parse_matrix(&read(path)?)?;
    a.ensure_over_rmax()?;
    let labels = node_labels(a.n());
    let negative = |verdict: &str, certificate: Value, summary: String| Outcome {
        code: 1,
        report: json!({ "command": "phi", "verdict": verdict, "certificate": certificate }),
        summary,
    };
    if let Some(c) = a.positive_circuit() {
        let summary = format!("positive circuit: {}\n", circuit_text(&c, &labels));
        return Ok(negative("positive-circuit", json!({ "circuit": io::circuit_value(&c, None) }), summary));
    }
    match phi_closure(&a, &CantorOrder, max_iters) {
        Ok(closed) => Ok(Outcome {
            code: 0,
            report: json!({
                "command": "phi",
                "verdict": "closed",
                "result": io::matrix_value(&closed),
            }),
            summary: matrix_text(&closed),
        }),
        Err(Error::IterationLimit { limit }) => Ok(negative(
            "iteration-limit",
            json!({ "limit": limit }),
            format!("no fixpoint within {limit} iterations\n"),
        )),
        Err(e) => Err(e),
    }
}

fn matrix_text(m: &MaxPlusMatrix) -> String {
    let cells: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("{}\n", padded.join(" "))
        })
        .collect()
}
