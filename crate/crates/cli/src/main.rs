//! `dualcalc`: weighted dual graphs, resolution chains, decompositions and
//! chart towers from the command line.
//!
//! Output goes to stdout (JSON unless `--dot` is given), diagnostics to
//! stderr. Exit codes: 0 success, 1 domain error or failed check,
//! 2 structural or parse error, 3 internal defect.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dualcalc::decompose::{factorize_with_axis, synthesize};
use dualcalc::error::{Error, ErrorKind};
use dualcalc::format::*;
use dualcalc::resolution_chain;
use dualcalc::sim::simulate;
use dualcalc::tower::{
    certify_conjugation, conjugate_automorphism, find_avoiding_parabola, moebius_alpha,
    verify_chi_identity,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dualcalc", version, about = "Weighted dual graph calculus")]
struct Cli {
    /// Seed for subcommands that draw random data (none currently do).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Resolution chain of y^m / x^k.
    Resolve {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Blow-up bookkeeping for y^m / x^k with boundary curves and coefficients.
    Simulate {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        dot: bool,
    },
    /// Contract (−1)-vertices until the graph is empty or stuck.
    Contract { graph: PathBuf },
    /// Factor a contractible graph into resolution stages.
    Decompose {
        graph: PathBuf,
        /// Vertex of the first chain that meets the x-axis.
        #[arg(long)]
        x_end: Option<String>,
    },
    /// Build the graph of a stage list.
    Synthesize {
        stages: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Lift a Möbius automorphism through a chart tower and certify it.
    VerifyTower {
        tower: PathBuf,
        /// `a,b` for (x, y) ↦ (ax/(a − x), by/(b − y)).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Lift by exact rational-function substitution (slow on deep towers).
        #[arg(long)]
        symbolic: bool,
    },
    /// Check the chart pullback identity at one point.
    ChiCheck {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// `s,t`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Parabola s = a + b·t + c·t² through a point, missing others.
    Parabola {
        /// `s,t`.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// JSON list of `["s","t"]` pairs.
        #[arg(long)]
        avoid: Option<PathBuf>,
    },
    /// Convert graph JSON to DOT.
    Dot { graph: PathBuf },
}

/// Failure that carries its own exit code and one-line reason.
struct Failure {
    code: u8,
    reason: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, tag) = match e.kind() {
            ErrorKind::Domain => (1, "domain"),
            ErrorKind::Structural => (2, "structural"),
            ErrorKind::Internal => (3, "internal"),
        };
        Failure { code, reason: format!("{tag}: {e}") }
    }
}

fn read(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p)
        .map_err(|e| Failure { code: 2, reason: format!("io: {}: {e}", p.display()) })
}

fn parse_pair(s: &str) -> Result<dualcalc::tower::RationalPoint, Failure> {
    Ok(parse_point(s)?)
}

/// Output text and whether the command's check passed.
fn run(cmd: Cmd) -> Result<(String, bool), Failure> {
    match cmd {
        Cmd::Resolve { k, m, json: _, dot } => {
            let c = resolution_chain(k, m)?;
            Ok((if dot { graph_to_dot(c.graph()) } else { chain_to_json(&c) }, true))
        }
        Cmd::Simulate { k, m, dot } => {
            let d = simulate(k, m)?;
            Ok((if dot { decorated_to_dot(&d) } else { decorated_to_json(&d) }, true))
        }
        Cmd::Contract { graph } => {
            let g = graph_from_json(&read(&graph)?)?;
            Ok(match g.contract_fully() {
                Ok(seq) => (contraction_to_json(&seq.steps, None), true),
                Err(stuck) => (contraction_to_json(&stuck.steps, Some(&stuck.residual)), false),
            })
        }
        Cmd::Decompose { graph, x_end } => {
            let g = graph_from_json(&read(&graph)?)?;
            Ok((stages_to_json(&factorize_with_axis(&g, x_end.as_deref())?), true))
        }
        Cmd::Synthesize { stages, dot } => {
            let g = synthesize(&stages_from_json(&read(&stages)?)?)?;
            Ok((if dot { graph_to_dot(&g) } else { graph_to_json(&g) }, true))
        }
        Cmd::VerifyTower { tower, alpha, symbolic } => {
            let t = tower_from_json(&read(&tower)?)?;
            let ab = parse_pair(&alpha)?;
            let al = moebius_alpha(&ab.u, &ab.v)?;
            let certs = if symbolic {
                conjugate_automorphism(&t, &al)?.certificates
            } else {
                certify_conjugation(&t, &al)?
            };
            Ok((certificates_to_json(&certs), certs.iter().all(|c| c.passed)))
        }
        Cmd::ChiCheck { k, m, c, point } => {
            let c = parse_rational(&c)?;
            let p = parse_pair(&point)?;
            let holds = verify_chi_identity(k, m, &c, &p)?;
            if !holds {
                return Err(Failure { code: 3, reason: format!("internal: identity fails at {p}") });
            }
            Ok((format!("{}\n", json!({ "holds": holds })), true))
        }
        Cmd::Parabola { target, avoid } => {
            let target = parse_pair(&target)?;
            let avoid = match avoid {
                Some(p) => points_from_json(&read(&p)?)?,
                None => Vec::new(),
            };
            let (a, b, c) = find_avoiding_parabola(&target, &avoid)?;
            let doc = json!({
                "a": rational_string(&a),
                "b": rational_string(&b),
                "c": rational_string(&c),
            });
            Ok((format!("{doc}\n"), true))
        }
        Cmd::Dot { graph } => Ok((graph_to_dot(&graph_from_json(&read(&graph)?)?), true)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let _ = cli.seed;
    match run(cli.cmd) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.reason);
            ExitCode::from(f.code)
        }
    }
}
