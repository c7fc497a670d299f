//! Command-line front end: parse JSON problem specs, run certifications,
//! and emit JSON certificates plus human-readable summaries.
//!
//! Every command writes exactly one JSON document to stdout; a short
//! summary goes to stderr unless `--json` is given. Exit codes: 0 for a
//! positive verdict, 1 for a negative one, 2 for input errors.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use liefat::catalog;
use liefat::error::Error;
use liefat::fatness::{fat_check, translate_polytope, Polytope};
use liefat::oracle::run_oracle;
use liefat::problem::{DecompositionReport, ProblemSpec, SubalgebraJson};
use liefat::rational::{fmt_rat, parse_rat_vec};
use liefat::reductive::x_sigma;
use liefat::root_system::{CartanVector, Family};
use liefat::twistor::{certify_twistor, FailureReason};

#[derive(Parser)]
#[command(name = "liefat", version, about = "Exact certification of symplectic fatness over K/H")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Problem spec JSON file, or "-" for stdin (flags override its fields)
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Root system family: A, B, C, or D
    #[arg(long)]
    family: Option<String>,
    /// Root system rank
    #[arg(long)]
    rank: Option<usize>,
    /// Centralizer subalgebra: comma-separated 1-based simple root indices
    #[arg(long, conflicts_with_all = ["subsystem", "cartan_subalgebra"])]
    centralizer: Option<String>,
    /// Subsystem preset; currently "d-type" (the +-e_s +- e_t roots)
    #[arg(long, conflicts_with = "cartan_subalgebra")]
    subsystem: Option<String>,
    /// Use the maximal torus itself as the subalgebra (h = t)
    #[arg(long)]
    cartan_subalgebra: bool,
    /// Print only the JSON document (suppress the stderr summary)
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a classical root system as JSON
    Roots(CommonArgs),
    /// Build the reductive decomposition k = h + m and report its checks
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
        /// Include the full Killing Gram matrix (rationals as "p/q")
        #[arg(long)]
        killing: bool,
    },
    /// Run the wall + curvature-determinant fatness test on a torus element
    FatCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated rational coordinates, e.g. "1/2,1/2"
        #[arg(long)]
        vector: Option<String>,
    },
    /// Certify symplectic fatness of the twistor bundle over K/H
    Twistor(CommonArgs),
    /// Compute the exact translation threshold moving a polytope off the walls
    Translate {
        #[command(flatten)]
        common: CommonArgs,
        /// Vertices as a JSON array, e.g. '[["1","1"],["-1","-1"]]'
        #[arg(long)]
        polytope: Option<String>,
        /// Direction indices for x_sigma, e.g. "1" (empty string = empty set)
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Replay the wall-vs-determinant equivalence on seeded random vectors
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on sampled numerators and denominators
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// List the built-in catalog entries and their expected verdicts
    Catalog {
        /// Print only the JSON document
        #[arg(long)]
        json: bool,
    },
}

fn load_spec(common: &CommonArgs) -> Result<ProblemSpec, Error> {
    let mut spec = match &common.spec {
        Some(path) => {
            let text = if path.as_os_str() == "-" {
                let mut buf = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
                    .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?
            };
            ProblemSpec::from_json(&text)?
        }
        None => {
            let family: Family = common
                .family
                .as_deref()
                .ok_or_else(|| Error::Parse("--family is required without --spec".into()))?
                .parse()?;
            let rank = common
                .rank
                .ok_or_else(|| Error::Parse("--rank is required without --spec".into()))?;
            ProblemSpec::new(family, rank)
        }
    };
    if let Some(f) = &common.family {
        spec.family = f.parse()?;
    }
    if let Some(r) = common.rank {
        spec.rank = r;
    }
    if let Some(list) = &common.centralizer {
        spec.subalgebra = Some(SubalgebraJson::Centralizer { sigma: parse_indices(list)? });
    }
    if let Some(name) = &common.subsystem {
        match name.as_str() {
            "d-type" => spec.subalgebra = Some(SubalgebraJson::DType),
            other => {
                return Err(Error::Parse(format!(
                    "unknown subsystem preset {other:?}; available: d-type"
                )))
            }
        }
    }
    if common.cartan_subalgebra {
        spec.subalgebra = Some(SubalgebraJson::Cartan);
    }
    Ok(spec)
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index {p:?} in {s:?}")))
        })
        .collect()
}

/// Writes one line to stdout; a closed pipe downstream ends the process
/// quietly instead of panicking.
fn write_stdout(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit<T: serde::Serialize>(doc: &T, summary: &str, quiet: bool) {
    write_stdout(&serde_json::to_string(doc).expect("serializable"));
    if !quiet {
        eprintln!("{summary}");
    }
}

fn emit_error(e: &Error) -> ExitCode {
    let doc = serde_json::json!({ "error": e.to_string() });
    write_stdout(&doc.to_string());
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Roots(common) => {
            let quiet = common.json;
            let spec = match load_spec(&common) {
                Ok(s) => s,
                Err(e) => return emit_error(&e),
            };
            let rs = match spec.root_system() {
                Ok(rs) => rs,
                Err(e) => return emit_error(&e),
            };
            let summary = format!(
                "{}{}: {} roots in dimension {}, simple system of {}",
                rs.family,
                rs.rank,
                rs.num_roots(),
                rs.ambient_dim,
                rs.simple_roots.len()
            );
            emit(&rs, &summary, quiet);
            ExitCode::SUCCESS
        }
        Command::Decompose { common, killing } => {
            let quiet = common.json;
            let out = (|| {
                let spec = load_spec(&common)?;
                let (l, sub) = liefat::problem::realize(&spec)?;
                let d = liefat::problem::realize_decomposition(&l, &sub)?;
                let mut report = DecompositionReport::from_decomposition(&d);
                if killing {
                    report = report.with_killing_gram(&d);
                }
                Ok::<_, Error>(report)
            })();
            match out {
                Ok(report) => {
                    let summary = format!(
                        "dim k = {}, dim h = {}, dim m = {}, checks {}",
                        report.dim,
                        report.dim_h,
                        report.dim_m,
                        if report.checks.all() { "all pass" } else { "have failures" }
                    );
                    emit(&report, &summary, quiet);
                    ExitCode::SUCCESS
                }
                Err(e) => emit_error(&e),
            }
        }
        Command::FatCheck { common, vector } => {
            let quiet = common.json;
            let out = (|| {
                let spec = load_spec(&common)?;
                let u = match &vector {
                    Some(text) => CartanVector::new(parse_rat_vec(text)?),
                    None => spec
                        .vector
                        .clone()
                        .ok_or_else(|| Error::Parse("no vector given (use --vector)".into()))?,
                };
                let (l, sub) = liefat::problem::realize(&spec)?;
                let d = liefat::problem::realize_decomposition(&l, &sub)?;
                fat_check(&u, &d)
            })();
            match out {
                Ok(cert) => {
                    let fat = cert.is_fat();
                    let summary = format!(
                        "verdict: {}, determinant {}",
                        if fat { "fat" } else { "not fat" },
                        cert.determinant.as_ref().map(fmt_rat).unwrap_or_default()
                    );
                    emit(&cert, &summary, quiet);
                    if fat {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => emit_error(&e),
            }
        }
        Command::Twistor(common) => {
            let quiet = common.json;
            let out = (|| {
                let spec = load_spec(&common)?;
                let (l, sub) = liefat::problem::realize(&spec)?;
                Ok::<_, Error>(certify_twistor(&l, &sub))
            })();
            match out {
                Ok(cert) => {
                    let summary = match &cert.failure_reason {
                        None => format!("certified fat: fiber {}, dim m = {}", cert.fiber, cert.dim_m),
                        Some(r) => format!("not certified: {r}"),
                    };
                    let code = match cert.failure_reason {
                        None => ExitCode::SUCCESS,
                        Some(FailureReason::InvalidSpec) => ExitCode::from(2),
                        Some(_) => ExitCode::from(1),
                    };
                    emit(&cert, &summary, quiet);
                    code
                }
                Err(e) => emit_error(&e),
            }
        }
        Command::Translate { common, polytope, sigma } => {
            let quiet = common.json;
            let out = (|| {
                let spec = load_spec(&common)?;
                let p = match &polytope {
                    Some(text) => Polytope::new(
                        serde_json::from_str::<Vec<CartanVector>>(text)
                            .map_err(|e| Error::Parse(format!("polytope: {e}")))?,
                    ),
                    None => spec
                        .polytope
                        .clone()
                        .ok_or_else(|| Error::Parse("no polytope given (use --polytope)".into()))?,
                };
                let indices: BTreeSet<usize> = match &sigma {
                    Some(text) => parse_indices(text)?.into_iter().collect(),
                    None => spec
                        .sigma
                        .clone()
                        .ok_or_else(|| Error::Parse("no sigma given (use --sigma)".into()))?
                        .into_iter()
                        .collect(),
                };
                let (l, sub) = liefat::problem::realize(&spec)?;
                let d = liefat::problem::realize_decomposition(&l, &sub)?;
                let direction = x_sigma(d.root_system(), &indices)?;
                translate_polytope(&p, &direction, &d)
            })();
            match out {
                Ok(report) => {
                    let summary = format!(
                        "c* = {}, fat at zero: {}, active walls: {}",
                        fmt_rat(&report.c_star),
                        report.fat_at_zero,
                        report.active_walls.len()
                    );
                    emit(&report, &summary, quiet);
                    ExitCode::SUCCESS
                }
                Err(e @ Error::NoEscapeDirection(_)) => {
                    let doc = serde_json::json!({ "error": e.to_string() });
                    write_stdout(&doc.to_string());
                    if !quiet {
                        eprintln!("{e}");
                    }
                    ExitCode::from(1)
                }
                Err(e) => emit_error(&e),
            }
        }
        Command::Oracle { common, samples, seed, bound } => {
            let quiet = common.json;
            if samples == 0 {
                return emit_error(&Error::Parse("--samples must be at least 1".into()));
            }
            let out = (|| {
                let spec = load_spec(&common)?;
                let (l, sub) = liefat::problem::realize(&spec)?;
                let d = liefat::problem::realize_decomposition(&l, &sub)?;
                run_oracle(&d, samples, seed, bound)
            })();
            match out {
                Ok(report) => {
                    let summary = format!(
                        "{}/{} agree ({} fat, {} not fat)",
                        report.agreements, report.samples, report.fat_count, report.not_fat_count
                    );
                    emit(&report, &summary, quiet);
                    if report.all_agree {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => emit_error(&e),
            }
        }
        Command::Catalog { json } => {
            let list: Vec<serde_json::Value> = catalog::entries()
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "name": e.name,
                        "expected_verdict": e.expected_verdict,
                        "spec": serde_json::from_str::<serde_json::Value>(e.spec_json)
                            .expect("catalog specs parse"),
                    })
                })
                .collect();
            let doc = serde_json::Value::Array(list);
            emit(&doc, &format!("{} catalog entries", catalog::entries().len()), json);
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
