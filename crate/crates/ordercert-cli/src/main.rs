use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ordercert_cli::document::{CertificateDocument, Evidence};
use ordercert_cli::runner::{run, CommandSpec};
use ordercert_cli::verify::{verify_document, verify_exit_code};

#[derive(Parser)]
#[command(
    name = "ordercert",
    about = "Certify or refute orderability properties of built-in groups",
    long_about = "Runs finite orderability checks on concrete groups and emits \
replayable JSON certificates. Exit codes: 0 certified/pass, 1 obstructed/impossible, \
2 inconclusive, 3 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an orderability property of a group.
    Check {
        /// One of: lo, co, bo, circ, upp, diffuse.
        #[arg(long)]
        property: String,
        /// Group spec: free:N, abelian:N, cyclic:N, klein, heisenberg,
        /// laurent-z, product(spec,spec).
        #[arg(long)]
        group: String,
        /// Comma-separated element words ("a b^-1, a^2"); `id` is the
        /// identity. Required for lo/co/bo/upp/diffuse.
        #[arg(long, default_value = "")]
        elements: String,
        /// Production-step bound for closure searches.
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Conjugator ball radius for the bo criterion.
        #[arg(long, default_value_t = 1)]
        radius: u32,
        /// Ball radius for the circ property.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Element cap for closures; node cap for the circ search.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// json (default) or text.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Close a cone under conjugation and count the orbit.
    Orbit {
        #[arg(long)]
        group: String,
        /// One of: standard, q, qi, p, pi.
        #[arg(long)]
        cone: String,
        /// Period parameter for qi/pi cones.
        #[arg(long)]
        i: Option<u32>,
        /// Phase parameter for qi/pi cones (default 0).
        #[arg(long)]
        phase: Option<u32>,
        /// Conjugation closure step bound.
        #[arg(long, default_value_t = 16)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Check which conjugation exponents keep a probe set positive.
    Recur {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cone: String,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        phase: Option<u32>,
        /// The conjugating element.
        #[arg(long)]
        g: String,
        /// Comma-separated probe elements (must be cone members).
        #[arg(long)]
        probes: String,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Check cone axioms (and optionally invariance) on a ball.
    ConeCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cone: String,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        phase: Option<u32>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// bi or conradian.
        #[arg(long)]
        invariance: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Replay a certificate document and accept or reject it.
    Verify {
        file: PathBuf,
    },
}

fn split_list(raw: &str) -> Vec<String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

fn emit(doc: &CertificateDocument, out: Option<&PathBuf>, format: &str) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(doc).expect("documents serialize");
    match out {
        Some(path) => fs::write(path, json + "\n")?,
        None if format == "text" => print_text(doc),
        None => println!("{json}"),
    }
    if out.is_some() && format == "text" {
        print_text(doc);
    }
    Ok(())
}

fn print_text(doc: &CertificateDocument) {
    println!("property: {}", doc.property);
    println!("group:    {}", doc.group);
    println!("verdict:  {}", doc.verdict);
    match &doc.evidence {
        Evidence::SignSearch { signs, witnesses, .. } => {
            if let Some(signs) = signs {
                println!("signs:    {signs:?}");
            }
            if !witnesses.is_empty() {
                println!("witnesses: {} identity derivations", witnesses.len());
            }
        }
        Evidence::UppCondition {
            holds,
            counterexample,
            ..
        } => {
            println!("holds:    {holds}");
            if let Some(pair) = counterexample {
                println!("failing pair: X={:?} Y={:?}", pair.x, pair.y);
            }
        }
        Evidence::ExtremePoints { points, .. } => {
            println!("extreme points: {points:?}");
        }
        Evidence::Preorder { assignment, nodes, .. } => match assignment {
            Some(entries) => println!("assignment on {} triples", entries.len()),
            None => println!("refuted after {nodes} search nodes"),
        },
        Evidence::Orbit { cones, .. } => {
            println!("orbit size: {}", cones.len());
        }
        Evidence::Recurrence {
            found,
            closed_form_bound,
            ..
        } => {
            println!("recurrence exponents: {found:?}");
            if let Some(bound) = closed_form_bound {
                println!("closed form: none beyond {bound}");
            }
        }
        Evidence::ConeCheck {
            axioms_passed,
            invariance_passed,
            violation,
        } => {
            println!("axioms passed: {axioms_passed}");
            if let Some(inv) = invariance_passed {
                println!("invariance passed: {inv}");
            }
            if let Some(v) = violation {
                println!("violation: {v}");
            }
        }
        Evidence::Diagnostic { message } => println!("error: {message}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { file } => {
            let raw = match fs::read_to_string(&file) {
                Ok(raw) => raw,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", file.display());
                    return ExitCode::from(3);
                }
            };
            let doc: CertificateDocument = match serde_json::from_str(&raw) {
                Ok(doc) => doc,
                Err(e) => {
                    eprintln!("cannot parse {}: {e}", file.display());
                    return ExitCode::from(3);
                }
            };
            let result = verify_document(&doc);
            match &result {
                Ok(()) => println!("accepted: {} / {}", doc.property, doc.verdict),
                Err(e) => println!("{e}"),
            }
            verify_exit_code(&result)
        }
        other => {
            let (spec, out, format) = match other {
                Command::Check {
                    property,
                    group,
                    elements,
                    depth,
                    radius,
                    k,
                    budget,
                    out,
                    format,
                } => (
                    CommandSpec::Check {
                        property,
                        group,
                        elements: split_list(&elements),
                        depth,
                        radius,
                        k,
                        budget,
                    },
                    out,
                    format,
                ),
                Command::Orbit {
                    group,
                    cone,
                    i,
                    phase,
                    bound,
                    out,
                    format,
                } => (
                    CommandSpec::Orbit {
                        group,
                        cone,
                        i,
                        phase,
                        bound,
                    },
                    out,
                    format,
                ),
                Command::Recur {
                    group,
                    cone,
                    i,
                    phase,
                    g,
                    probes,
                    n_max,
                    out,
                    format,
                } => (
                    CommandSpec::Recur {
                        group,
                        cone,
                        i,
                        phase,
                        g,
                        probes: split_list(&probes),
                        n_max,
                    },
                    out,
                    format,
                ),
                Command::ConeCheck {
                    group,
                    cone,
                    i,
                    phase,
                    radius,
                    invariance,
                    out,
                    format,
                } => (
                    CommandSpec::ConeCheck {
                        group,
                        cone,
                        i,
                        phase,
                        radius,
                        invariance,
                    },
                    out,
                    format,
                ),
                Command::Verify { .. } => unreachable!("handled above"),
            };
            let doc = run(&spec);
            if let Err(e) = emit(&doc, out.as_ref(), &format) {
                eprintln!("cannot write output: {e}");
                return ExitCode::from(3);
            }
            doc.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
