//! `tkg`: certificate-producing analysis of twisted k-graph algebras.
//!
//! Exit codes: 0 for a certified or passing result, 2 for UNKNOWN, 1 for
//! errors, invalid inputs and failed checks.

mod commands;
mod enc;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use twisted_kgraph::io::{parse_cocycle, parse_graph, serialize_graph};
use twisted_kgraph::{builtin, cocycle::CocycleSpec, validate_kgraph, KGraph};

#[derive(Parser, Debug)]
#[command(name = "tkg", version, about = "Simplicity certificates for twisted k-graph C*-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Also write the structured report to this file.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    #[value(alias = "structured")]
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the factorization property and, with --cocycle, the cocycle identity.
    Validate(Inputs),
    /// Cofinality, aperiodicity, connectivity and the periodicity lattice.
    Analyze(Inputs),
    /// The periodicity lattice with its exactness certificate.
    Per(Inputs),
    /// Isotropy bicharacter from the groupoid oracle, its centre, and the closed form.
    Omega(Inputs),
    /// Simplicity verdict with certificate.
    Simplicity(Inputs),
    /// Property suites of the groupoid oracle.
    Oracle(Inputs),
}

#[derive(clap::Args, Debug)]
pub struct Inputs {
    /// Graph file, or `builtin:NAME` (e.g. `builtin:B2xT1`).
    pub graph: String,
    /// Cocycle file.
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// Degree bound, in every coordinate.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub bound: Option<u32>,
    /// Oracle depth.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub depth: Option<u32>,
}

/// A loaded input with its digest.
pub struct Loaded {
    pub graph: KGraph,
    pub cocycle: Option<CocycleSpec>,
    pub digests: Value,
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(inputs: &Inputs) -> Result<Loaded, String> {
    let (graph, graph_digest) = match inputs.graph.strip_prefix("builtin:") {
        Some(name) => {
            let g = builtin(name).map_err(|e| e.to_string())?;
            let d = json!({ "builtin": name, "sha256": sha256(serialize_graph(&g).as_bytes()) });
            (g, d)
        }
        None => {
            let text = std::fs::read_to_string(&inputs.graph).map_err(|e| format!("{}: {e}", inputs.graph))?;
            let g = parse_graph(&text).map_err(|e| format!("{}: {e}", inputs.graph))?;
            (g, json!({ "path": inputs.graph, "sha256": sha256(text.as_bytes()) }))
        }
    };
    let mut digests = json!({ "graph": graph_digest });
    let cocycle = match &inputs.cocycle {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let c = parse_cocycle(&text, &graph).map_err(|e| format!("{}: {e}", p.display()))?;
            digests["cocycle"] = json!({ "path": p.display().to_string(), "sha256": sha256(text.as_bytes()) });
            Some(c)
        }
        None => None,
    };
    Ok(Loaded { graph, cocycle, digests })
}

/// What a subcommand produced.
pub struct Outcome {
    pub exit: u8,
    pub bounds: Value,
    pub result: Value,
}

fn human(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        human(x, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", compact(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", compact(v))),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, inputs) = match &cli.command {
        Command::Validate(i) => ("validate", i),
        Command::Analyze(i) => ("analyze", i),
        Command::Per(i) => ("per", i),
        Command::Omega(i) => ("omega", i),
        Command::Simplicity(i) => ("simplicity", i),
        Command::Oracle(i) => ("oracle", i),
    };
    let run = || -> Result<(Loaded, Outcome), String> {
        let loaded = load(inputs)?;
        if !matches!(cli.command, Command::Validate(_)) {
            let report = validate_kgraph(&loaded.graph);
            if let Some(v) = report.violations.first() {
                return Err(format!("{}: not a k-graph: {v} (see `tkg validate`)", inputs.graph));
            }
        }
        let outcome = match &cli.command {
            Command::Validate(i) => commands::validate(&loaded, i),
            Command::Analyze(i) => commands::analyze(&loaded, i),
            Command::Per(i) => commands::per(&loaded, i),
            Command::Omega(i) => commands::omega(&loaded, i),
            Command::Simplicity(i) => commands::simplicity(&loaded, i),
            Command::Oracle(i) => commands::oracle(&loaded, i),
        }?;
        Ok((loaded, outcome))
    };
    let (loaded, outcome) = match run() {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let doc = json!({
        "tool": "tkg",
        "version": env!("CARGO_PKG_VERSION"),
        "command": name,
        "inputs": loaded.digests,
        "bounds": outcome.bounds,
        "result": outcome.result,
        "exit_code": outcome.exit,
    });
    let structured = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    if let Some(p) = &cli.emit {
        if let Err(e) = std::fs::write(p, &structured) {
            eprintln!("error: {}: {e}", p.display());
            return ExitCode::from(1);
        }
    }
    match cli.format {
        Format::Json => print!("{structured}"),
        Format::Human => {
            let mut out = format!("tkg {name}\n");
            human(&doc["result"], 2, &mut out);
            print!("{out}");
        }
    }
    ExitCode::from(outcome.exit)
}
