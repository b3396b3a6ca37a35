//! `rolle-lab`: certified zero-counting bounds from problem files, with oracle cross-checks.
//!
//! Exit status: 0 success, 1 invalid input, 2 unmet hypothesis, 3 contradiction
//! (a bound below its oracle count, or a failed identity).

mod commands;
mod error;
mod problem;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rolle_core::corpus::{run_instance, CorpusKind, InstanceOutcome};
use serde_json::{json, Value};

use crate::commands::Context;
use crate::error::CliError;
use crate::problem::Payload;
use crate::report::{render, to_value, SCHEMA, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "rolle-lab", version, about = "Certified zero-counting bounds with oracle cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run the independent oracle and compare it with the bound.
    #[arg(long, global = true)]
    verify: bool,
    /// Seed for every randomized step (overrides a `seed` field in the file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Record wall-clock time in the report (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Worker threads for corpus sweeps.
    #[arg(long, global = true, env = "ROLLE_LAB_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    Descartes { file: PathBuf },
    Dlvp { file: PathBuf },
    Kim { file: PathBuf },
    Argvar { file: PathBuf },
    Jensen { file: PathBuf },
    Bernstein { file: PathBuf },
    Voorhoeve { file: PathBuf },
    Pseudopoly { file: PathBuf },
    Polya { file: PathBuf },
    Chain { file: PathBuf },
    Tangency { file: PathBuf },
    Meander { file: PathBuf },
    Mult { file: PathBuf },
    Fuchs { file: PathBuf },
    Curve { file: PathBuf },
    /// Re-check an emitted report.
    Verify { file: PathBuf },
    /// Seeded sweep over generated instances.
    Corpus {
        /// Sweep configuration (`kind`, `count`, `seed`); flags override it.
        file: Option<PathBuf>,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        count: Option<u64>,
    },
}

impl Command {
    fn problem(&self) -> Option<(&'static str, &PathBuf)> {
        let out = match self {
            Command::Descartes { file } => ("descartes", file),
            Command::Dlvp { file } => ("dlvp", file),
            Command::Kim { file } => ("kim", file),
            Command::Argvar { file } => ("argvar", file),
            Command::Jensen { file } => ("jensen", file),
            Command::Bernstein { file } => ("bernstein", file),
            Command::Voorhoeve { file } => ("voorhoeve", file),
            Command::Pseudopoly { file } => ("pseudopoly", file),
            Command::Polya { file } => ("polya", file),
            Command::Chain { file } => ("chain", file),
            Command::Tangency { file } => ("tangency", file),
            Command::Meander { file } => ("meander", file),
            Command::Mult { file } => ("mult", file),
            Command::Fuchs { file } => ("fuchs", file),
            Command::Curve { file } => ("curve", file),
            Command::Verify { file } => ("verify", file),
            Command::Corpus { .. } => return None,
        };
        Some(out)
    }
}

/// A finished run: the report and whether it records a contradiction.
struct Outcome {
    report: Value,
    contradiction: bool,
}

fn file_seed(p: &Payload) -> Result<Option<u64>, CliError> {
    if p.has("seed") {
        p.natural("seed").map(Some)
    } else {
        Ok(None)
    }
}

fn run_problem(cli: &Cli, kind: &str, file: &Path, start: Instant) -> Result<Outcome, CliError> {
    let raw = problem::read_file(file)?;
    let payload = if kind == "verify" {
        Payload::root(json!({ "report": raw }))?
    } else {
        let p = Payload::root(raw)?;
        if let Some(found) = p.opt_string("kind")? {
            if found != kind {
                return Err(CliError::KindMismatch {
                    expected: kind.into(),
                    found,
                });
            }
        }
        p
    };
    let seed = match cli.seed {
        Some(s) => s,
        None if kind == "verify" => 0,
        None => file_seed(&payload)?.unwrap_or(0),
    };
    let ctx = Context { verify: cli.verify, seed };
    let report = commands::run(kind, &payload, &ctx)?;
    let timing = cli.timing.then(|| start.elapsed().as_millis());
    Ok(Outcome {
        contradiction: report.contradiction(),
        report: report.to_json(seed, timing),
    })
}

fn run_corpus(
    cli: &Cli,
    file: Option<&PathBuf>,
    kind: Option<&str>,
    count: Option<u64>,
    start: Instant,
) -> Result<Outcome, CliError> {
    let cfg = match file {
        Some(f) => Payload::root(problem::read_file(f)?)?,
        None => Payload::root(json!({}))?,
    };
    let kind_name = match kind {
        Some(k) => k.to_string(),
        None => cfg.string("kind")?,
    };
    let kind: CorpusKind = kind_name
        .parse()
        .map_err(|e: rolle_core::Error| CliError::field("kind", e.to_string()))?;
    let count = match count {
        Some(c) => c,
        None => cfg.natural("count")?,
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => file_seed(&cfg)?.unwrap_or(0),
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::field("threads", e.to_string()))?;
    // instances are independent; collect keeps index order
    let outcomes: Vec<Result<InstanceOutcome, (u64, String)>> = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| run_instance(kind, seed, i).map_err(|e| (i, e.to_string())))
            .collect()
    });
    let mut instances = Vec::with_capacity(outcomes.len());
    let (mut passed, mut failed, mut inconclusive, mut errors) = (0u64, 0u64, 0u64, 0u64);
    let mut first_failure: Option<u64> = None;
    for o in &outcomes {
        match o {
            Ok(out) => {
                if !out.passed() {
                    failed += 1;
                    first_failure.get_or_insert(out.index);
                } else if out.inconclusive {
                    inconclusive += 1;
                } else {
                    passed += 1;
                }
                instances.push(to_value(out));
            }
            Err((i, msg)) => {
                errors += 1;
                instances.push(json!({ "index": i, "error": msg }));
            }
        }
    }
    let mut report = json!({
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "kind": "corpus",
        "corpus_kind": kind.name(),
        "count": count,
        "seed": seed.to_string(),
        "passed": passed,
        "failed": failed,
        "inconclusive": inconclusive,
        "errors": errors,
        "ok": failed == 0,
        "instances": instances,
    });
    if let Some(i) = first_failure {
        report["first_failure"] = i.into();
    }
    if cli.timing {
        report["timing_ms"] = (start.elapsed().as_millis() as u64).into();
    }
    Ok(Outcome {
        report,
        contradiction: failed > 0,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Corpus { file, kind, count } => run_corpus(&cli, file.as_ref(), kind.as_deref(), *count, start),
        cmd => {
            let (kind, file) = cmd.problem().expect("problem subcommand");
            run_problem(&cli, kind, file, start)
        }
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("rolle-lab: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = render(&outcome.report, cli.format == Format::Json);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("rolle-lab: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if outcome.contradiction {
        eprintln!("rolle-lab: contradiction: a bound is below its oracle count or an identity failed");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
