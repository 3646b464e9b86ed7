mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::*;
use report::{Outcome, RunReport};

/// Norms of idempotent Schur multipliers.
///
/// Exit status is 0 when every check passes, 1 when a check fails and 2
/// on bad input.
#[derive(Parser)]
#[command(name = "idemnorm", version)]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-sided numeric bounds for the norm of a 0–1 matrix.
    Norm(NormArgs),
    /// Exact norm class of a 0–1 matrix.
    Classify(ClassifyArgs),
    /// Named graphs and their known norms.
    Catalog(CatalogArgs),
    /// Check every stored norm certificate.
    VerifyCerts(VerifyArgs),
    /// The nine small exact norms, recomputed.
    Table(TableArgs),
    /// Path norms against their limit 4/π, as CSV.
    Paths(PathsArgs),
    /// Classify every small 0–1 matrix and cross-check against numeric bounds.
    Enumerate(EnumerateArgs),
    /// Expected norm of a random bipartite graph.
    Random(RandomArgs),
    /// Numeric norms of the four obstruction graphs against their estimates.
    Remark56(RemarkArgs),
    /// The explicit factorization and witness vectors for a path.
    Witness(WitnessArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Classify(_) => "classify",
            Command::Catalog(_) => "catalog",
            Command::VerifyCerts(_) => "verify-certs",
            Command::Table(_) => "table",
            Command::Paths(_) => "paths",
            Command::Enumerate(_) => "enumerate",
            Command::Random(_) => "random",
            Command::Remark56(_) => "remark56",
            Command::Witness(_) => "witness",
        }
    }

    fn run(&self) -> anyhow::Result<Outcome> {
        match self {
            Command::Norm(a) => norm(a),
            Command::Classify(a) => classify_cmd(a),
            Command::Catalog(a) => catalog(a),
            Command::VerifyCerts(a) => verify_certs(a),
            Command::Table(a) => table(a),
            Command::Paths(a) => paths(a),
            Command::Enumerate(a) => enumerate(a),
            Command::Random(a) => random(a),
            Command::Remark56(a) => remark56(a),
            Command::Witness(a) => witness(a),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.command.run() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let text = if cli.json {
        let report = RunReport::new(cli.command.name(), &outcome, elapsed);
        match serde_json::to_string_pretty(&report) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        outcome.text
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
