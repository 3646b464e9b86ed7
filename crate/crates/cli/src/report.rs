use std::fmt::Write as _;

use idemnorm::DenseMatrix;
use serde::Serialize;
use serde_json::Value;

/// What a subcommand produced: machine-readable results, the text shown
/// without `--json`, and whether every check it ran passed.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub seeds: Vec<u64>,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn new(inputs: impl Serialize, results: impl Serialize, text: String, passed: bool) -> anyhow::Result<Self> {
        Ok(Self {
            inputs: serde_json::to_value(inputs)?,
            results: serde_json::to_value(results)?,
            seeds: Vec::new(),
            text,
            passed,
        })
    }

    pub fn with_seeds(mut self, seeds: &[u64]) -> Self {
        self.seeds = seeds.to_vec();
        self
    }
}

#[derive(Serialize)]
pub struct Versions {
    pub idemnorm: &'static str,
    pub cli: &'static str,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub subcommand: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub passed: bool,
    pub versions: Versions,
    pub seeds: Vec<u64>,
    pub wall_clock_ms: f64,
}

impl RunReport {
    pub fn new(subcommand: &'static str, outcome: &Outcome, wall_clock_ms: f64) -> Self {
        Self {
            command: std::env::args().collect(),
            subcommand,
            inputs: outcome.inputs.clone(),
            results: outcome.results.clone(),
            passed: outcome.passed,
            versions: Versions { idemnorm: idemnorm::VERSION, cli: env!("CARGO_PKG_VERSION") },
            seeds: outcome.seeds.clone(),
            wall_clock_ms,
        }
    }
}

/// Six decimal places.
pub fn dec(x: f64) -> String {
    format!("{x:.6}")
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn write_matrix(out: &mut String, label: &str, a: &DenseMatrix) {
    let _ = writeln!(out, "{label} ({}x{}):", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|v| format!("{v:>10.6}")).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

pub fn write_vector(out: &mut String, label: &str, v: &[f64]) {
    let cells: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    let _ = writeln!(out, "{label}: [{}]", cells.join(", "));
}
