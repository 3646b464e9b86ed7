use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use idemnorm::classify::{enumerate_classes, SweepOptions};
use idemnorm::exact::{build_path_witness, exact_norm};
use idemnorm::random::{expected_norm, expected_norm_exhaustive, RandomModel, TrialValue};
use idemnorm::repro::{self, CERT_TOL};
use idemnorm::{norm_bounds, BiGraph, BoundsOptions, GraphName};
use serde::Serialize;
use serde_json::json;

use crate::report::{dec, pass_fail, write_matrix, write_vector, Outcome};

#[derive(Args, Serialize, Clone, Copy)]
pub struct BoundsArgs {
    /// Target gap between the upper and lower bound [default: 1e-6, or
    /// 1e-9 for remark56].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Ascent iterations per restart.
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Seed of the random restarts.
    #[arg(long, default_value_t = BoundsOptions::default().seed)]
    pub restart_seed: u64,
}

impl BoundsArgs {
    fn options(&self, default_tol: f64) -> Result<BoundsOptions> {
        let tol = self.tol.unwrap_or(default_tol);
        if tol.is_nan() || tol <= 0.0 {
            bail!("--tol must be positive");
        }
        Ok(BoundsOptions { tol, max_iters: self.max_iters, restarts: self.restarts, seed: self.restart_seed })
    }
}

#[derive(Args, Serialize)]
pub struct GraphInput {
    /// Matrix file in the text or JSON format, or `-` for stdin.
    pub input: Option<PathBuf>,
    /// A catalog graph instead of a file, e.g. `trie` or `sigma:4,5`.
    #[arg(long, conflicts_with = "input")]
    pub graph: Option<GraphName>,
}

impl GraphInput {
    fn load(&self) -> Result<BiGraph> {
        if let Some(name) = self.graph {
            return Ok(name.graph()?);
        }
        let Some(path) = &self.input else {
            bail!("give a matrix file, `-` for stdin, or --graph NAME");
        };
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        Ok(BiGraph::parse(&text)?)
    }
}

#[derive(Args, Serialize)]
pub struct NormArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn norm(args: &NormArgs) -> Result<Outcome> {
    let g = args.graph.load()?;
    let opts = args.bounds.options(1e-6)?;
    let b = norm_bounds(&g.to_matrix(), &opts);
    let mut text = String::new();
    let _ = writeln!(text, "graph {}x{}, {} edges", g.m(), g.n(), g.edge_count());
    let _ = writeln!(text, "lower     {}", dec(b.lower));
    let _ = writeln!(text, "upper     {}", dec(b.upper));
    let _ = writeln!(text, "midpoint  {}", dec(b.midpoint()));
    let _ = writeln!(text, "gap       {:.3e}", b.gap());
    let _ = writeln!(text, "converged {} ({} iterations, {} restarts)", b.converged, b.iterations, b.restarts_used);
    let passed = b.converged;
    Ok(Outcome::new(args, json!({ "graph": g, "bounds": b, "midpoint": b.midpoint() }), text, passed)?
        .with_seeds(&[opts.seed]))
}

#[derive(Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Outcome> {
    let g = args.graph.load()?;
    let opts = args.bounds.options(1e-6)?;
    let r = idemnorm::classify::classify_with(&g, &opts);
    let mut text = String::new();
    let _ = writeln!(text, "label {}", r.label);
    if let (Some(v), Some(form)) = (r.label.eta_value(), r.label.closed_form()) {
        let _ = writeln!(text, "norm  {form} = {}", dec(v));
    }
    for (i, c) in r.per_component.iter().enumerate() {
        let matched = c.matched.map_or("none".to_string(), |j| format!("F{j}"));
        let _ = writeln!(
            text,
            "component {i}: {}x{} reduced to {}x{} [{}], fits {matched}",
            c.component.m(),
            c.component.n(),
            c.reduced.m(),
            c.reduced.n(),
            c.reduced.rows_as_strings().join(" ")
        );
    }
    if let Some(b) = &r.numeric {
        let _ = writeln!(text, "numeric [{}, {}] converged {}", dec(b.lower), dec(b.upper), b.converged);
    }
    let numeric = r.numeric.as_ref().map(|b| json!({ "lower": b.lower, "upper": b.upper, "converged": b.converged }));
    let results = json!({
        "label": r.label,
        "eta_value": r.label.eta_value(),
        "closed_form": r.label.closed_form(),
        "per_component": r.per_component,
        "numeric": numeric,
    });
    Ok(Outcome::new(args, results, text, true)?.with_seeds(&[opts.seed]))
}

#[derive(Args, Serialize)]
pub struct CatalogArgs {
    /// Show one graph; without it every listed name is shown.
    pub name: Option<GraphName>,
}

pub fn catalog(args: &CatalogArgs) -> Result<Outcome> {
    let mut text = String::new();
    let names = match args.name {
        Some(n) => vec![n],
        None => GraphName::listing(),
    };
    let mut entries = Vec::new();
    for name in names {
        let g = name.graph()?;
        let exact = exact_norm(name);
        if args.name.is_some() {
            let _ = writeln!(text, "{name} ({}x{})", g.m(), g.n());
            let _ = writeln!(text, "{g}");
            if let Some(v) = exact {
                let _ = writeln!(text, "norm {}", dec(v));
            }
        } else {
            let v = exact.map_or("-".to_string(), dec);
            let _ = writeln!(text, "{:<18} {:>2}x{:<2} {v}", name.to_string(), g.m(), g.n());
        }
        entries.push(json!({ "name": name.to_string(), "graph": g, "exact": exact }));
    }
    Outcome::new(args, entries, text, true)
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = CERT_TOL)]
    pub tol: f64,
}

pub fn verify_certs(args: &VerifyArgs) -> Result<Outcome> {
    let reports = repro::certificate_suite(args.tol)?;
    let mut text = String::new();
    for r in &reports {
        let value = r.exact_value.map_or("-".to_string(), dec);
        let _ = writeln!(text, "{} {:<18} {value}", pass_fail(r.passed), r.graph);
        for c in r.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(text, "    failed: {} ({:.3e})", c.name, c.value);
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let _ = writeln!(text, "{} of {} certificates pass", reports.iter().filter(|r| r.passed).count(), reports.len());
    Outcome::new(args, reports, text, passed)
}

#[derive(Args, Serialize)]
pub struct TableArgs {
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn table(args: &TableArgs) -> Result<Outcome> {
    let opts = args.bounds.options(1e-6)?;
    let rows = repro::table(&opts)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<3} {:<34} {:<20} {:>9} {:>9} {:>9} {:>5}",
        "#", "graphs", "closed form", "value", "lower", "upper", "cert"
    );
    let mut passed = true;
    for r in &rows {
        let ok = r.converged && (r.midpoint() - r.exact).abs() <= 1e-5;
        passed &= ok && r.certificates_pass;
        let names: Vec<String> = r.graphs.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(
            text,
            "{:<3} {:<34} {:<20} {:>9} {:>9} {:>9} {:>5}",
            r.item,
            names.join(" "),
            r.closed_form,
            dec(r.exact),
            dec(r.lower),
            dec(r.upper),
            pass_fail(r.certificates_pass)
        );
    }
    let results: Vec<_> = rows
        .iter()
        .map(|r| json!({ "row": r, "decimal5": format!("{:.5}", r.exact), "midpoint": r.midpoint() }))
        .collect();
    Ok(Outcome::new(args, results, text, passed)?.with_seeds(&[opts.seed]))
}

#[derive(Args, Serialize)]
pub struct PathsArgs {
    #[arg(long, default_value_t = 20)]
    pub max_n: usize,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn paths(args: &PathsArgs) -> Result<Outcome> {
    if args.max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let opts = args.bounds.options(1e-6)?;
    let rows = repro::paths(args.max_n, &opts)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "path_norm", "popa_lower", "popa_upper", "numeric_lower", "numeric_upper", "four_over_pi"])?;
    let mut passed = true;
    for r in &rows {
        let (lo, up) = match r.numeric {
            Some((lo, up)) => {
                passed &= lo <= r.path_norm + 1e-5 && up >= r.path_norm - 1e-5;
                (dec(lo), dec(up))
            }
            None => (String::new(), String::new()),
        };
        passed &= r.popa_lower <= r.path_norm + 1e-12 && r.path_norm < r.four_over_pi;
        w.write_record([
            r.n.to_string(),
            dec(r.path_norm),
            dec(r.popa_lower),
            dec(r.popa_upper),
            lo,
            up,
            dec(r.four_over_pi),
        ])?;
    }
    let text = String::from_utf8(w.into_inner()?)?;
    Ok(Outcome::new(args, rows, text, passed)?.with_seeds(&[opts.seed]))
}

#[derive(Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 4)]
    pub max_m: usize,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Run the consistency checks and fail if any does not hold.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Outcome> {
    let opts = args.bounds.options(1e-6)?;
    let report = enumerate_classes(&SweepOptions { max_m: args.max_m, max_n: args.max_n, bounds: opts })?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} matrices up to {}x{} in {} isomorphism classes ({} not converged)",
        report.matrices,
        report.max_m,
        report.max_n,
        report.classes.len(),
        report.non_converged
    );
    let _ = writeln!(text, "{:<15} {:>8} {:>9}", "label", "classes", "matrices");
    for (label, (classes, matrices)) in &report.histogram {
        let _ = writeln!(text, "{label:<15} {classes:>8} {matrices:>9}");
    }
    let passed = if args.check {
        for c in &report.checks {
            let _ = writeln!(text, "{} {}", pass_fail(c.pass), c.name);
            for f in c.failures.iter().take(10) {
                let _ = writeln!(text, "    {f}");
            }
        }
        report.passed()
    } else {
        true
    };
    Ok(Outcome::new(args, &report, text, passed)?.with_seeds(&[opts.seed]))
}

#[derive(Args, Serialize)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Average over every graph of the given shape instead of sampling.
    #[arg(long, conflicts_with = "csv")]
    pub exhaustive: bool,
    /// Write per-trial bounds to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn random(args: &RandomArgs) -> Result<Outcome> {
    let opts = args.bounds.options(1e-6)?;
    let mut text = String::new();
    if args.exhaustive {
        let e = expected_norm_exhaustive(args.m, args.n, args.p, &opts)?;
        let _ = writeln!(text, "exhaustive over {} graphs of shape {}x{}, p = {}", e.graphs, e.m, e.n, e.p);
        let _ = writeln!(text, "mean {:.12}", e.mean);
        let _ = writeln!(text, "graphs bounded numerically: {} ({} not converged)", e.numeric_graphs, e.non_converged);
        let passed = e.non_converged == 0;
        return Ok(Outcome::new(args, e, text, passed)?.with_seeds(&[opts.seed]));
    }
    let model = RandomModel::new(args.m, args.n, args.p, args.seed)?;
    let est = expected_norm(&model, args.trials, &opts)?;
    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(["trial", "lower", "upper", "converged"])?;
        for t in &est.per_trial_values {
            let TrialValue { trial, lower, upper, converged } = *t;
            w.write_record([trial.to_string(), lower.to_string(), upper.to_string(), converged.to_string()])?;
        }
        w.flush()?;
    }
    let _ = writeln!(text, "G({}, {}, {}) over {} trials, seed {}", args.m, args.n, args.p, est.trials, args.seed);
    let _ = writeln!(text, "mean      {}", dec(est.mean));
    let _ = writeln!(text, "std error {}", dec(est.std_error));
    let _ = writeln!(text, "not converged {}", est.non_converged);
    let _ = writeln!(text, "generator {}", est.generator);
    let passed = est.non_converged == 0;
    Ok(Outcome::new(args, est, text, passed)?.with_seeds(&[args.seed, opts.seed]))
}

#[derive(Args, Serialize)]
pub struct RemarkArgs {
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

pub fn remark56(args: &RemarkArgs) -> Result<Outcome> {
    let opts = args.bounds.options(repro::remark_options().tol)?;
    let report = repro::remark56(&opts)?;
    let mut text = String::new();
    for r in &report.rows {
        let _ = writeln!(
            text,
            "{} {:<16} target {:.5} midpoint {} [{}, {}] {} iterations {} restarts",
            pass_fail(r.pass),
            r.graph.to_string(),
            r.target,
            dec(r.midpoint),
            dec(r.lower),
            dec(r.upper),
            r.iterations,
            r.restarts
        );
    }
    let passed = report.passed;
    Ok(Outcome::new(args, report, text, passed)?.with_seeds(&[opts.seed]))
}

#[derive(Args, Serialize)]
pub struct WitnessArgs {
    #[arg(long)]
    pub path_n: usize,
}

pub fn witness(args: &WitnessArgs) -> Result<Outcome> {
    if args.path_n == 0 {
        bail!("--path-n must be at least 1");
    }
    let w = build_path_witness(args.path_n)?;
    let mut text = String::new();
    let _ = writeln!(text, "path witness n = {}, value {}", w.n, dec(w.attained_value()));
    for (label, m) in [("W", &w.w), ("R", &w.r), ("S", &w.s), ("R~", &w.r_ext), ("S~", &w.s_ext), ("U", &w.u)] {
        write_matrix(&mut text, label, m);
    }
    for (label, v) in [("x", &w.x), ("y", &w.y), ("a", &w.a), ("b", &w.b_weights)] {
        write_vector(&mut text, label, v);
    }
    let residuals = w.residuals();
    for (name, r) in &residuals {
        let _ = writeln!(text, "residual {name}: {r:.3e}");
    }
    let passed = w.check(CERT_TOL).is_ok();
    let results = json!({ "witness": w, "attained": w.attained_value(), "residuals": residuals });
    Outcome::new(args, results, text, passed)
}
