use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{classify_structure, e_graphs, NormClass};
use crate::bigraph::{BiGraph, CanonicalKey};
use crate::bounds::{norm_bounds, BoundsOptions};
use crate::error::{Error, Result};
use crate::exact::ETA;

const ORACLE_TOL: f64 = 1e-5;
const GAP_MARGIN: f64 = 1e-4;
const CERTIFIED_WIDTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepOptions {
    pub max_m: usize,
    pub max_n: usize,
    pub bounds: BoundsOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { max_m: 4, max_n: 4, bounds: BoundsOptions::default() }
    }
}

/// One isomorphism class of 0–1 matrices, with the number of matrices
/// in it across all enumerated shapes (transposes included).
#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedClass {
    pub key: CanonicalKey,
    pub representative: BiGraph,
    pub matrices: usize,
    pub label: NormClass,
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
    pub twin_free_connected: bool,
    pub max_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub max_m: usize,
    pub max_n: usize,
    pub matrices: usize,
    pub classes: Vec<EnumeratedClass>,
    /// label → (classes, matrices)
    pub histogram: BTreeMap<String, (usize, usize)>,
    pub non_converged: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Every 0–1 matrix of shape `m × n` with `1 ≤ m ≤ max_m`, `1 ≤ n ≤ max_n`,
/// grouped by isomorphism, classified and bounded numerically.
pub fn enumerate_classes(opts: &SweepOptions) -> Result<SweepReport> {
    if opts.max_m == 0 || opts.max_n == 0 || opts.max_m * opts.max_n > 25 || opts.max_m.max(opts.max_n) > 8 {
        return Err(Error::InvalidInput(format!(
            "enumeration up to {}x{} is out of range (need 1 ≤ m·n ≤ 25)",
            opts.max_m, opts.max_n
        )));
    }
    let mut groups: HashMap<CanonicalKey, (BiGraph, usize)> = HashMap::new();
    let mut matrices = 0;
    for m in 1..=opts.max_m {
        for n in 1..=opts.max_n {
            let keyed: Vec<(CanonicalKey, u64)> = (0..1u64 << (m * n))
                .into_par_iter()
                .map(|mask| {
                    let g = from_mask(m, n, mask);
                    (g.canonical_key().expect("small shape"), mask)
                })
                .collect();
            matrices += keyed.len();
            for (key, mask) in keyed {
                // the first matrix met in (m, n, mask) order represents the class
                groups.entry(key).or_insert_with(|| (from_mask(m, n, mask), 0)).1 += 1;
            }
        }
    }
    let mut reps: Vec<(CanonicalKey, BiGraph, usize)> = groups.into_iter().map(|(k, (g, c))| (k, g, c)).collect();
    reps.sort_by_key(|r| r.0);

    let classes: Vec<EnumeratedClass> = reps
        .into_par_iter()
        .map(|(key, g, count)| {
            let (label, _) = classify_structure(&g);
            let b = norm_bounds(&g.to_matrix(), &opts.bounds);
            EnumeratedClass {
                key,
                matrices: count,
                label,
                lower: b.lower,
                upper: b.upper,
                converged: b.converged,
                twin_free_connected: g.is_connected() && g.is_twin_free(),
                max_degree: g.max_degree(),
                representative: g,
            }
        })
        .collect();

    let mut histogram: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in &classes {
        let e = histogram.entry(c.label.to_string()).or_default();
        e.0 += 1;
        e.1 += c.matrices;
    }
    let non_converged = classes.iter().filter(|c| !c.converged).count();
    let checks = vec![
        oracle_check(&classes),
        gap_check(&classes),
        label_check(&classes, opts.max_m, opts.max_n),
        degree_check(&classes),
    ];
    Ok(SweepReport { max_m: opts.max_m, max_n: opts.max_n, matrices, classes, histogram, non_converged, checks })
}

fn from_mask(m: usize, n: usize, mask: u64) -> BiGraph {
    BiGraph::from_fn(m, n, |i, j| mask >> (i * n + j) & 1 == 1)
}

fn describe(c: &EnumeratedClass) -> String {
    format!("{} [{:.7}, {:.7}] {}", c.representative.rows_as_strings().join("/"), c.lower, c.upper, c.label)
}

fn outcome(name: &'static str, failures: Vec<String>) -> CheckOutcome {
    CheckOutcome { name, pass: failures.is_empty(), failures }
}

/// Exact labels are bracketed by the numeric bounds; the rest sit above `η_6`.
fn oracle_check(classes: &[EnumeratedClass]) -> CheckOutcome {
    let bad = classes.iter().filter(|c| match c.label {
        NormClass::Eta(k) => {
            let eta = ETA.get(k);
            c.lower > eta + ORACLE_TOL || c.upper < eta - ORACLE_TOL
        }
        NormClass::AtLeastEta6 => c.lower < ETA.get(6) - ORACLE_TOL,
    });
    outcome("oracle-agreement", bad.map(describe).collect())
}

/// No tight interval falls strictly between consecutive `η`.
fn gap_check(classes: &[EnumeratedClass]) -> CheckOutcome {
    let bad = classes.iter().filter(|c| {
        c.converged
            && c.upper - c.lower < CERTIFIED_WIDTH
            && (1..=6).any(|j| c.lower > ETA.get(j - 1) + GAP_MARGIN && c.upper < ETA.get(j) - GAP_MARGIN)
    });
    outcome("gaps-empty", bad.map(describe).collect())
}

/// The exact labels seen are those whose `E_k` fits, each `E_k` carrying
/// its own label.
fn label_check(classes: &[EnumeratedClass], max_m: usize, max_n: usize) -> CheckOutcome {
    let fits = |g: &BiGraph| {
        (g.m() <= max_m && g.n() <= max_n) || (g.n() <= max_m && g.m() <= max_n)
    };
    let mut expected: BTreeSet<usize> = BTreeSet::from([0]);
    let mut failures = Vec::new();
    for (i, e) in e_graphs().iter().enumerate() {
        let k = i + 1;
        if !fits(e) {
            continue;
        }
        expected.insert(k);
        let key = e.canonical_key().expect("small");
        match classes.iter().find(|c| c.key == key) {
            Some(c) if c.label == NormClass::Eta(k) => {}
            Some(c) => failures.push(format!("E{k} labelled {}", c.label)),
            None => failures.push(format!("E{k} not enumerated")),
        }
    }
    let realized: BTreeSet<usize> = classes
        .iter()
        .filter_map(|c| match c.label {
            NormClass::Eta(k) => Some(k),
            NormClass::AtLeastEta6 => None,
        })
        .collect();
    if realized != expected {
        failures.push(format!("realized exact labels {realized:?}, expected {expected:?}"));
    }
    outcome("labels-realized", failures)
}

/// Twin-free connected graphs with norm strictly between `1` and `η_4`
/// have maximum degree two.
fn degree_check(classes: &[EnumeratedClass]) -> CheckOutcome {
    let bad = classes.iter().filter(|c| {
        let mid = 0.5 * (c.lower + c.upper);
        c.twin_free_connected
            && c.converged
            && mid > 1.0 + GAP_MARGIN
            && mid < ETA.get(4) - GAP_MARGIN
            && c.max_degree != 2
    });
    outcome("degree-two-below-eta4", bad.map(describe).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep() {
        let r = enumerate_classes(&SweepOptions { max_m: 2, max_n: 3, ..Default::default() }).unwrap();
        assert_eq!(r.matrices, 2 + 4 + 8 + 4 + 16 + 64);
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.histogram.values().map(|v| v.1).sum::<usize>(), r.matrices);
        assert!(enumerate_classes(&SweepOptions { max_m: 6, max_n: 6, ..Default::default() }).is_err());
    }
}
