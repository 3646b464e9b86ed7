//! Random bipartite graphs `G(m, n, p)` and Monte Carlo estimates of the
//! expected norm.
//!
//! Trial `t` draws its graph from ChaCha8 seeded with the master seed on
//! stream `t`, so every trial is reproducible on its own and trials may
//! run in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bigraph::BiGraph;
use crate::bounds::{norm_bounds, BoundsOptions};
use crate::classify::{classify_structure, NormClass};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

pub const GENERATOR: &str = "ChaCha8Rng(seed_from_u64(master_seed), stream = trial_index)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomModel {
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub master_seed: u64,
}

impl RandomModel {
    pub fn new(m: usize, n: usize, p: f64, master_seed: u64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidInput(format!("edge probability {p} must lie in (0, 1)")));
        }
        Ok(Self { m, n, p, master_seed })
    }
}

/// The graph of trial `trial_index`.
pub fn sample(model: &RandomModel, trial_index: u64) -> BiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(model.master_seed);
    rng.set_stream(trial_index);
    BiGraph::from_fn(model.m, model.n, |_, _| rng.random_bool(model.p))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrialValue {
    pub trial: u64,
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
}

impl TrialValue {
    /// The midpoint, or the upper bound when the trial did not converge.
    pub fn value(&self) -> f64 {
        if self.converged {
            0.5 * (self.lower + self.upper)
        } else {
            self.upper
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloEstimate {
    pub model: RandomModel,
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
    pub per_trial_values: Vec<TrialValue>,
    pub non_converged: usize,
    pub generator: &'static str,
}

/// Mean and standard error of the norm over `trials` samples.
pub fn expected_norm(model: &RandomModel, trials: usize, opts: &BoundsOptions) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial is required".into()));
    }
    let per_trial_values: Vec<TrialValue> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let b = norm_bounds(&sample(model, trial).to_matrix(), opts);
            TrialValue { trial, lower: b.lower, upper: b.upper, converged: b.converged }
        })
        .collect();
    let mut values: Vec<f64> = per_trial_values.iter().map(TrialValue::value).collect();
    values.sort_by(f64::total_cmp);
    let (mean, std_error) = mean_and_error(&values);
    Ok(MonteCarloEstimate {
        model: *model,
        mean,
        std_error,
        trials,
        non_converged: per_trial_values.iter().filter(|t| !t.converged).count(),
        per_trial_values,
        generator: GENERATOR,
    })
}

fn mean_and_error(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustiveEstimate {
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub mean: f64,
    pub graphs: usize,
    /// Graphs whose value came from numeric bounds rather than an exact class.
    pub numeric_graphs: usize,
    pub non_converged: usize,
}

/// Exact expectation over all `2^{mn}` graphs. Graphs in a class `η_k`
/// contribute `η_k`; the others contribute their bounds midpoint.
pub fn expected_norm_exhaustive(m: usize, n: usize, p: f64, opts: &BoundsOptions) -> Result<ExhaustiveEstimate> {
    RandomModel::new(m, n, p, 0)?;
    if m * n > 16 {
        return Err(Error::InvalidInput(format!("exhaustive mode needs m·n ≤ 16, got {m}x{n}")));
    }
    let cells = m * n;
    let terms: Vec<(f64, bool, bool)> = (0..1u64 << cells)
        .into_par_iter()
        .map(|mask| {
            let g = BiGraph::from_fn(m, n, |i, j| mask >> (i * n + j) & 1 == 1);
            let edges = mask.count_ones() as i32;
            let weight = p.powi(edges) * (1.0 - p).powi(cells as i32 - edges);
            match classify_structure(&g).0 {
                NormClass::Eta(k) => (weight * crate::exact::ETA.get(k), false, true),
                NormClass::AtLeastEta6 => {
                    let b = norm_bounds(&g.to_matrix(), opts);
                    (weight * b.midpoint(), true, b.converged)
                }
            }
        })
        .collect();
    let mut contributions: Vec<f64> = terms.iter().map(|t| t.0).collect();
    contributions.sort_by(f64::total_cmp);
    Ok(ExhaustiveEstimate {
        m,
        n,
        p,
        mean: contributions.iter().sum(),
        graphs: terms.len(),
        numeric_graphs: terms.iter().filter(|t| t.1).count(),
        non_converged: terms.iter().filter(|t| !t.2).count(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SignAverageReport {
    /// Average over all sign patterns `ε` of the norm of `ε ∘ A`.
    pub average: f64,
    pub max_lower: f64,
    pub extremal_signs: DenseMatrix,
    pub bound: f64,
    pub holds: bool,
    pub patterns: usize,
}

/// Checks `max_ε ‖ε ∘ A‖ ≤ 4 · avg_ε ‖ε ∘ A‖` over all `ε ∈ {±1}^{m×n}`.
/// Inputs larger than `3 × 3` are rejected.
pub fn sign_average_bound_check(a: &DenseMatrix, opts: &BoundsOptions) -> Result<SignAverageReport> {
    let (m, n) = a.shape();
    if m > 3 || n > 3 {
        return Err(Error::InvalidInput(format!("sign averaging is exhaustive and limited to 3x3, got {m}x{n}")));
    }
    let cells = m * n;
    let sign_of = |mask: u64| DenseMatrix::from_fn(m, n, |i, j| if mask >> (i * n + j) & 1 == 1 { -1.0 } else { 1.0 });
    let results: Vec<(u64, f64, f64)> = (0..1u64 << cells)
        .into_par_iter()
        .map(|mask| {
            let signed = crate::linalg::hadamard(&sign_of(mask), a).expect("same shape");
            let b = norm_bounds(&signed, opts);
            (mask, b.lower, b.midpoint())
        })
        .collect();
    let mut mids: Vec<f64> = results.iter().map(|r| r.2).collect();
    mids.sort_by(f64::total_cmp);
    let average = mids.iter().sum::<f64>() / mids.len() as f64;
    let (mask, max_lower, _) =
        results.iter().copied().max_by(|x, y| x.1.total_cmp(&y.1).then(y.0.cmp(&x.0))).expect("at least one pattern");
    let bound = 4.0 * average;
    Ok(SignAverageReport {
        average,
        max_lower,
        extremal_signs: sign_of(mask),
        bound,
        holds: max_lower <= bound + 1e-9,
        patterns: results.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub k: usize,
    pub bound: f64,
    pub estimate: MonteCarloEstimate,
    pub holds: bool,
}

/// Compares the mean norm at `p = 1/2` with `(1/8)√(k/2) − 1`,
/// `k = min(m, n)`, allowing three standard errors.
pub fn lower_growth_check(m: usize, n: usize, trials: usize, seed: u64, opts: &BoundsOptions) -> Result<GrowthReport> {
    let k = m.min(n);
    let bound = (k as f64 / 2.0).sqrt() / 8.0 - 1.0;
    let estimate = expected_norm(&RandomModel::new(m, n, 0.5, seed)?, trials, opts)?;
    let holds = estimate.mean >= bound - 3.0 * estimate.std_error;
    Ok(GrowthReport { k, bound, estimate, holds })
}

#[derive(Debug, Clone, Serialize)]
pub struct TrendReport {
    pub points: Vec<(usize, f64, f64)>,
    pub increasing: bool,
}

/// Means over square sizes `sizes` at edge probability `p`; `increasing`
/// requires each mean to exceed the previous one by more than the sum of
/// their three-standard-error half widths.
pub fn mean_trend(sizes: &[usize], p: f64, trials: usize, seed: u64, opts: &BoundsOptions) -> Result<TrendReport> {
    let mut points = Vec::with_capacity(sizes.len());
    for &s in sizes {
        let est = expected_norm(&RandomModel::new(s, s, p, seed)?, trials, opts)?;
        points.push((s, est.mean, est.std_error));
    }
    let increasing = points.windows(2).all(|w| w[1].1 - 3.0 * w[1].2 > w[0].1 + 3.0 * w[0].2);
    Ok(TrendReport { points, increasing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_calibrated() {
        let model = RandomModel::new(3, 3, 0.999999, 7).unwrap();
        assert!((0..10).all(|t| sample(&model, t).edge_count() == 9));
        assert_eq!(sample(&model, 3), sample(&model, 3));
        let half = RandomModel::new(2, 2, 0.5, 1).unwrap();
        let mut counts = [0usize; 4];
        for t in 0..4096 {
            let g = sample(&half, t);
            for (c, slot) in counts.iter_mut().enumerate() {
                *slot += g.get(c / 2, c % 2) as usize;
            }
        }
        assert!(counts.iter().all(|&c| (0.45..=0.55).contains(&(c as f64 / 4096.0))), "{counts:?}");
        assert!(RandomModel::new(2, 2, 1.0, 0).is_err());
        assert!(RandomModel::new(2, 2, 0.0, 0).is_err());
    }

    #[test]
    fn exhaustive_two_by_two() {
        let e = expected_norm_exhaustive(2, 2, 0.5, &BoundsOptions::default()).unwrap();
        let expected = (11.0 + 4.0 * (4.0f64 / 3.0).sqrt()) / 16.0;
        assert!((e.mean - expected).abs() < 1e-9);
        assert_eq!(e.numeric_graphs, 0);
    }

    #[test]
    fn bernoulli_mean() {
        let model = RandomModel::new(1, 1, 0.3, 5).unwrap();
        let est = expected_norm(&model, 400, &BoundsOptions::default()).unwrap();
        assert!((est.mean - 0.3).abs() <= 3.0 * est.std_error);
    }

    #[test]
    fn sign_average_small() {
        let opts = BoundsOptions::default();
        let r = sign_average_bound_check(&DenseMatrix::from_rows(&[[1.0]]).unwrap(), &opts).unwrap();
        assert!((r.average - 1.0).abs() < 1e-9 && (r.max_lower - 1.0).abs() < 1e-9 && r.holds);
        let r = sign_average_bound_check(&DenseMatrix::zeros(2, 2), &opts).unwrap();
        assert_eq!((r.average, r.max_lower), (0.0, 0.0));
        assert!(sign_average_bound_check(&DenseMatrix::zeros(4, 1), &opts).is_err());
    }

    #[test]
    fn growth_bound_is_negative_at_small_sizes() {
        let r = lower_growth_check(8, 8, 10, 1, &BoundsOptions::default()).unwrap();
        assert!((r.bound + 0.75).abs() < 1e-12 && r.holds);
    }
}
