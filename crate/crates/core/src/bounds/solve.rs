use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ascent::{polar_step, top_pair};
use super::{dual_factorization, random_orthogonal, seed_orthogonal, BoundsOptions, Factorization, NormBounds};
use crate::bigraph::BiGraph;
use crate::linalg::DenseMatrix;

/// Support thresholds tried when the weights suggest that some vertices
/// carry no weight at the optimum.
const ACTIVE_SET_THRESHOLDS: [f64; 3] = [1e-2, 3e-2, 1e-1];
const MAX_DEPTH: usize = 2;

/// Certified bounds `lower ≤ ‖A‖_• ≤ upper`.
///
/// The norm of a block-diagonal matrix is the largest norm of its blocks,
/// so each connected component of the support of `A` is solved on its
/// own and the results are merged.
pub fn norm_bounds(a: &DenseMatrix, opts: &BoundsOptions) -> NormBounds {
    solve(a, opts, 0)
}

struct Best {
    lower: f64,
    u: DenseMatrix,
    upper: f64,
    fact: Factorization,
    iterations: usize,
    restarts: usize,
}

impl Best {
    fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    fn offer_lower(&mut self, val: f64, u: &DenseMatrix) {
        if val > self.lower {
            self.lower = val;
            self.u = u.clone();
        }
    }

    fn offer_upper(&mut self, f: Factorization) {
        let val = f.upper();
        if val < self.upper {
            self.upper = val;
            self.fact = f;
        }
    }
}

fn solve(a: &DenseMatrix, opts: &BoundsOptions, depth: usize) -> NormBounds {
    let (m, n) = a.shape();
    let side = m.max(n);
    let support = BiGraph::from_fn(m, n, |i, j| a[(i, j)] != 0.0);
    let comps: Vec<(Vec<usize>, Vec<usize>)> =
        support.component_indices().into_iter().filter(|(r, c)| !r.is_empty() && !c.is_empty()).collect();
    if comps.is_empty() {
        return zero_bounds(a);
    }

    let mut results = Vec::with_capacity(comps.len());
    for (rows, cols) in &comps {
        let sub = a.select(rows, cols);
        results.push(solve_connected(&sub, opts, depth));
    }

    let k_total: usize = results.iter().map(|b| b.fact.s.rows()).sum();
    let mut s = DenseMatrix::zeros(k_total, m);
    let mut r = DenseMatrix::zeros(k_total, n);
    let mut offset = 0;
    for ((rows, cols), res) in comps.iter().zip(&results) {
        let f = res.fact.clone().balanced();
        for k in 0..f.s.rows() {
            for (ii, &i) in rows.iter().enumerate() {
                s[(offset + k, i)] = f.s[(k, ii)];
            }
            for (jj, &j) in cols.iter().enumerate() {
                r[(offset + k, j)] = f.r[(k, jj)];
            }
        }
        offset += f.s.rows();
    }
    let factorization = Factorization { s, r, target: a.clone() };

    // Lift the best component's weights to the whole matrix; one polar
    // step from them is at least as good as the component witness.
    let (best_idx, best) = results
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.lower.total_cmp(&y.1.lower))
        .expect("at least one component");
    let (rows, cols) = &comps[best_idx];
    let a_pad = a.pad_square();
    let (u, lower) = if comps.len() == 1 && rows.len() == m && cols.len() == n {
        (best.u.clone(), best.lower)
    } else {
        let (_, xc, yc) = top_pair(&a.select(rows, cols).pad_square(), &best.u);
        let mut x = vec![0.0; side];
        let mut y = vec![0.0; side];
        for (jj, &j) in cols.iter().enumerate() {
            x[j] = xc[jj];
        }
        for (ii, &i) in rows.iter().enumerate() {
            y[i] = yc[ii];
        }
        let u = polar_step(&a_pad, &x, &y);
        let (val, _, _) = top_pair(&a_pad, &u);
        (u, val)
    };
    let (_, x, y) = top_pair(&a_pad, &u);
    let upper = factorization.upper();
    NormBounds {
        lower,
        upper,
        witness_u: u,
        witness_x: x[..n].to_vec(),
        witness_y: y[..m].to_vec(),
        factorization,
        iterations: results.iter().map(|b| b.iterations).sum(),
        restarts_used: results.iter().map(|b| b.restarts).max().unwrap_or(0),
        converged: upper - lower <= opts.tol,
    }
}

fn zero_bounds(a: &DenseMatrix) -> NormBounds {
    let (m, n) = a.shape();
    let unit = |len: usize| {
        let mut v = vec![0.0; len];
        if let Some(first) = v.first_mut() {
            *first = 1.0;
        }
        v
    };
    NormBounds {
        lower: 0.0,
        upper: 0.0,
        witness_u: DenseMatrix::identity(m.max(n)),
        witness_x: unit(n),
        witness_y: unit(m),
        factorization: Factorization { s: DenseMatrix::zeros(0, m), r: DenseMatrix::zeros(0, n), target: a.clone() },
        iterations: 0,
        restarts_used: 0,
        converged: true,
    }
}

/// Ascent with restarts on a matrix whose support is connected, falling
/// back to active-set refinement when progress is slow.
fn solve_connected(a: &DenseMatrix, opts: &BoundsOptions, depth: usize) -> Best {
    let (m, n) = a.shape();
    let side = m.max(n);
    let a_pad = a.pad_square();
    let mut best = Best {
        lower: f64::NEG_INFINITY,
        u: DenseMatrix::identity(side),
        upper: f64::INFINITY,
        fact: Factorization::trivial(a),
        iterations: 0,
        restarts: 0,
    };
    best.upper = best.fact.upper();
    let mut best_xy: Option<(Vec<f64>, Vec<f64>)> = None;

    for restart in 0..opts.restarts.max(1) {
        best.restarts = restart + 1;
        let mut u = if restart == 0 {
            seed_orthogonal(side, opts.seed)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(restart as u64);
            random_orthogonal(side, &mut rng)
        };
        let (mut val, mut x, mut y) = top_pair(&a_pad, &u);
        for _ in 0..opts.max_iters {
            best.iterations += 1;
            if val > best.lower {
                best_xy = Some((x.clone(), y.clone()));
            }
            best.offer_lower(val, &u);
            if let Ok(f) = dual_factorization(a, &x, &y) {
                best.offer_upper(f);
            }
            if best.gap() <= opts.tol {
                return best;
            }
            u = polar_step(&a_pad, &x, &y);
            (val, x, y) = top_pair(&a_pad, &u);
        }
        if depth < MAX_DEPTH {
            if let Some((x, y)) = &best_xy {
                refine(a, x, y, opts, depth, &mut best);
                if best.gap() <= opts.tol {
                    return best;
                }
            }
        }
    }
    best
}

/// Solves the submatrix on which the weights are not negligible and
/// lifts its weights back, with the missing vertices at weight zero.
fn refine(a: &DenseMatrix, x: &[f64], y: &[f64], opts: &BoundsOptions, depth: usize, best: &mut Best) {
    let (m, n) = a.shape();
    let a_pad = a.pad_square();
    let mut tried: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for thr in ACTIVE_SET_THRESHOLDS {
        let rows: Vec<usize> = (0..m).filter(|&i| y[i].abs() > thr).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| x[j].abs() > thr).collect();
        if rows.is_empty() || cols.is_empty() || (rows.len() == m && cols.len() == n) {
            continue;
        }
        if tried.iter().any(|t| t.0 == rows && t.1 == cols) {
            continue;
        }
        tried.push((rows.clone(), cols.clone()));
        let sub = solve(&a.select(&rows, &cols), opts, depth + 1);
        best.iterations += sub.iterations;
        let mut xe = vec![0.0; m.max(n)];
        let mut ye = vec![0.0; m.max(n)];
        for (jj, &j) in cols.iter().enumerate() {
            xe[j] = sub.witness_x[jj];
        }
        for (ii, &i) in rows.iter().enumerate() {
            ye[i] = sub.witness_y[ii];
        }
        let u = polar_step(&a_pad, &xe, &ye);
        let (val, _, _) = top_pair(&a_pad, &u);
        best.offer_lower(val, &u);
        if let Ok(f) = dual_factorization(a, &xe, &ye) {
            best.offer_upper(f);
        }
        if best.gap() <= opts.tol {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::GraphName;
    use crate::exact::exact_norm;

    fn bounds_of(name: GraphName) -> NormBounds {
        norm_bounds(&name.graph().unwrap().to_matrix(), &BoundsOptions::default())
    }

    #[test]
    fn catalog_values() {
        for name in [GraphName::Gee6Cycle, GraphName::E(5), GraphName::Trie, GraphName::Gee7, GraphName::E(4)] {
            let b = bounds_of(name);
            let exact = exact_norm(name).unwrap();
            assert!(b.converged, "{name}: {} {}", b.lower, b.upper);
            assert!(b.lower <= exact + 1e-9 && b.upper >= exact - 1e-9, "{name}");
            assert!((b.midpoint() - exact).abs() < 1e-6, "{name}");
        }
    }

    #[test]
    fn zero_matrix() {
        let b = norm_bounds(&DenseMatrix::zeros(3, 3), &BoundsOptions::default());
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
        assert!(b.converged);
    }

    #[test]
    fn disconnected_and_pendant() {
        let g = GraphName::Gee6Cycle.graph().unwrap().direct_sum(&GraphName::SingleEdge.graph().unwrap());
        let a = g.to_matrix();
        let b = norm_bounds(&a, &BoundsOptions::default());
        assert!(b.converged && (b.midpoint() - 4.0 / 3.0).abs() < 1e-6);
        let (lo, up, res) = b.recompute(&a);
        assert!((lo - b.lower).abs() < 1e-12 && (up - b.upper).abs() < 1e-12 && res < 1e-9);
        // a pendant vertex that carries no weight at the optimum
        let p = BiGraph::from_rows(&["1100", "1010", "0110", "0001"]).unwrap();
        let p = BiGraph::from_fn(4, 4, |i, j| p.get(i, j) || (i == 2 && j == 3));
        let b = norm_bounds(&p.to_matrix(), &BoundsOptions::default());
        assert!(b.converged, "{} {}", b.lower, b.upper);
    }
}
