use serde::Serialize;

use super::ascent::{polar_step, top_pair};
use super::{seed_orthogonal, Factorization};
use crate::error::{Error, Result};
use crate::linalg::{svd, DenseMatrix};

/// Weights below this are raised to it so that `D_x`, `D_y` stay
/// invertible and `Sᵀ R` reproduces `A` exactly.
const WEIGHT_FLOOR: f64 = 1e-6;

/// Factorization induced by weights `x` (columns) and `y` (rows).
///
/// With `D_y A D_x = P Σ Qᵀ` truncated to its nonzero singular values,
/// `S = Σ^{-1/2} Qᵀ D_x Aᵀ` and `R = Σ^{-1/2} Pᵀ D_y A` satisfy
/// `Sᵀ R = A`. When `x, y` maximize `‖D_y A D_x‖₁` this attains the norm.
/// Signs of the weights are ignored. The result is balanced.
pub fn dual_factorization(a: &DenseMatrix, x: &[f64], y: &[f64]) -> Result<Factorization> {
    let (m, n) = a.shape();
    if x.len() < n || y.len() < m {
        return Err(Error::Dimension(format!("weights of length {}, {} for a {m}x{n} matrix", x.len(), y.len())));
    }
    let dx: Vec<f64> = x[..n].iter().map(|v| v.abs().max(WEIGHT_FLOOR)).collect();
    let dy: Vec<f64> = y[..m].iter().map(|v| v.abs().max(WEIGHT_FLOOR)).collect();
    let weighted = DenseMatrix::from_fn(m, n, |i, j| dy[i] * a[(i, j)] * dx[j]);
    let d = svd(&weighted);
    let smax = d.singular_values.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(Factorization::trivial(a));
    }
    let keep: Vec<usize> = (0..d.singular_values.len()).filter(|&k| d.singular_values[k] > 1e-14 * smax).collect();
    // S[k][i] = Σ_j A[i][j] dx[j] Q[j][k] / √σ_k ; R[k][j] = Σ_i P[i][k] dy[i] A[i][j] / √σ_k
    let s = DenseMatrix::from_fn(keep.len(), m, |kk, i| {
        let k = keep[kk];
        let acc: f64 = (0..n).map(|j| a[(i, j)] * dx[j] * d.v[(j, k)]).sum();
        acc / d.singular_values[k].sqrt()
    });
    let r = DenseMatrix::from_fn(keep.len(), n, |kk, j| {
        let k = keep[kk];
        let acc: f64 = (0..m).map(|i| d.u[(i, k)] * dy[i] * a[(i, j)]).sum();
        acc / d.singular_values[k].sqrt()
    });
    let f = Factorization { s, r, target: a.clone() }.balanced();
    let res = f.residual();
    let scale = a.max_abs().max(1.0);
    if res.is_nan() || res > 1e-10 * scale {
        return Err(Error::Numerical(format!("factorization residual {res:.3e}")));
    }
    Ok(f)
}

/// Output of [`upper_bound_factorize`]. `history` holds the best bound
/// after each iteration and is non-increasing.
#[derive(Debug, Clone, Serialize)]
pub struct UpperRun {
    pub factorization: Factorization,
    pub upper: f64,
    pub history: Vec<f64>,
    pub iterations: usize,
}

/// Searches for a small Haagerup bound. Each iteration moves the weights
/// `(x, y)` by one ascent step and factors `A` through them; the best
/// factorization seen so far is kept. Starts from `init` when given,
/// otherwise from the trivial factorization. Stops after `max_iters` or
/// when an iteration improves the bound by less than `tol`.
pub fn upper_bound_factorize(
    a: &DenseMatrix,
    init: Option<Factorization>,
    max_iters: usize,
    tol: f64,
) -> Result<UpperRun> {
    let mut best = match init {
        Some(f) => {
            if f.target.shape() != a.shape() || f.residual() > 1e-9 * a.max_abs().max(1.0) {
                return Err(Error::InvalidInput("initial factorization does not reproduce the matrix".into()));
            }
            f
        }
        None => Factorization::trivial(a),
    };
    let mut upper = best.upper();
    let mut history = vec![upper];
    if a.is_empty() || a.max_abs() == 0.0 {
        return Ok(UpperRun { factorization: best, upper: 0.0, history: vec![0.0], iterations: 0 });
    }
    let side = a.rows().max(a.cols());
    let a_pad = a.pad_square();
    let mut u = seed_orthogonal(side, 0);
    let mut iterations = 0;
    let mut stall = 0;
    while iterations < max_iters {
        iterations += 1;
        let (_, x, y) = top_pair(&a_pad, &u);
        let before = upper;
        if let Ok(f) = dual_factorization(a, &x, &y) {
            let val = f.upper();
            if val < upper {
                upper = val;
                best = f;
            }
        }
        history.push(upper);
        u = polar_step(&a_pad, &x, &y);
        // the first steps from a poor start may not improve at all
        if before - upper < tol {
            stall += 1;
            if stall >= 3 {
                break;
            }
        } else {
            stall = 0;
        }
    }
    Ok(UpperRun { factorization: best, upper, history, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_unit_bound() {
        let run = upper_bound_factorize(&DenseMatrix::identity(3), None, 20, 1e-12).unwrap();
        assert!((run.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dual_factorization_reproduces_matrix() {
        let a = DenseMatrix::from_rows(&[[1., 0., 1.], [1., 1., 0.]]).unwrap();
        let f = dual_factorization(&a, &[0.5, 0.0, 0.7], &[0.6, 0.8]).unwrap();
        assert!(f.residual() < 1e-12);
        assert!(f.s.rows() <= 2);
        assert!((f.c_s() - f.c_r()).abs() < 1e-12);
    }
}
