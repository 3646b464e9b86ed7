use serde::Serialize;

use crate::linalg::{hadamard, polar_orthogonal, spectral_norm, svd, DenseMatrix};

/// Result of [`lower_bound_ascend`]. `x` and `y` have length
/// `max(m, n)`; entries beyond `n` (resp. `m`) are zero.
#[derive(Debug, Clone, Serialize)]
pub struct Ascent {
    pub u: DenseMatrix,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub lower: f64,
    pub history: Vec<f64>,
    pub iterations: usize,
}

/// Top singular triple `(σ₁, x, y)` of `A ∘ U`, with `x` on the column
/// side.
pub(crate) fn top_pair(a_pad: &DenseMatrix, u: &DenseMatrix) -> (f64, Vec<f64>, Vec<f64>) {
    let m = hadamard(a_pad, u).expect("padded shapes agree");
    let d = svd(&m);
    (d.singular_values[0], d.v.col(0), d.u.col(0))
}

/// One ascent move: the orthogonal `U` maximizing `⟨U, A ∘ (y xᵀ)⟩`.
pub(crate) fn polar_step(a_pad: &DenseMatrix, x: &[f64], y: &[f64]) -> DenseMatrix {
    let target = hadamard(a_pad, &DenseMatrix::outer(y, x)).expect("padded shapes agree");
    polar_orthogonal(&target)
}

pub(crate) fn padded_lower(a: &DenseMatrix, u: &DenseMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let a_pad = a.padded(u.rows(), u.cols());
    spectral_norm(&hadamard(&a_pad, u).expect("padded shapes agree"))
}

/// Alternates `(x, y) ← top singular pair of A ∘ U` and
/// `U ← polar(A ∘ (y xᵀ))` until the objective improves by less than
/// `tol`. `u0` must be orthogonal of side `max(m, n)`.
pub fn lower_bound_ascend(a: &DenseMatrix, u0: &DenseMatrix, max_iters: usize, tol: f64) -> Ascent {
    let side = a.rows().max(a.cols());
    assert_eq!(u0.shape(), (side, side), "seed must be square of side max(m, n)");
    let a_pad = a.pad_square();
    let mut u = u0.clone();
    let (mut lower, mut x, mut y) = top_pair(&a_pad, &u);
    let mut history = vec![lower];
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let next_u = polar_step(&a_pad, &x, &y);
        let (val, nx, ny) = top_pair(&a_pad, &next_u);
        history.push(val);
        let improved = val - lower;
        if val >= lower {
            u = next_u;
            lower = val;
            x = nx;
            y = ny;
        }
        if improved < tol {
            break;
        }
    }
    Ascent { u, x, y, lower, history, iterations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::seed_orthogonal;

    #[test]
    fn all_ones_stays_at_one() {
        let a = DenseMatrix::from_fn(3, 3, |_, _| 1.0);
        let asc = lower_bound_ascend(&a, &seed_orthogonal(3, 1), 50, 1e-12);
        assert!((asc.lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn objective_is_monotone() {
        let a = DenseMatrix::from_rows(&[[1., 1., 0., 0.], [0., 1., 1., 0.], [0., 0., 1., 1.], [0., 0., 1., 0.]])
            .unwrap();
        let asc = lower_bound_ascend(&a, &seed_orthogonal(4, 0), 200, 1e-14);
        assert!(asc.history.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!((asc.lower - 1.24131).abs() < 5e-6, "{}", asc.lower);
    }
}
