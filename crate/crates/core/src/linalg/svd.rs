use super::{dot, DenseMatrix};

/// Thin singular value decomposition `A = U diag(σ) Vᵀ`.
///
/// With `k = min(m, n)`, `u` is `m × k`, `v` is `n × k`, both with
/// orthonormal columns, and `singular_values` has length `k` in
/// decreasing order. Columns belonging to zero singular values are still
/// orthonormal, so `u vᵀ` is always a partial isometry.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
}

const MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(a: &DenseMatrix) -> SvdResult {
    if a.rows() < a.cols() {
        let t = svd(&a.transpose());
        return SvdResult { u: t.v, singular_values: t.singular_values, v: t.u };
    }
    let (m, n) = a.shape();
    // columns stored contiguously: g[j] is column j of the working matrix
    let mut g: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    // columns below this squared norm are zero to working precision
    let negligible = {
        let frob2: f64 = g.iter().map(|c| dot(c, c)).sum();
        frob2 * f64::EPSILON * f64::EPSILON
    };
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&g[p], &g[p]);
                let beta = dot(&g[q], &g[q]);
                let gamma = dot(&g[p], &g[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut g, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = g.iter().enumerate().map(|(j, c)| (dot(c, c).sqrt(), j)).collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));
    let smax = order.first().map_or(0.0, |o| o.0);
    let cutoff = smax * f64::EPSILON * (m.max(n) as f64) * 4.0;

    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut sing = Vec::with_capacity(n);
    let mut v_cols = Vec::with_capacity(n);
    let mut deficient = Vec::new();
    for &(s, j) in &order {
        sing.push(s);
        v_cols.push(v[j].clone());
        if s > cutoff && s > 0.0 {
            u_cols.push(g[j].iter().map(|x| x / s).collect());
        } else {
            deficient.push(u_cols.len());
            u_cols.push(Vec::new());
        }
    }
    complete_basis(&mut u_cols, &deficient, m);

    SvdResult {
        u: DenseMatrix::from_fn(m, n, |i, j| u_cols[j][i]),
        singular_values: sing,
        v: DenseMatrix::from_fn(n, n, |i, j| v_cols[j][i]),
    }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// Fills the slots listed in `missing` with unit vectors orthogonal to
/// every other column, using Gram-Schmidt on the standard basis.
fn complete_basis(cols: &mut [Vec<f64>], missing: &[usize], dim: usize) {
    let mut candidate = 0;
    for &slot in missing {
        loop {
            assert!(candidate < dim, "basis completion ran out of candidates");
            let mut e = vec![0.0; dim];
            e[candidate] = 1.0;
            candidate += 1;
            // two passes of modified Gram-Schmidt for stability
            for _ in 0..2 {
                for (k, c) in cols.iter().enumerate() {
                    if k == slot || c.is_empty() {
                        continue;
                    }
                    let d = dot(&e, c);
                    for (x, y) in e.iter_mut().zip(c) {
                        *x -= d * y;
                    }
                }
            }
            let nrm = dot(&e, &e).sqrt();
            if nrm > 1e-6 {
                cols[slot] = e.into_iter().map(|x| x / nrm).collect();
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_and_orders() {
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 0.0],
            vec![0.0, 1.0, -1.0],
            vec![3.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ])
        .unwrap();
        for mat in [a.clone(), a.transpose()] {
            let d = svd(&mat);
            let k = d.singular_values.len();
            assert_eq!(k, 3);
            assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
            let s = DenseMatrix::diag(&d.singular_values);
            let rec = d.u.matmul(&s).unwrap().matmul(&d.v.transpose()).unwrap();
            assert!(rec.max_abs_diff(&mat) < 1e-13);
            assert!(d.u.orthogonality_defect() < 1e-13);
            assert!(d.v.orthogonality_defect() < 1e-13);
        }
    }

    #[test]
    fn rank_deficient_factors_stay_orthonormal() {
        let a = DenseMatrix::from_fn(4, 4, |i, j| ((i + 1) * (j + 1)) as f64);
        let d = svd(&a);
        assert!(d.singular_values[1] < 1e-12);
        assert!(d.u.orthogonality_defect() < 1e-12);
        assert!(d.v.orthogonality_defect() < 1e-12);
        let z = svd(&DenseMatrix::zeros(3, 2));
        assert!(z.u.orthogonality_defect() < 1e-14);
        assert_eq!(z.singular_values, vec![0.0, 0.0]);
    }
}
