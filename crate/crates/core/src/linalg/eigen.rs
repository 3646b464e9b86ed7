use super::DenseMatrix;

/// Eigen-decomposition of a symmetric matrix: `A = V diag(values) Vᵀ`
/// with `values` in decreasing order and eigenvectors in the columns of
/// `vectors`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Cyclic two-sided Jacobi. Only the upper triangle is trusted; the input
/// is symmetrized first.
pub fn symmetric_eigen(a: &DenseMatrix) -> SymmetricEigen {
    assert!(a.is_square(), "symmetric_eigen expects a square matrix");
    let n = a.rows();
    let mut s = DenseMatrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut v = DenseMatrix::identity(n);

    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[(i, j)] * s[(i, j)])
            .sum();
        let total = s.frobenius_norm();
        if off.sqrt() <= f64::EPSILON * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = s[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (s[(q, q)] - s[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (skp, skq) = (s[(k, p)], s[(k, q)]);
                    s[(k, p)] = c * skp - sn * skq;
                    s[(k, q)] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let (spk, sqk) = (s[(p, k)], s[(q, k)]);
                    s[(p, k)] = c * spk - sn * sqk;
                    s[(q, k)] = sn * spk + c * sqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[(j, j)].total_cmp(&s[(i, i)]));
    SymmetricEigen {
        values: order.iter().map(|&i| s[(i, i)]).collect(),
        vectors: DenseMatrix::from_fn(n, n, |i, j| v[(i, order[j])]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes() {
        let a = DenseMatrix::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, -1.0],
            vec![0.5, -1.0, 2.0],
        ])
        .unwrap();
        let e = symmetric_eigen(&a);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let rec = e
            .vectors
            .matmul(&DenseMatrix::diag(&e.values))
            .unwrap()
            .matmul(&e.vectors.transpose())
            .unwrap();
        assert!(rec.max_abs_diff(&a) < 1e-13);
        assert!(e.vectors.orthogonality_defect() < 1e-13);
        let tr: f64 = e.values.iter().sum();
        assert!((tr - 9.0).abs() < 1e-13);
    }
}
