use std::f64::consts::PI;

use serde::Serialize;

use super::path_norm;
use crate::error::{Error, Result};
use crate::linalg::{col_bound, dot, hadamard, polar_orthogonal, DenseMatrix};

/// The explicit factorization and dual witness that pin down the norm of
/// `Σ(n,n)` and `Σ(n,n+1)`.
///
/// `b` is the path matrix `Sᵀ R`, `b_ext` the `(n+1) × (n+1)` matrix
/// `S̃ᵀ R̃`. The weights `a`, `b_weights` sum to one and `x = √a`,
/// `y = √b_weights` satisfy `⟨(b ∘ uᵀ) x, y⟩ = path_norm(n)`.
#[derive(Debug, Clone, Serialize)]
pub struct PathWitness {
    pub n: usize,
    pub w: DenseMatrix,
    pub r_vec: Vec<f64>,
    pub r: DenseMatrix,
    pub s: DenseMatrix,
    pub r_ext: DenseMatrix,
    pub s_ext: DenseMatrix,
    pub b: DenseMatrix,
    pub b_ext: DenseMatrix,
    pub u: DenseMatrix,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub a: Vec<f64>,
    pub b_weights: Vec<f64>,
}

/// 2×2 rotation blocks of `W`: `(start, exponent)`, where the 1×1 block
/// of odd `n` is recorded with exponent 0.
fn blocks(n: usize) -> Vec<(usize, usize)> {
    if n % 2 == 0 {
        (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect()
    } else {
        std::iter::once((0, 0)).chain((0..(n - 1) / 2).map(|k| (2 * k + 1, 2 * k + 2))).collect()
    }
}

fn theta(n: usize) -> f64 {
    PI / (2.0 * (n as f64 + 1.0))
}

fn kappa(j: i64, n: usize) -> f64 {
    (j as f64 * theta(n)).cos()
}

/// `W^j`, computed blockwise from the rotation angles.
pub fn w_power(n: usize, j: i64) -> DenseMatrix {
    let mut w = DenseMatrix::zeros(n, n);
    let th = theta(n);
    for (start, e) in blocks(n) {
        if e == 0 {
            w[(start, start)] = 1.0;
            continue;
        }
        let ang = (j * e as i64) as f64 * th;
        let (s, c) = ang.sin_cos();
        w[(start, start)] = c;
        w[(start, start + 1)] = -s;
        w[(start + 1, start)] = s;
        w[(start + 1, start + 1)] = c;
    }
    w
}

/// Per-block scale `r_e`; the 1×1 block of odd `n` uses `√(2/(n+1))`.
fn block_scale(n: usize, e: usize) -> f64 {
    let m = n as f64 + 1.0;
    if e == 0 {
        (2.0 / m).sqrt()
    } else {
        (4.0 * kappa(e as i64, n) / m).sqrt()
    }
}

fn v_vec(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for (start, _) in blocks(n) {
        v[start] = 1.0;
    }
    v
}

fn r_vec(n: usize) -> Vec<f64> {
    let mut r = vec![0.0; n];
    for (start, e) in blocks(n) {
        r[start] = block_scale(n, e);
    }
    r
}

/// The diagonal matrix commuting with `W` that sends `v` to `r`.
pub fn d_matrix(n: usize) -> DenseMatrix {
    let mut d = vec![0.0; n];
    for (start, e) in blocks(n) {
        let s = block_scale(n, e);
        d[start] = s;
        if e != 0 {
            d[start + 1] = s;
        }
    }
    DenseMatrix::diag(&d)
}

/// `Q_j = (W^j v)(W^j v)ᵀ`.
pub fn q_matrix(n: usize, j: i64) -> DenseMatrix {
    let q = w_power(n, j).mul_vec(&v_vec(n));
    DenseMatrix::outer(&q, &q)
}

/// `P_j = (W^j r)(W^j r)ᵀ`.
pub fn p_matrix(n: usize, j: i64) -> DenseMatrix {
    let p = w_power(n, j).mul_vec(&r_vec(n));
    DenseMatrix::outer(&p, &p)
}

/// Builds every object of the path construction for `n ≥ 1` and checks
/// the defining identities at `1e-9`.
pub fn build_path_witness(n: usize) -> Result<PathWitness> {
    if n == 0 {
        return Err(Error::InvalidInput("path parameter must be at least 1".into()));
    }
    let r0 = r_vec(n);
    let w = w_power(n, 1);
    let cols: Vec<Vec<f64>> = (0..=n).map(|k| w_power(n, 2 * k as i64).mul_vec(&r0)).collect();
    let r_ext = DenseMatrix::from_fn(n, n + 1, |i, j| cols[j][i]);
    let r = r_ext.select(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    let s = w.matmul(&r)?;
    let s_ext = w.matmul(&r_ext)?;

    let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let b_ext = DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
        if j == i || j == i + 1 {
            1.0
        } else if (i, j) == (n, 0) {
            sign
        } else {
            0.0
        }
    });
    let b = DenseMatrix::from_fn(n, n, |i, j| b_ext[(i, j)]);

    let t: Vec<f64> = (0..=n).map(|j| kappa(1, n) - kappa(3 + 4 * j as i64, n)).collect();
    let total: f64 = t[..n].iter().sum();
    let a: Vec<f64> = (1..=n).map(|j| t[j - 1] / total).collect();
    let b_weights: Vec<f64> = (1..=n).map(|j| t[n - j] / total).collect();
    let x: Vec<f64> = a.iter().map(|v| v.sqrt()).collect();
    let y: Vec<f64> = b_weights.iter().map(|v| v.sqrt()).collect();

    // RX = SY·U₀ with U₀ orthogonal; U₀ = (SY)⁻¹ RX.
    let rx = r.matmul(&DenseMatrix::diag(&x))?;
    let sy = s.matmul(&DenseMatrix::diag(&y))?;
    let mut u0 = sy.solve(&rx).map_err(|e| Error::Numerical(format!("path witness n = {n}: {e}")))?;
    if u0.orthogonality_defect() > 1e-10 {
        u0 = polar_orthogonal(&u0);
    }
    let pw = PathWitness { n, w, r_vec: r0, r, s, r_ext, s_ext, b, b_ext, u: u0.transpose(), x, y, a, b_weights };
    pw.check(1e-9)?;
    Ok(pw)
}

impl PathWitness {
    /// `⟨(B ∘ Uᵀ) x, y⟩`.
    pub fn attained_value(&self) -> f64 {
        let bu = hadamard(&self.b, &self.u.transpose()).expect("equal shapes");
        dot(&bu.mul_vec(&self.x), &self.y)
    }

    /// The largest deviation among the witness identities, by name.
    pub fn residuals(&self) -> Vec<(&'static str, f64)> {
        let target = path_norm(self.n);
        let st_r = self.s.transpose().matmul(&self.r).expect("square factors");
        let st_r_ext = self.s_ext.transpose().matmul(&self.r_ext).expect("factor shapes");
        let weighted = |m: &DenseMatrix, w: &[f64]| {
            let scaled = m.matmul(&DenseMatrix::diag(&w.iter().map(|v| v.sqrt()).collect::<Vec<_>>())).unwrap();
            scaled.matmul(&scaled.transpose()).unwrap()
        };
        let lhs = weighted(&self.r, &self.a);
        let rhs = weighted(&self.s, &self.b_weights);
        vec![
            ("w orthogonal", self.w.orthogonality_defect()),
            ("u orthogonal", self.u.orthogonality_defect()),
            ("S^T R = B", st_r.max_abs_diff(&self.b)),
            ("S~^T R~ = B~", st_r_ext.max_abs_diff(&self.b_ext)),
            ("c(R)^2", (col_bound(&self.r).powi(2) - target).abs()),
            ("c(S)^2", (col_bound(&self.s).powi(2) - target).abs()),
            ("c(R~)^2", (col_bound(&self.r_ext).powi(2) - target).abs()),
            ("c(S~)^2", (col_bound(&self.s_ext).powi(2) - target).abs()),
            ("weights", lhs.max_abs_diff(&rhs)),
            ("sum a", (self.a.iter().sum::<f64>() - 1.0).abs()),
            ("sum b", (self.b_weights.iter().sum::<f64>() - 1.0).abs()),
            ("attainment", (self.attained_value() - target).abs()),
        ]
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        if self.a.iter().chain(&self.b_weights).any(|&v| v <= 0.0) {
            return Err(Error::Numerical(format!("n = {}: non-positive weight", self.n)));
        }
        for (name, err) in self.residuals() {
            if err.is_nan() || err > tol {
                return Err(Error::Numerical(format!("n = {}: {name} off by {err:.3e}", self.n)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let w1 = build_path_witness(1).unwrap();
        assert_eq!(w1.b, DenseMatrix::identity(1));
        assert!((w1.attained_value() - 1.0).abs() < 1e-12);
        let w3 = build_path_witness(3).unwrap();
        assert!((w3.attained_value() - (1.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn n4_weights_are_explicit() {
        let w = build_path_witness(4).unwrap();
        let s5 = 5f64.sqrt();
        let expect = [((3.0 - s5) / 2.0).sqrt(), ((1.0 + s5) / 2.0).sqrt(), 2f64.sqrt(), 1.0];
        for (xi, e) in w.x.iter().zip(expect) {
            assert!((xi - e / s5).abs() < 1e-12);
        }
        let rev: Vec<f64> = w.x.iter().rev().copied().collect();
        for (yi, e) in w.y.iter().zip(rev) {
            assert!((yi - e).abs() < 1e-12);
        }
    }

    #[test]
    fn d_conjugates_q_to_p() {
        for n in 1..=8 {
            let d = d_matrix(n);
            for j in 0..=(2 * n as i64 + 1) {
                let lhs = d.matmul(&q_matrix(n, j)).unwrap().matmul(&d).unwrap();
                assert!(lhs.max_abs_diff(&p_matrix(n, j)) < 1e-10, "n={n} j={j}");
            }
        }
    }
}
