//! Two-sided numerical bounds for the Schur multiplier norm of a real
//! matrix.
//!
//! The lower bound is `‖A ∘ U‖` for an orthogonal `U`, improved by
//! alternating between the top singular pair `(x, y)` of `A ∘ U` and the
//! polar factor of `A ∘ (y xᵀ)`. The upper bound is `c(S) c(R)` for an
//! exact factorization `A = Sᵀ R`, built from the current weights
//! `x, y` via the singular value decomposition of `D_y A D_x`. At
//! optimal weights the two bounds meet.

mod ascent;
mod factor;
mod seed;
mod solve;

use serde::Serialize;

use crate::linalg::{col_bound, DenseMatrix};

pub use ascent::{lower_bound_ascend, Ascent};
pub use factor::{dual_factorization, upper_bound_factorize, UpperRun};
pub use seed::{hadamard_orthogonal, random_orthogonal, seed_orthogonal};
pub use solve::norm_bounds;

/// `target = Sᵀ R` with `S` of shape `k × m` and `R` of shape `k × n`.
#[derive(Debug, Clone, Serialize)]
pub struct Factorization {
    pub s: DenseMatrix,
    pub r: DenseMatrix,
    pub target: DenseMatrix,
}

impl Factorization {
    pub fn c_s(&self) -> f64 {
        col_bound(&self.s)
    }

    pub fn c_r(&self) -> f64 {
        col_bound(&self.r)
    }

    /// The Haagerup bound `c(S) c(R)`.
    pub fn upper(&self) -> f64 {
        self.c_s() * self.c_r()
    }

    /// `max |Sᵀ R − target|`.
    pub fn residual(&self) -> f64 {
        self.s.transpose().matmul(&self.r).map(|p| p.max_abs_diff(&self.target)).unwrap_or(f64::INFINITY)
    }

    /// Rescales so that `c(S) = c(R)`, leaving the product unchanged.
    pub fn balanced(mut self) -> Self {
        let (cs, cr) = (self.c_s(), self.c_r());
        if cs > 0.0 && cr > 0.0 {
            let k = (cr / cs).sqrt();
            self.s = self.s.scale(k);
            self.r = self.r.scale(1.0 / k);
        }
        self
    }

    /// The trivial factorization `I · A` (or `Aᵀᵀ · I`), with
    /// `k = min(m, n)`.
    pub fn trivial(a: &DenseMatrix) -> Self {
        let (m, n) = a.shape();
        if m <= n {
            Self { s: DenseMatrix::identity(m), r: a.clone(), target: a.clone() }
        } else {
            Self { s: a.transpose(), r: DenseMatrix::identity(n), target: a.clone() }
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsOptions {
    /// Target gap `upper − lower`.
    pub tol: f64,
    /// Ascent iterations per restart.
    pub max_iters: usize,
    /// Starting points tried, the first of which is the Hadamard or fixed
    /// seed.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self { tol: 1e-6, max_iters: 500, restarts: 8, seed: 0x5eed }
    }
}

/// A certified interval for `‖A‖_•`.
///
/// `witness_u` is square of side `max(m, n)` and acts on `A` zero-padded
/// to that size; `witness_x` (length `n`) and `witness_y` (length `m`)
/// are the top singular pair of `A ∘ U`.
#[derive(Debug, Clone, Serialize)]
pub struct NormBounds {
    pub lower: f64,
    pub upper: f64,
    pub witness_u: DenseMatrix,
    pub witness_x: Vec<f64>,
    pub witness_y: Vec<f64>,
    pub factorization: Factorization,
    pub iterations: usize,
    pub restarts_used: usize,
    pub converged: bool,
}

impl NormBounds {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    /// Recomputes `(‖A ∘ U‖, c(S) c(R), max |SᵀR − A|)` from the stored
    /// witnesses.
    pub fn recompute(&self, a: &DenseMatrix) -> (f64, f64, f64) {
        let lower = ascent::padded_lower(a, &self.witness_u);
        (lower, self.factorization.upper(), self.factorization.residual())
    }
}
