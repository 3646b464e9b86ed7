use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::DenseMatrix;

/// `H₂^{⊗k}` normalized, for `n = 2^k`.
pub fn hadamard_orthogonal(n: usize) -> Option<DenseMatrix> {
    if n == 0 || !n.is_power_of_two() {
        return None;
    }
    let scale = 1.0 / (n as f64).sqrt();
    Some(DenseMatrix::from_fn(n, n, |i, j| if (i & j).count_ones() % 2 == 0 { scale } else { -scale }))
}

/// Haar-distributed orthogonal matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseMatrix {
    let g = DenseMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    g.qr_orthogonal()
}

/// The starting point of the ascent: a Hadamard matrix when `n` is a
/// power of two, otherwise a seeded random orthogonal matrix with no entry
/// smaller than `1e-3` in magnitude.
pub fn seed_orthogonal(n: usize, seed: u64) -> DenseMatrix {
    if let Some(h) = hadamard_orthogonal(n) {
        return h;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let q = random_orthogonal(n, &mut rng);
        if q.as_slice().iter().all(|v| v.abs() >= 1e-3) {
            return q;
        }
    }
}
