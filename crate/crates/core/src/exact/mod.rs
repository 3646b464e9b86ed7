//! Closed-form norms, the extremal path construction, and stored
//! certificates for small graphs.

mod certs;
mod path;
mod trig;

use std::f64::consts::PI;

use serde::Serialize;

use crate::bigraph::GraphName;
use crate::error::{Error, Result};

pub use certs::{
    certificate, certificate_names, char_poly, verify_certificate, CertCheck, CertKind, CertificateReport,
    LowerTarget, NormCertificate,
};
pub use path::{build_path_witness, d_matrix, p_matrix, q_matrix, w_power, PathWitness};
pub use trig::{verify_altzero, verify_bigstar, AltZeroCase, TrigFn};

/// The seven smallest norms of Schur idempotents.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EtaConstants {
    pub eta: [f64; 7],
}

impl EtaConstants {
    pub fn new() -> Self {
        let s19 = 19f64.sqrt();
        let s5 = 5f64.sqrt();
        Self {
            eta: [
                0.0,
                1.0,
                (4.0f64 / 3.0).sqrt(),
                (1.0 + 2f64.sqrt()) / 2.0,
                (169.0 + 38.0 * s19).sqrt() / 15.0,
                1.5f64.sqrt(),
                0.4 * (5.0 + 2.0 * s5).sqrt(),
            ],
        }
    }

    pub fn get(&self, k: usize) -> f64 {
        self.eta[k]
    }
}

impl Default for EtaConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// `η_0, …, η_6`.
pub const ETA: EtaConstants = EtaConstants {
    eta: [
        0.0,
        1.0,
        1.154_700_538_379_251_5,
        1.207_106_781_186_547_5,
        1.219_541_188_506_828_1,
        1.224_744_871_391_589,
        1.231_073_414_870_101_5,
    ],
};

pub fn trie_norm() -> f64 {
    (9.0 + 4.0 * 6f64.sqrt()) / 15.0
}

pub const GEE7_NORM: f64 = 9.0 / 7.0;

pub const GEE6_CYCLE_NORM: f64 = 4.0 / 3.0;

/// Numerical norms of the four obstruction graphs, to five places.
pub const OBSTRUCTION_ESTIMATES: [(GraphName, f64); 4] = [
    (GraphName::Obstruction54, 1.24131),
    (GraphName::Obstruction55, 1.25048),
    (GraphName::Obstruction56, 1.25655),
    (GraphName::Obstruction53, 1.25906),
];

/// Norm of the `2n`-cycle `Λ(n)`.
pub fn cycle_norm(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("cycle parameter must be at least 2, got {n}")));
    }
    let nf = n as f64;
    let theta = PI / (2.0 * nf);
    Ok(if n % 2 == 0 { (2.0 / nf) / theta.tan() } else { (2.0 / nf) / theta.sin() })
}

/// Norm of the paths `Σ(n,n)` and `Σ(n,n+1)`; `path_norm(0)` is 0.
pub fn path_norm(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let m = (n + 1) as f64;
    (2.0 / m) / (PI / (2.0 * m)).tan()
}

/// Older lower and upper estimates for `‖Σ(n,n)‖`; the upper one is exact.
pub fn popa_bounds(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let lower = if n == 0 { 0.0 } else { (1.0 / (PI / (4.0 * nf + 2.0)).sin() - 1.0) / nf };
    (lower, path_norm(n))
}

pub fn bracket_ones_norm(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * nf / (nf + 1.0)).sqrt()
}

/// Exact norm of a named graph, where one is known in closed form.
pub fn exact_norm(name: GraphName) -> Option<f64> {
    use GraphName::*;
    match name {
        SingleEdge => Some(1.0),
        SigmaSquare(n) | SigmaWide(n) if n >= 1 => Some(path_norm(n)),
        Lambda(1) => Some(1.0),
        Lambda(n) if n >= 2 => cycle_norm(n).ok(),
        E(k) | F(k) if (1..=6).contains(&k) => Some(ETA.eta[k]),
        Trie => Some(trie_norm()),
        Gee7 => Some(GEE7_NORM),
        Gee6Cycle => Some(GEE6_CYCLE_NORM),
        BracketOnes(n) if n >= 1 => Some(bracket_ones_norm(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_table_matches_closed_forms() {
        let fresh = EtaConstants::new();
        for k in 0..7 {
            assert!((fresh.eta[k] - ETA.eta[k]).abs() < 1e-15, "eta {k}");
        }
        assert!(ETA.eta.windows(2).all(|w| w[0] < w[1]));
        let approx = [1.1547005, 1.2071068, 1.2195412, 1.2247449, 1.2310734];
        for (k, v) in approx.iter().enumerate() {
            assert!((ETA.eta[k + 2] - v).abs() < 1e-6);
        }
    }

    #[test]
    fn cycle_and_path_examples() {
        assert!((cycle_norm(3).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        assert!((cycle_norm(4).unwrap() - ETA.eta[3]).abs() < 1e-14);
        assert!((cycle_norm(2).unwrap() - 1.0).abs() < 1e-14);
        assert!(cycle_norm(1).is_err());
        assert!((path_norm(1) - 1.0).abs() < 1e-14);
        assert!((path_norm(2) - ETA.eta[2]).abs() < 1e-14);
        assert!((path_norm(4) - ETA.eta[6]).abs() < 1e-14);
        assert!((path_norm(3) - ETA.eta[3]).abs() < 1e-14);
    }

    #[test]
    fn popa_examples() {
        let (lo, hi) = popa_bounds(1);
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 1.0).abs() < 1e-14);
        let (lo, hi) = popa_bounds(2);
        assert!((lo - 1.118).abs() < 1e-3);
        assert!(lo <= hi && (hi - ETA.eta[2]).abs() < 1e-14);
    }
}
