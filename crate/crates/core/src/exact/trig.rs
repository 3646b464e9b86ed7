use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TOL: f64 = 1e-10;

/// `±κ` or `±λ`, where `κ(j) = cos(jθ)`, `λ(j) = sin(jθ)` and
/// `θ = π / (2(n+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrigFn {
    Cos,
    Sin,
    NegCos,
    NegSin,
}

impl TrigFn {
    pub fn eval(self, j: i64, n: usize) -> f64 {
        let x = j as f64 * theta(n);
        match self {
            TrigFn::Cos => x.cos(),
            TrigFn::Sin => x.sin(),
            TrigFn::NegCos => -x.cos(),
            TrigFn::NegSin => -x.sin(),
        }
    }
}

fn theta(n: usize) -> f64 {
    PI / (2.0 * (n as f64 + 1.0))
}

fn lambda(j: i64, n: usize) -> f64 {
    TrigFn::Sin.eval(j, n)
}

/// Checks `Σ_{j=0}^{N} f(a+2dj) = λ((N+1)d)/λ(d) · f(a+Nd)`.
pub fn verify_bigstar(big_n: usize, f: TrigFn, a: i64, d: i64, n: usize) -> Result<bool> {
    let period = 2 * (n as i64 + 1);
    if d.rem_euclid(period) == 0 {
        return Err(Error::InvalidInput(format!("λ({d}) vanishes for n = {n}")));
    }
    let lhs: f64 = (0..=big_n as i64).map(|j| f.eval(a + 2 * d * j, n)).sum();
    let rhs = lambda((big_n as i64 + 1) * d, n) / lambda(d, n) * f.eval(a + big_n as i64 * d, n);
    Ok((lhs - rhs).abs() <= TOL * (1.0 + big_n as f64))
}

/// The two alternating-sum identities over `j = 0, …, 2n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AltZeroCase {
    /// `Σ (−1)^j f(a+mj) = 0` for even `m` with `|m| ≤ 2n`.
    Part1 { f: TrigFn, a: i64, m: i64 },
    /// `Σ (−1)^j f(a+2j) g(sj) h(tj) = 0 = Σ (−1)^j g(sj) h(tj)` for
    /// `|s|, |t| ≤ n−1` with `s ≡ t (mod 2)`.
    Part2 { f: TrigFn, g: TrigFn, h: TrigFn, a: i64, s: i64, t: i64 },
}

pub fn verify_altzero(n: usize, case: AltZeroCase) -> Result<bool> {
    let ni = n as i64;
    let sign = |j: i64| if j % 2 == 0 { 1.0 } else { -1.0 };
    let range = 0..=(2 * ni + 1);
    match case {
        AltZeroCase::Part1 { f, a, m } => {
            if m % 2 != 0 || m.abs() > 2 * ni {
                return Err(Error::InvalidInput(format!("need even m with |m| <= {}, got {m}", 2 * n)));
            }
            let sum: f64 = range.map(|j| sign(j) * f.eval(a + m * j, n)).sum();
            Ok(sum.abs() <= TOL)
        }
        AltZeroCase::Part2 { f, g, h, a, s, t } => {
            if s.abs() > ni - 1 || t.abs() > ni - 1 || (s - t).rem_euclid(2) != 0 {
                return Err(Error::InvalidInput(format!(
                    "need |s|, |t| <= {} and s = t mod 2, got s = {s}, t = {t}",
                    ni - 1
                )));
            }
            let first: f64 =
                range.clone().map(|j| sign(j) * f.eval(a + 2 * j, n) * g.eval(s * j, n) * h.eval(t * j, n)).sum();
            let second: f64 = range.map(|j| sign(j) * g.eval(s * j, n) * h.eval(t * j, n)).sum();
            Ok(first.abs() <= TOL && second.abs() <= TOL)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigstar_examples() {
        assert!(verify_bigstar(1, TrigFn::Cos, 0, 1, 2).unwrap());
        assert!(verify_bigstar(3, TrigFn::Sin, 5, -3, 4).unwrap());
        assert!(verify_bigstar(2, TrigFn::Cos, 0, 6, 2).is_err());
    }

    #[test]
    fn altzero_examples() {
        assert!(verify_altzero(2, AltZeroCase::Part1 { f: TrigFn::Cos, a: 1, m: 2 }).unwrap());
        let case =
            AltZeroCase::Part2 { f: TrigFn::Cos, g: TrigFn::Sin, h: TrigFn::Sin, a: 0, s: 2, t: 0 };
        assert!(verify_altzero(3, case).unwrap());
        assert!(verify_altzero(2, AltZeroCase::Part1 { f: TrigFn::Cos, a: 0, m: 6 }).is_err());
        assert!(verify_altzero(3, AltZeroCase::Part1 { f: TrigFn::Cos, a: 0, m: 3 }).is_err());
    }
}
