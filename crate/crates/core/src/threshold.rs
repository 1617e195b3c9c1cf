//! Degree-sum thresholds and the small number-theoretic helpers they need.

use crate::error::{Error, Result};

/// `⌊√s⌋` in integer arithmetic.
pub fn floor_sqrt(s: u64) -> u64 {
    if s < 2 {
        return s;
    }
    let mut x = (s as f64).sqrt() as u64;
    while x * x > s {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= s {
        x += 1;
    }
    x
}

/// `⌈√s⌉` in integer arithmetic.
pub fn ceil_sqrt(s: u64) -> u64 {
    let f = floor_sqrt(s);
    if f * f == s {
        f
    } else {
        f + 1
    }
}

/// The unique `(p, q)` with `s = p² + q` and `0 ≤ q ≤ 2p`.
pub fn square_split(s: u64) -> (u64, u64) {
    let p = floor_sqrt(s);
    (p, s - p * p)
}

/// The correction term `c(s) ∈ {0, 1}`: `1` exactly when `1 ≤ q ≤ p`.
pub fn c_of_s(s: u64) -> u64 {
    let (p, q) = square_split(s);
    u64::from((1..=p).contains(&q))
}

/// Which published degree threshold to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    /// Minimum-degree threshold `δ(G)` for `K_{s,s}`-tiling.
    Zhao,
    /// `δ_U + δ_V ≥ n + 3s − 5`.
    Main1,
    /// `δ_U + δ_V ≥ n + 2s − 2⌈√s⌉ + d + c(s)` for `0 ≤ d ≤ s − 2⌈√s⌉ + c(s) + 1`.
    Main2 { d: u64 },
}

/// Largest admissible `d` for [`ThresholdKind::Main2`].
pub fn main2_max_d(s: u64) -> Option<u64> {
    (s + c_of_s(s) + 1).checked_sub(2 * ceil_sqrt(s))
}

/// Evaluates a threshold with `n = m·s`.
pub fn threshold(s: u64, m: u64, kind: ThresholdKind) -> Result<u64> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("threshold needs s ≥ 2, got {s}")));
    }
    let n = m * s;
    match kind {
        ThresholdKind::Zhao if m.is_multiple_of(2) => Ok(n / 2 + s - 1),
        ThresholdKind::Zhao => Ok((n + 3 * s) / 2 - 2),
        ThresholdKind::Main1 => Ok(n + 3 * s - 5),
        ThresholdKind::Main2 { d } => {
            let max_d = main2_max_d(s).unwrap_or(0);
            if d > max_d {
                return Err(Error::InvalidParameter(format!(
                    "d = {d} outside 0..={max_d} for s = {s}"
                )));
            }
            Ok(n + 2 * s + d + c_of_s(s) - 2 * ceil_sqrt(s))
        }
    }
}
