//! The extremal parameter `α` and exact comparisons against expressions in `t = α^{1/3}`.
//!
//! Every threshold used by the pipeline has the form `a + b·t + c·t²` with rational `a, b, c`.
//! Its sign at `t` is decided exactly: directly when `α` is a perfect rational cube, otherwise
//! by narrowing a rational interval around `t` until interval evaluation excludes zero. Since
//! `t` then has degree 3 over the rationals, a nonzero quadratic never vanishes at `t`, so the
//! narrowing terminates.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::{BigRational, Ratio};
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `α ∈ (0, 1)` as an exact fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alpha {
    value: Ratio<u64>,
    /// `α^{1/3}` when it is rational.
    cube_root: Option<Ratio<u64>>,
}

/// The default detection parameter; its cube root is `1/4`.
pub const DEFAULT_ALPHA: Ratio<u64> = Ratio::new_raw(1, 64);

fn icbrt(x: u64) -> Option<u64> {
    let mut r = (x as f64).cbrt().round() as u64;
    while r.saturating_mul(r).saturating_mul(r) > x {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1).saturating_mul(r + 1) <= x {
        r += 1;
    }
    (r * r * r == x).then_some(r)
}

impl Alpha {
    pub fn new(value: Ratio<u64>) -> Result<Self> {
        if value.is_zero() || value >= Ratio::one() {
            return Err(Error::InvalidParameter(format!("α must lie in (0, 1), got {value}")));
        }
        let cube_root = icbrt(*value.numer())
            .zip(icbrt(*value.denom()))
            .map(|(a, b)| Ratio::new(a, b));
        Ok(Alpha { value, cube_root })
    }

    /// Parses `p/q` or a decimal such as `0.05`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse α from {text:?}"));
        let text = text.trim();
        let value = if let Some((p, q)) = text.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ratio::new(p, q)
        } else if let Some((int, frac)) = text.split_once('.') {
            if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let den = 10u64.pow(frac.len() as u32);
            let num: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            Ratio::new(int * den + num, den)
        } else {
            Ratio::from_integer(text.parse().map_err(|_| bad())?)
        };
        Alpha::new(value)
    }

    pub fn value(&self) -> Ratio<u64> {
        self.value
    }

    pub fn cube_root(&self) -> Option<Ratio<u64>> {
        self.cube_root
    }

    /// `t = α^{1/3}` as a float, for display only.
    pub fn t_f64(&self) -> f64 {
        (*self.value.numer() as f64 / *self.value.denom() as f64).cbrt()
    }

    /// Sign of `e` evaluated at `t = α^{1/3}`.
    pub fn sign(&self, e: &Expr) -> Ordering {
        if let Some(t) = self.cube_root {
            let t = big(t);
            return e.eval(&t).cmp(&BigRational::zero());
        }
        let alpha = big(self.value);
        // t ∈ [lo, hi] with lo³ ≤ α ≤ hi³
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one();
        loop {
            let (min, max) = e.range(&lo, &hi);
            if min.is_positive() {
                return Ordering::Greater;
            }
            if max.is_negative() {
                return Ordering::Less;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            if &mid * &mid * &mid <= alpha {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// `lhs ≥ rhs` at `t`.
    pub fn ge(&self, lhs: &Expr, rhs: &Expr) -> bool {
        self.sign(&lhs.sub(rhs)) != Ordering::Less
    }

    /// `lhs > rhs` at `t`.
    pub fn gt(&self, lhs: &Expr, rhs: &Expr) -> bool {
        self.sign(&lhs.sub(rhs)) == Ordering::Greater
    }

    /// `lhs < rhs` at `t`.
    pub fn lt(&self, lhs: &Expr, rhs: &Expr) -> bool {
        self.sign(&lhs.sub(rhs)) == Ordering::Less
    }

    /// `lhs ≤ rhs` at `t`.
    pub fn le(&self, lhs: &Expr, rhs: &Expr) -> bool {
        self.sign(&lhs.sub(rhs)) != Ordering::Greater
    }

    /// Float value of `e`, for traces and reports.
    pub fn approx(&self, e: &Expr) -> f64 {
        let t = self.t_f64();
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        f(&e.a) + f(&e.b) * t + f(&e.c) * t * t
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn big(r: Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `a + b·t + c·t²` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl Expr {
    fn from_coeffs(a: i64, b: i64, c: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        Expr { a: r(a), b: r(b), c: r(c) }
    }

    /// The constant `k`.
    pub fn int(k: i64) -> Self {
        Expr::from_coeffs(k, 0, 0)
    }

    /// `k·t`.
    pub fn t(k: i64) -> Self {
        Expr::from_coeffs(0, k, 0)
    }

    /// `k·t²`.
    pub fn t2(k: i64) -> Self {
        Expr::from_coeffs(0, 0, k)
    }

    pub fn add(&self, o: &Expr) -> Expr {
        Expr {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
        }
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        Expr {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            c: &self.c - &o.c,
        }
    }

    fn eval(&self, t: &BigRational) -> BigRational {
        &self.a + &self.b * t + &self.c * t * t
    }

    /// Bounds on the value over `t ∈ [lo, hi]`, `0 ≤ lo`.
    fn range(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let term = |k: &BigRational, x: &BigRational, y: &BigRational| {
            let (p, q) = (k * x, k * y);
            if p <= q { (p, q) } else { (q, p) }
        };
        let (b0, b1) = term(&self.b, lo, hi);
        let (c0, c1) = term(&self.c, &(lo * lo), &(hi * hi));
        (&self.a + b0 + c0, &self.a + b1 + c1)
    }
}
