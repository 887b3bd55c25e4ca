//! The scalar tower: exact rationals and 64-bit floats.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers, the exact default.
pub type Rational = BigRational;

/// Coefficient field of a quadratic space. Characteristic 0 by construction.
pub trait Scalar: Num + Signed + Clone + Debug + Display + PartialOrd + Send + Sync + 'static {
    /// `true` for exact arithmetic.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    /// Zero test used for sparse storage and pivoting. Exact for rationals;
    /// floats treat magnitudes below [`FLOAT_EPS`] as zero.
    fn is_negligible(&self) -> bool;

    /// Parses a literal: an integer, `p/q`, or (floats only) a decimal.
    fn parse_literal(src: &str) -> Option<Self>;

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }
}

/// Absolute threshold below which float coefficients are dropped.
pub const FLOAT_EPS: f64 = 1e-12;

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn parse_literal(src: &str) -> Option<Self> {
        let (n, d) = match src.split_once('/') {
            Some((n, d)) => (n, d),
            None => (src, "1"),
        };
        if !is_integer_literal(n) || !is_unsigned_literal(d) {
            return None;
        }
        let n = BigInt::from_str(n).ok()?;
        let d = BigInt::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.abs() < FLOAT_EPS
    }

    fn parse_literal(src: &str) -> Option<Self> {
        if let Some((n, d)) = src.split_once('/') {
            if !is_integer_literal(n) || !is_unsigned_literal(d) {
                return None;
            }
            let d: f64 = d.parse().ok()?;
            if d == 0.0 {
                return None;
            }
            return Some(n.parse::<f64>().ok()? / d);
        }
        let body = src.strip_prefix('-').unwrap_or(src);
        let mut parts = body.splitn(2, '.');
        let int = parts.next().unwrap_or("");
        let frac = parts.next();
        let ok = is_unsigned_literal(int) && frac.is_none_or(|f| f.is_empty() || is_unsigned_literal(f));
        if !ok {
            return None;
        }
        src.parse().ok()
    }
}

fn is_unsigned_literal(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn is_integer_literal(s: &str) -> bool {
    is_unsigned_literal(s.strip_prefix('-').unwrap_or(s))
}

/// Sign of a scalar as -1, 0 or 1, honoring the negligibility threshold.
pub fn sign_of<S: Scalar>(s: &S) -> i8 {
    if s.is_negligible() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}
