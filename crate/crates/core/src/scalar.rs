//! Arithmetic modes.
//!
//! Every computation that can run either exactly or in floating point is
//! generic over [`Scalar`]. The mode is fixed by the type parameter chosen
//! when the computation is set up, so exact and float values never mix.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers used throughout the crate.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `true` for exact rational arithmetic.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_bigint(i: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(i.clone()))
    }

    fn from_i64(i: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(i)))
    }

    fn div(&self, other: &Self) -> Self;

    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Text form used in CSV output: `p/q` for rationals, shortest
    /// round-trip decimal for doubles.
    fn format(&self) -> String;

    fn mode_name() -> &'static str {
        if Self::EXACT {
            "exact"
        } else {
            "float"
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn format(&self) -> String {
        fmt_ratio(self)
    }

    fn pow(&self, e: u32) -> Self {
        num_traits::Pow::pow(self, e)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        ratio_to_f64(r)
    }

    fn from_i64(i: i64) -> Self {
        i as f64
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn format(&self) -> String {
        format!("{self}")
    }

    fn pow(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
}

/// Converts a big rational to the nearest double, also when numerator and
/// denominator individually overflow `f64`.
pub fn ratio_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Shorthand for the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(i: impl Into<BigInt>) -> Rational {
    Rational::from_integer(i.into())
}

/// Formats a rational as `p/q`, or `p` for integers.
pub fn fmt_ratio(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        let r = ratio(-6, 4);
        assert_eq!(fmt_ratio(&r), "-3/2");
        assert_eq!(parse_ratio("-3/2"), Some(r));
        assert_eq!(parse_ratio("7"), Some(int(7)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn huge_ratio_to_float() {
        let big = BigInt::from(10).pow(400u32);
        let r = Rational::new(big.clone(), big * 3);
        assert!((ratio_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
    }
}
