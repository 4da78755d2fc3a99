//! Numeric field abstraction shared by the simplex solver and the Fourier check.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed};

/// An ordered field. Exact types report a zero tolerance.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Display {
    /// Magnitude below which a value counts as zero.
    fn tolerance() -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).unwrap() / Self::from_i64(denom).unwrap()
    }

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn is_negligible(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
}

impl Scalar for Rational64 {
    fn tolerance() -> Self {
        Rational64::from_integer(0)
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

/// `numer / denom` as an exact rational.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `a/b` or a plain integer.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(a, b))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// `a/b`, or `a` when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(value: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
