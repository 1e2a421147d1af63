//! Scalar fields the algebra machinery is generic over.
//!
//! Every algorithm in this crate only needs field operations and a zero
//! test. Exact rationals ([`Q`](crate::Q)) are the default; fixed-width
//! rationals and `f64` are accepted for quick experiments.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, NumAssignRef, NumRef, One, Zero};

/// A field of characteristic zero.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + NumRef + NumAssignRef + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Zero test used by every elimination routine. Exact types use `is_zero`.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// `(-1)^bit` as a scalar.
    fn sign(bit: u8) -> Self {
        if bit & 1 == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for Rational64 {
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

/// Parses an exact rational literal of the form `n` or `p/q`.
///
/// Decimal points, exponents and whitespace inside the literal are rejected
/// so that every coefficient on disk is exact.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match text.split_once('/') {
        None => {
            if !valid(text) {
                return None;
            }
            Some(BigRational::from_integer(text.parse().ok()?))
        }
        Some((num, den)) => {
            if !valid(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
                return None;
            }
            let den: BigInt = den.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num.parse().ok()?, den))
        }
    }
}

/// Canonical text form of an exact rational: `n` or `p/q` in lowest terms.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_rational("1/2"), Some(BigRational::from_ratio(1, 2)));
        assert_eq!(parse_rational("-6"), Some(BigRational::from_int(-6)));
        assert_eq!(parse_rational("4/8"), Some(BigRational::from_ratio(1, 2)));
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational(" 1"), None);
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format_rational(&BigRational::from_ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&BigRational::from_int(7)), "7");
    }

    #[test]
    fn signs() {
        assert_eq!(f64::sign(3), -1.0);
        assert_eq!(Rational64::sign(2), Rational64::one());
    }
}
