//! Exact rational arithmetic for identity parameters.
//!
//! Every theorem parameter (`a`, `b`, `c`, `d`) stays a [`Rational`] until the
//! last possible moment, so reduction constraints like `d = 5/4` and the
//! rational prefactors of the closed forms are checked bit-exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Canonical-form rational number: `denominator > 0`, gcd(|num|, den) = 1.
///
/// Backed by [`BigRational`], which maintains the canonical form on every
/// operation; equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// Error for the rational literal grammar
/// `[-]digits` | `[-]digits "/" digits` | `[-]digits "." digits`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numerator), BigInt::from(denominator)))
    }

    pub fn from_big(numerator: BigInt, denominator: BigInt) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        Rational(BigRational::new(numerator, denominator))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True when the value is in {0, -1, -2, ...}: the pole set of Gamma and
    /// the excluded set for the `d` parameter.
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && !self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Largest integer `<= self`.
    pub fn floor_bigint(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Exact integer value, if the rational is an integer that fits in i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Lossy conversion for heuristics (budget estimates, sizing).
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn pow(&self, exp: i32) -> Self {
        use num_traits::Pow;
        Rational(Pow::pow(&self.0, exp))
    }

    pub(crate) fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Parse a rational literal. Decimal literals are accepted only when
/// terminating (they always are, as written), so the value is exact.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if body.is_empty() {
        return Err(malformed());
    }

    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

    let mut value = if let Some((num, den)) = body.split_once('/') {
        if !all_digits(num) || !all_digits(den) {
            return Err(malformed());
        }
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        BigRational::new(num.parse().expect("digits"), den)
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(malformed());
        }
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let digits: BigInt = format!("{int_part}{frac_part}").parse().expect("digits");
        BigRational::new(digits, scale)
    } else {
        if !all_digits(body) {
            return Err(malformed());
        }
        BigRational::from_integer(body.parse().expect("digits"))
    };

    if negative {
        value = -value;
    }
    Ok(Rational(value))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_the_grammar() {
        assert_eq!(q("1/2"), Rational::new(1, 2));
        assert_eq!(q("0.25"), Rational::new(1, 4));
        assert_eq!(q("5/4"), Rational::new(5, 4));
        assert_eq!(q("-3"), Rational::from_integer(-3));
        assert_eq!(q("-6/4"), Rational::new(-3, 2));
        assert_eq!(q("2.50"), Rational::new(5, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "-", "1/", "/2", "1//2", "a", "1.2.3", "+1", "1/-2", ".5", "5.", "1 /2"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
        assert_eq!(
            parse_rational("3/0"),
            Err(ParseRationalError::ZeroDenominator("3/0".into()))
        );
    }

    #[test]
    fn canonical_form() {
        let r = q("6/8");
        assert_eq!(r.numerator(), &BigInt::from(3));
        assert_eq!(r.denominator(), &BigInt::from(4));
        assert_eq!(q("-2/4").to_string(), "-1/2");
        assert_eq!(q("8/4").to_string(), "2");
    }

    #[test]
    fn nonpositive_integer_detection() {
        assert!(q("0").is_nonpositive_integer());
        assert!(q("-2").is_nonpositive_integer());
        assert!(!q("2").is_nonpositive_integer());
        assert!(!q("-1/2").is_nonpositive_integer());
    }

    #[test]
    fn reciprocal_product_is_one() {
        let a = q("-22/7");
        assert_eq!(&a * &a.recip(), Rational::one());
    }
}
