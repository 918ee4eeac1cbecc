//! Helpers around [`BigRational`]: construction, parsing, exact square roots
//! and signed square roots of rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `num / den` as a canonical rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root when `value` is the square of a rational.
pub fn rational_sqrt(value: &BigRational) -> Option<BigRational> {
    if value.is_negative() {
        return None;
    }
    let num = integer_sqrt(value.numer())?;
    let den = integer_sqrt(value.denom())?;
    Some(BigRational::new(num, den))
}

fn integer_sqrt(value: &BigInt) -> Option<BigInt> {
    let root = value.sqrt();
    (&root * &root == *value).then_some(root)
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, j| acc * (a + int(j as i64)))
}

pub fn factorial(n: usize) -> BigRational {
    pochhammer(&BigRational::one(), n)
}

pub fn sign_of(value: &BigRational) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

/// A real number `sign * sqrt(square)` with rational `square >= 0`.
///
/// Normalization constants of orthonormal functions are square roots of
/// rationals; keeping the square and the sign separately lets every identity
/// between them be checked exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSqrt {
    sign: i8,
    square: BigRational,
}

impl SignedSqrt {
    pub fn new(sign: i8, square: BigRational) -> Self {
        assert!(!square.is_negative(), "square of a real number must be non-negative");
        if sign == 0 || square.is_zero() {
            return Self::zero();
        }
        Self {
            sign: sign.signum(),
            square,
        }
    }

    pub fn zero() -> Self {
        Self {
            sign: 0,
            square: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(value: BigRational) -> Self {
        let sign = sign_of(&value);
        Self::new(sign, &value * &value)
    }

    /// `+sqrt(square)`.
    pub fn sqrt(square: BigRational) -> Self {
        Self::new(1, square)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The exact rational value, if the square is a perfect rational square.
    pub fn to_rational(&self) -> Option<BigRational> {
        let root = rational_sqrt(&self.square)?;
        Some(if self.sign < 0 { -root } else { root })
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * to_f64(&self.square).sqrt()
    }

    pub fn mul(&self, other: &SignedSqrt) -> SignedSqrt {
        SignedSqrt::new(self.sign * other.sign, &self.square * &other.square)
    }

    pub fn scale_square(&self, factor: &BigRational) -> SignedSqrt {
        SignedSqrt::new(self.sign, &self.square * factor)
    }

    pub fn neg(&self) -> SignedSqrt {
        SignedSqrt::new(-self.sign, self.square.clone())
    }
}

impl fmt::Display for SignedSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sign, self.to_rational()) {
            (0, _) => write!(f, "0"),
            (_, Some(value)) => write!(f, "{value}"),
            (s, None) => write!(f, "{}sqrt({})", if s < 0 { "-" } else { "" }, self.square),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn canonical_form_is_lowest_terms() {
        let value = rat(6, -4);
        assert_eq!(value.numer(), &BigInt::from(-3));
        assert_eq!(value.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 5), rat(0, 1));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn signed_sqrt_products() {
        let a = SignedSqrt::new(-1, int(8));
        let b = SignedSqrt::sqrt(int(2));
        assert_eq!(a.mul(&b).to_rational(), Some(int(-4)));
        assert!((a.to_f64() + 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&int(3), 3), int(60));
        assert_eq!(factorial(5), int(120));
        assert_eq!(pochhammer(&rat(1, 2), 0), int(1));
    }
}
