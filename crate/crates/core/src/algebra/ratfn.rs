//! Rational functions `numerator / denominator` over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Always stored reduced: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invariant("rational function with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = BigRational::one() / den.leading();
        Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn constant(value: BigRational) -> Self {
        Poly::constant(value).into()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        (self.den == Poly::one()).then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        self.as_poly().and_then(Poly::as_constant)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::reduced(self.num.scale(factor), self.den.clone())
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(num, &self.den * &self.den)
    }

    pub fn shift(&self, k: &BigRational) -> Self {
        Self::reduced(self.num.shift(k), self.den.shift(k))
    }

    /// `None` at a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let den = self.den.eval(at);
        (!den.is_zero()).then(|| self.num.eval(at) / den)
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.num.eval_f64(at) / self.den.eval_f64(at)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den == Poly::one() {
            self.num.display_in(var)
        } else {
            format!("({}) / ({})", self.num.display_in(var), self.den.display_in(var))
        }
    }
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RationalFn {
    fn from(num: Poly) -> Self {
        Self { num, den: Poly::one() }
    }
}

impl From<&Poly> for RationalFn {
    fn from(num: &Poly) -> Self {
        num.clone().into()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;

    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFn::reduced(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;

    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;

    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        RationalFn::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;

    /// Panics when dividing by the zero function.
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFn::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;

    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        &self - &rhs
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        &self * &rhs
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn reduces_common_factors() {
        let num = Poly::from_ints(&[-1, 0, 1]);
        let den = Poly::from_ints(&[2, 2]);
        let f = RationalFn::new(num, den).unwrap();
        assert_eq!(f.as_poly(), Some(&Poly::new(vec![rat(-1, 2), rat(1, 2)])));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(RationalFn::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn arithmetic_and_derivative() {
        let inv = RationalFn::new(Poly::one(), Poly::var()).unwrap();
        let sum = &inv + &RationalFn::from(Poly::var());
        // (1 + s^2)/s
        assert_eq!(sum.numer(), &Poly::from_ints(&[1, 0, 1]));
        let d = inv.derivative();
        assert_eq!(d, RationalFn::new(Poly::from_ints(&[-1]), Poly::from_ints(&[0, 0, 1])).unwrap());
        assert_eq!((&inv * &RationalFn::from(Poly::var())).as_constant(), Some(int(1)));
        assert!((&sum - &sum).is_zero());
    }

    #[test]
    fn shift_and_eval() {
        let f = RationalFn::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, 1])).unwrap();
        assert_eq!(f.shift(&int(1)).eval(&int(0)), Some(rat(1, 2)));
        assert_eq!(f.eval(&int(-1)), None);
    }
}
