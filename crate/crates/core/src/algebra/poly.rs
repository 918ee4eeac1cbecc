//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{int, to_f64};

/// Dense polynomial, coefficients indexed by power.
///
/// Trailing zero coefficients are never stored, so two polynomials are equal
/// exactly when their coefficient vectors are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(value: BigRational) -> Self {
        Self::new(vec![value])
    }

    /// The formal variable itself.
    pub fn var() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `slope * t + intercept`.
    pub fn linear(slope: BigRational, intercept: BigRational) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// The value if this polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// `q(t) = p(t + k)`.
    pub fn shift(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        let step = Poly::linear(BigRational::one(), k.clone());
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &step) + &Poly::constant(c.clone())
        })
    }

    pub fn shift_by(&self, k: i64) -> Self {
        self.shift(&int(k))
    }

    /// Forward difference `p(t+1) - p(t)`.
    pub fn fwd_diff(&self) -> Self {
        &self.shift_by(1) - self
    }

    /// Backward difference `p(t) - p(t-1)`.
    pub fn bwd_diff(&self) -> Self {
        self - &self.shift_by(-1)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * at + to_f64(c))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= d_deg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); n - d_deg];
        for i in (0..quot.len()).rev() {
            let factor = &rem[i + d_deg] / &lead;
            if factor.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &factor * dc;
            }
            quot[i] = factor;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact polynomial square root with a positive leading coefficient.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 || self.leading().is_negative() {
            return None;
        }
        let half = deg / 2;
        let lead = super::rational::rational_sqrt(&self.leading())?;
        // Solve for the root's coefficients from the top down.
        let mut root = vec![BigRational::zero(); half + 1];
        root[half] = lead.clone();
        let two_lead = &lead * int(2);
        for k in (0..half).rev() {
            // coefficient of t^(half + k) in root^2 must match self
            let target = self.coeff(half + k);
            let mut acc = BigRational::zero();
            for i in (k + 1)..=half {
                let j = half + k - i;
                if j > k && j <= half {
                    acc += &root[i] * &root[j];
                }
            }
            root[k] = (target - acc) / &two_lead;
        }
        let root = Poly::new(root);
        (&root * &root == *self).then_some(root)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = magnitude.is_one() && power > 0;
            if !unit {
                if magnitude.is_integer() || power == 0 {
                    out.push_str(&magnitude.to_string());
                } else {
                    out.push_str(&format!("({magnitude})"));
                }
            }
            match power {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{power}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl From<BigRational> for Poly {
    fn from(value: BigRational) -> Self {
        Poly::constant(value)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn arithmetic_examples() {
        let s_plus = Poly::from_ints(&[1, 1]);
        let s_minus = Poly::from_ints(&[-1, 1]);
        assert_eq!(&s_plus * &s_minus, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(&s_plus + &Poly::zero(), s_plus);
        assert_eq!(Poly::from_ints(&[0, 2]).scale(&rat(1, 2)), Poly::var());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::from_ints(&[0, 0, 0, 1]).derivative(), Poly::from_ints(&[0, 0, 3]));
        assert!(Poly::from_ints(&[5]).derivative().is_zero());
        assert_eq!(Poly::from_ints(&[0, -2]).derivative(), Poly::from_ints(&[-2]));
    }

    #[test]
    fn shift_examples() {
        let sq = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(sq.shift_by(1), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(sq.shift_by(0), sq);
        assert_eq!(Poly::var().shift_by(-1), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn difference_examples() {
        let sq = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(sq.fwd_diff(), Poly::from_ints(&[1, 2]));
        assert_eq!(sq.bwd_diff(), Poly::from_ints(&[-1, 2]));
        assert!(Poly::from_ints(&[4]).fwd_diff().is_zero());
    }

    #[test]
    fn eval_examples() {
        // H_2 = 4s^2 - 2 from H_0 = 1, H_1 = 2s and s H_1 = H_2 / 2 + H_0
        let h1 = Poly::from_ints(&[0, 2]);
        let h2 = (&(&Poly::var() * &h1) - &Poly::one()).scale(&int(2));
        assert_eq!(h2, Poly::from_ints(&[-2, 0, 4]));
        assert_eq!(h2.eval(&int(1)), int(2));
        let p = Poly::from_ints(&[7, 3, 1]);
        assert_eq!(p.eval(&int(0)), int(7));
        assert_eq!(Poly::from_ints(&[1, 2]).eval(&rat(1, 2)), int(2));
        assert_eq!(Poly::from_ints(&[1, 2]).eval_f64(0.5), 2.0);
    }

    #[test]
    fn zero_degree_is_a_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(Poly::new(vec![int(1), int(0), int(0)]).degree(), Some(0));
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&a.scale(&int(3)), &Poly::from_ints(&[2, 2]));
        assert_eq!(g, b);
    }

    #[test]
    fn polynomial_square_roots() {
        let p = Poly::from_ints(&[1, -3, 2]);
        assert_eq!((&p * &p).sqrt(), Some(p.clone()).map(|q| if q.leading() < int(0) { -q } else { q }));
        assert_eq!(Poly::from_ints(&[1, 0, 1]).sqrt(), None);
        assert_eq!(Poly::from_ints(&[0, 1]).sqrt(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[-2, 0, 4]).display_in("s"), "4s^2 - 2");
        assert_eq!(Poly::new(vec![rat(1, 2), int(-1)]).to_string(), "-x + 1/2");
    }
}
