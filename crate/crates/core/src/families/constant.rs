//! Transcendental constants attached to weight normalizations.
//!
//! Every squared norm and every continuous moment of a family is a rational
//! multiple of one family constant. Keeping the constant as a tag lets ratios of
//! such quantities be formed exactly.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use statrs::function::gamma::ln_gamma;

use crate::algebra::rational::to_f64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    One,
    SqrtPi,
    /// `Gamma(a)`.
    Gamma(BigRational),
    /// `2^(a+b+1) B(a+1, b+1)`.
    JacobiBeta(BigRational, BigRational),
    /// `(1 - base)^(-exponent)`.
    InversePower { base: BigRational, exponent: BigRational },
    /// `exp(-value)`.
    ExpNeg(BigRational),
    /// `Gamma(N+a) Gamma(b+1) / Gamma(N)`.
    HahnBase {
        alpha: BigRational,
        beta: BigRational,
        size: usize,
    },
}

impl Constant {
    pub fn value(&self) -> f64 {
        self.ln_value().exp()
    }

    pub fn ln_value(&self) -> f64 {
        match self {
            Constant::One => 0.0,
            Constant::SqrtPi => 0.5 * std::f64::consts::PI.ln(),
            Constant::Gamma(a) => ln_gamma(to_f64(a)),
            Constant::JacobiBeta(a, b) => {
                let (a, b) = (to_f64(a), to_f64(b));
                (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
                    - ln_gamma(a + b + 2.0)
            }
            Constant::InversePower { base, exponent } => {
                -to_f64(exponent) * (1.0 - to_f64(base)).ln()
            }
            Constant::ExpNeg(value) => -to_f64(value),
            Constant::HahnBase { alpha, beta, size } => {
                let n = *size as f64;
                ln_gamma(n + to_f64(alpha)) + ln_gamma(to_f64(beta) + 1.0) - ln_gamma(n)
            }
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::One => write!(f, "1"),
            Constant::SqrtPi => write!(f, "sqrt(pi)"),
            Constant::Gamma(a) => write!(f, "Gamma({a})"),
            Constant::JacobiBeta(a, b) => write!(f, "2^({a}+{b}+1) B({a}+1, {b}+1)"),
            Constant::InversePower { base, exponent } => write!(f, "(1-{base})^(-{exponent})"),
            Constant::ExpNeg(value) => write!(f, "exp(-{value})"),
            Constant::HahnBase { alpha, beta, size } => {
                write!(f, "Gamma({size}+{alpha}) Gamma({beta}+1) / Gamma({size})")
            }
        }
    }
}

/// `rational * constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scaled {
    pub rational: BigRational,
    pub constant: Constant,
}

impl Scaled {
    pub fn new(rational: BigRational, constant: Constant) -> Self {
        Self { rational, constant }
    }

    pub fn to_f64(&self) -> f64 {
        if self.rational.is_negative() {
            return -(to_f64(&-&self.rational).ln() + self.constant.ln_value()).exp();
        }
        (to_f64(&self.rational).ln() + self.constant.ln_value()).exp()
    }

    /// Exact ratio when both sides carry the same constant.
    pub fn ratio(&self, other: &Scaled) -> Option<BigRational> {
        (self.constant == other.constant).then(|| &self.rational / &other.rational)
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            Constant::One => write!(f, "{}", self.rational),
            _ => write!(f, "{} * {}", self.rational, self.constant),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn constant_values() {
        assert!((Constant::SqrtPi.value() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        // Gamma(3) = 2
        assert!((Constant::Gamma(int(3)).value() - 2.0).abs() < 1e-13);
        // 2^2 B(3/2, 3/2) = 4 * pi/8
        let jb = Constant::JacobiBeta(rat(1, 2), rat(1, 2)).value();
        assert!((jb - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        let ip = Constant::InversePower {
            base: rat(1, 3),
            exponent: int(2),
        };
        assert!((ip.value() - 2.25).abs() < 1e-14);
        // Gamma(9) Gamma(3) / Gamma(8) = 8 * 2
        let hb = Constant::HahnBase {
            alpha: int(1),
            beta: int(2),
            size: 8,
        };
        assert!((hb.value() - 16.0).abs() < 1e-11);
    }

    #[test]
    fn scaled_ratio_requires_same_constant() {
        let a = Scaled::new(int(4), Constant::SqrtPi);
        let b = Scaled::new(int(2), Constant::SqrtPi);
        assert_eq!(a.ratio(&b), Some(int(2)));
        assert_eq!(a.ratio(&Scaled::new(int(1), Constant::One)), None);
        assert!((Scaled::new(int(-2), Constant::One).to_f64() + 2.0).abs() < 1e-15);
    }
}
