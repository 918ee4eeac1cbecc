//! Closed forms per family. `Chebyshev` never reaches this module: it is
//! resolved to `Hahn { 0, 0, N }` by the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Bound, Constant, Family, Kind, Recurrence, Scaled};
use crate::algebra::rational::{int, pochhammer, rat};
use crate::algebra::Poly;

fn finite(value: i64) -> Bound {
    Bound::At(int(value))
}

pub(super) fn equation(family: &Family) -> (Kind, Poly, Poly, (Bound, Bound)) {
    let one = BigRational::one();
    match family {
        Family::Hermite => (
            Kind::Continuous,
            Poly::one(),
            Poly::from_ints(&[0, -2]),
            (Bound::NegInf, Bound::PosInf),
        ),
        Family::Laguerre { alpha } => (
            Kind::Continuous,
            Poly::var(),
            Poly::linear(-&one, alpha + &one),
            (finite(0), Bound::PosInf),
        ),
        Family::Legendre => (
            Kind::Continuous,
            Poly::from_ints(&[1, 0, -1]),
            Poly::from_ints(&[0, -2]),
            (finite(-1), finite(1)),
        ),
        Family::Jacobi { alpha, beta } => (
            Kind::Continuous,
            Poly::from_ints(&[1, 0, -1]),
            Poly::linear(-(alpha + beta + int(2)), beta - alpha),
            (finite(-1), finite(1)),
        ),
        Family::Kravchuk { p, size } => {
            let q = &one - p;
            let n = int(*size as i64);
            (
                Kind::Discrete,
                Poly::var(),
                Poly::linear(-(&one / &q), n * p / &q),
                (finite(0), finite(*size as i64 + 1)),
            )
        }
        Family::Meixner { gamma, mu } => (
            Kind::Discrete,
            Poly::var(),
            Poly::linear(mu - &one, mu * gamma),
            (finite(0), Bound::PosInf),
        ),
        Family::Charlier { mu } => (
            Kind::Discrete,
            Poly::var(),
            Poly::linear(-one, mu.clone()),
            (finite(0), Bound::PosInf),
        ),
        Family::Hahn { alpha, beta, size } => {
            let n = int(*size as i64);
            (
                Kind::Discrete,
                Poly::new(vec![BigRational::zero(), &n + alpha, -one.clone()]),
                Poly::linear(-(alpha + beta + int(2)), (beta + &one) * (&n - &one)),
                (finite(0), finite(*size as i64)),
            )
        }
        Family::Chebyshev { .. } => unreachable!("resolved to hahn"),
    }
}

pub(super) fn recurrence(family: &Family, n: usize) -> Recurrence {
    let k = int(n as i64);
    let one = BigRational::one();
    let two = int(2);
    match family {
        Family::Hermite => Recurrence {
            alpha: rat(1, 2),
            beta: BigRational::zero(),
            gamma: k,
        },
        Family::Laguerre { alpha } => Recurrence {
            alpha: -(&k + &one),
            beta: &two * &k + alpha + &one,
            gamma: -(&k + alpha),
        },
        Family::Legendre => Recurrence {
            alpha: (&k + &one) / (&two * &k + &one),
            beta: BigRational::zero(),
            gamma: &k / (&two * &k + &one),
        },
        Family::Jacobi { alpha: a, beta: b } => {
            let s = a + b;
            let alpha = if n == 0 {
                &two / (&s + &two)
            } else {
                &two * (&k + &one) * (&k + &s + &one) / ((&two * &k + &s + &one) * (&two * &k + &s + &two))
            };
            let beta = if n == 0 {
                (b - a) / (&s + &two)
            } else {
                (b * b - a * a) / ((&two * &k + &s) * (&two * &k + &s + &two))
            };
            let gamma = if n == 0 {
                BigRational::zero()
            } else {
                &two * (&k + a) * (&k + b) / ((&two * &k + &s) * (&two * &k + &s + &one))
            };
            Recurrence { alpha, beta, gamma }
        }
        Family::Kravchuk { p, size } => {
            let q = &one - p;
            let big = int(*size as i64);
            Recurrence {
                alpha: &k + &one,
                beta: &k + p * (&big - &two * &k),
                gamma: p * &q * (&big - &k + &one),
            }
        }
        Family::Meixner { gamma: g, mu } => Recurrence {
            alpha: mu / (mu - &one),
            beta: (&k + mu * (&k + g)) / (&one - mu),
            gamma: &k * (&k + g - &one) / (mu - &one),
        },
        Family::Charlier { mu } => Recurrence {
            alpha: -mu.clone(),
            beta: &k + mu,
            gamma: -k,
        },
        Family::Hahn { alpha: a, beta: b, size } => {
            let s = a + b;
            let big = int(*size as i64);
            let four = int(4);
            let alpha = if n == 0 {
                &one / (&s + &two)
            } else {
                (&k + &one) * (&k + &s + &one) / ((&two * &k + &s + &one) * (&two * &k + &s + &two))
            };
            let centre = (a - b + &two * &big - &two) / &four;
            let beta = if n == 0 {
                centre + (b - a) * (&s + &two * &big) / (&four * (&s + &two))
            } else {
                centre + (b * b - a * a) * (&s + &two * &big) / (&four * (&two * &k + &s) * (&two * &k + &s + &two))
            };
            let gamma = if n == 0 {
                BigRational::zero()
            } else {
                (&k + a) * (&k + b) * (&big + &k + &s) * (&big - &k) / ((&two * &k + &s) * (&two * &k + &s + &one))
            };
            Recurrence { alpha, beta, gamma }
        }
        Family::Chebyshev { .. } => unreachable!("resolved to hahn"),
    }
}

pub(super) fn norm_ratio(family: &Family, n: usize) -> BigRational {
    let k = int(n as i64);
    let one = BigRational::one();
    let two = int(2);
    match family {
        Family::Hermite => &two * (&k + &one),
        Family::Laguerre { alpha } => (&k + alpha + &one) / (&k + &one),
        Family::Legendre => (&two * &k + &one) / (&two * &k + int(3)),
        Family::Jacobi { alpha: a, beta: b } => {
            let s = a + b;
            (&k + a + &one) * (&k + b + &one) * (&two * &k + &s + &one)
                / ((&k + &one) * (&two * &k + &s + int(3)) * (&k + &s + &one))
        }
        Family::Kravchuk { p, size } => {
            let q = &one - p;
            p * &q * (int(*size as i64) - &k) / (&k + &one)
        }
        Family::Meixner { gamma, mu } => (&k + &one) * (&k + gamma) / mu,
        Family::Charlier { mu } => (&k + &one) / mu,
        Family::Hahn { alpha: a, beta: b, size } => {
            let s = a + b;
            let big = int(*size as i64);
            (&k + a + &one) * (&k + b + &one) * (&big + &k + &s + &one) * (&two * &k + &s + &one) * (&big - &k - &one)
                / ((&two * &k + &s + int(3)) * (&k + &one) * (&k + &s + &one))
        }
        Family::Chebyshev { .. } => unreachable!("resolved to hahn"),
    }
}

pub(super) fn d0_sq(family: &Family) -> Scaled {
    let one = BigRational::one();
    match family {
        Family::Hermite => Scaled::new(one, Constant::SqrtPi),
        Family::Laguerre { alpha } => Scaled::new(one, Constant::Gamma(alpha + BigRational::one())),
        Family::Legendre => Scaled::new(int(2), Constant::One),
        Family::Jacobi { alpha, beta } => Scaled::new(one, Constant::JacobiBeta(alpha.clone(), beta.clone())),
        Family::Kravchuk { .. } | Family::Charlier { .. } => Scaled::new(one, Constant::One),
        Family::Meixner { gamma, mu } => Scaled::new(
            one,
            Constant::InversePower {
                base: mu.clone(),
                exponent: gamma.clone(),
            },
        ),
        Family::Hahn { alpha, beta, size } => {
            let top = pochhammer(&(alpha + beta + int(2)), size - 1);
            let bottom = pochhammer(&(alpha + &one), size - 1);
            Scaled::new(top / bottom, hahn_base(alpha, beta, *size))
        }
        Family::Chebyshev { .. } => unreachable!("resolved to hahn"),
    }
}

fn hahn_base(alpha: &BigRational, beta: &BigRational, size: usize) -> Constant {
    Constant::HahnBase {
        alpha: alpha.clone(),
        beta: beta.clone(),
        size,
    }
}

pub(super) fn weight_origin(family: &Family) -> Scaled {
    match family {
        Family::Kravchuk { p, size } => {
            let q = BigRational::one() - p;
            Scaled::new(num_traits::pow(q, *size), Constant::One)
        }
        Family::Meixner { .. } => Scaled::new(BigRational::one(), Constant::One),
        Family::Charlier { mu } => Scaled::new(BigRational::one(), Constant::ExpNeg(mu.clone())),
        Family::Hahn { alpha, beta, size } => Scaled::new(BigRational::one(), hahn_base(alpha, beta, *size)),
        _ => unreachable!("continuous family"),
    }
}

fn binomial(n: usize, k: usize) -> BigRational {
    let (n, k) = (BigInt::from(n), BigInt::from(k));
    let mut acc = BigInt::one();
    let mut i = BigInt::zero();
    while i < k {
        acc = acc * (&n - &i) / (&i + BigInt::one());
        i += 1;
    }
    BigRational::from_integer(acc)
}

pub(super) fn moment(family: &Family, k: usize) -> Scaled {
    let d0 = d0_sq(family);
    // Every family except Legendre has d0^2 = 1 * constant.
    let rational = match family {
        Family::Hermite => {
            if k.is_odd() {
                BigRational::zero()
            } else {
                // (k-1)!! / 2^(k/2) = (1/2)_(k/2)
                pochhammer(&rat(1, 2), k / 2)
            }
        }
        Family::Laguerre { alpha } => pochhammer(&(alpha + BigRational::one()), k),
        Family::Legendre => {
            if k.is_odd() {
                BigRational::zero()
            } else {
                rat(2, k as i64 + 1)
            }
        }
        Family::Jacobi { alpha, beta } => {
            let b1 = beta + BigRational::one();
            let top = alpha + beta + int(2);
            (0..=k)
                .map(|j| {
                    let sign = if (k - j).is_odd() { -1 } else { 1 };
                    binomial(k, j) * int(sign) * num_traits::pow(int(2), j) * pochhammer(&b1, j) / pochhammer(&top, j)
                })
                .fold(BigRational::zero(), |acc, term| acc + term)
        }
        _ => unreachable!("discrete family"),
    };
    Scaled::new(rational, d0.constant)
}
