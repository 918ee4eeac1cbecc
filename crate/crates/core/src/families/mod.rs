//! The nine classical families of hypergeometric type and their closed-form
//! data: equation coefficients, eigenvalues, recurrence coefficients, norms and
//! weights.

mod constant;
mod data;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::function::gamma::ln_gamma;

use crate::algebra::rational::{int, rat, to_f64};
use crate::algebra::{Poly, RationalFn};
use crate::error::{Error, Result};

pub use constant::{Constant, Scaled};

pub const FAMILY_NAMES: [&str; 9] = [
    "hermite",
    "laguerre",
    "legendre",
    "jacobi",
    "kravchuk",
    "meixner",
    "charlier",
    "chebyshev_discrete",
    "hahn",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Continuous,
    Discrete,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    PosInf,
    At(BigRational),
}

impl Bound {
    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::PosInf => f64::INFINITY,
            Bound::At(value) => to_f64(value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Hermite,
    Laguerre { alpha: BigRational },
    Legendre,
    Jacobi { alpha: BigRational, beta: BigRational },
    Kravchuk { p: BigRational, size: usize },
    Meixner { gamma: BigRational, mu: BigRational },
    Charlier { mu: BigRational },
    /// Discrete Chebyshev; shares every closed form with `Hahn { 0, 0, size }`.
    Chebyshev { size: usize },
    Hahn { alpha: BigRational, beta: BigRational, size: usize },
}

/// Optional family parameters as supplied by a caller.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub alpha: Option<BigRational>,
    pub beta: Option<BigRational>,
    pub mu: Option<BigRational>,
    pub gamma: Option<BigRational>,
    pub p: Option<BigRational>,
    pub size: Option<usize>,
}

impl Params {
    /// Fills every missing parameter of `name` with its desk value.
    pub fn with_desk_defaults(mut self, name: &str) -> Self {
        let name = canonical_name(name).unwrap_or(name);
        let (alpha, beta, mu, gamma, p, size) = match name {
            "laguerre" => (Some(int(2)), None, None, None, None, None),
            "jacobi" => (Some(rat(1, 2)), Some(rat(1, 2)), None, None, None, None),
            "kravchuk" => (None, None, None, None, Some(rat(1, 2)), Some(8)),
            "meixner" => (None, None, Some(rat(1, 3)), Some(int(2)), None, None),
            "charlier" => (None, None, Some(rat(1, 2)), None, None, None),
            "chebyshev_discrete" => (None, None, None, None, None, Some(8)),
            "hahn" => (Some(int(1)), Some(int(2)), None, None, None, Some(8)),
            _ => (None, None, None, None, None, None),
        };
        self.alpha = self.alpha.or(alpha);
        self.beta = self.beta.or(beta);
        self.mu = self.mu.or(mu);
        self.gamma = self.gamma.or(gamma);
        self.p = self.p.or(p);
        self.size = self.size.or(size);
        self
    }
}

/// Maps accepted spellings to the canonical family name.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    let lower = name.trim().to_ascii_lowercase();
    let canonical = match lower.as_str() {
        "chebyshev" | "chebyshev_discrete" | "chebyshev-discrete" => "chebyshev_discrete",
        "krawtchouk" => "kravchuk",
        other => FAMILY_NAMES.iter().find(|known| **known == other)?,
    };
    Some(canonical)
}

fn missing(name: &'static str) -> Error {
    Error::Parameter {
        name,
        value: "missing".into(),
        bound: "required",
    }
}

impl Family {
    pub fn from_params(name: &str, params: &Params) -> Result<Self> {
        let canonical = canonical_name(name).ok_or_else(|| Error::Kind(format!("unknown family {name:?}")))?;
        let alpha = || params.alpha.clone().ok_or_else(|| missing("alpha"));
        let beta = || params.beta.clone().ok_or_else(|| missing("beta"));
        let mu = || params.mu.clone().ok_or_else(|| missing("mu"));
        let size = || params.size.ok_or_else(|| missing("N"));
        Ok(match canonical {
            "hermite" => Family::Hermite,
            "laguerre" => Family::Laguerre { alpha: alpha()? },
            "legendre" => Family::Legendre,
            "jacobi" => Family::Jacobi {
                alpha: alpha()?,
                beta: beta()?,
            },
            "kravchuk" => Family::Kravchuk {
                p: params.p.clone().ok_or_else(|| missing("p"))?,
                size: size()?,
            },
            "meixner" => Family::Meixner {
                gamma: params.gamma.clone().ok_or_else(|| missing("gamma"))?,
                mu: mu()?,
            },
            "charlier" => Family::Charlier { mu: mu()? },
            "chebyshev_discrete" => Family::Chebyshev { size: size()? },
            _ => Family::Hahn {
                alpha: alpha()?,
                beta: beta()?,
                size: size()?,
            },
        })
    }

    /// The family at its desk parameters.
    pub fn desk(name: &str) -> Result<Self> {
        Self::from_params(name, &Params::default().with_desk_defaults(name))
    }

    pub fn all_desk() -> Vec<Family> {
        FAMILY_NAMES
            .iter()
            .map(|name| Family::desk(name).expect("desk parameters are admissible"))
            .collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Hermite => "hermite",
            Family::Laguerre { .. } => "laguerre",
            Family::Legendre => "legendre",
            Family::Jacobi { .. } => "jacobi",
            Family::Kravchuk { .. } => "kravchuk",
            Family::Meixner { .. } => "meixner",
            Family::Charlier { .. } => "charlier",
            Family::Chebyshev { .. } => "chebyshev_discrete",
            Family::Hahn { .. } => "hahn",
        }
    }

    pub fn params(&self) -> BTreeMap<&'static str, String> {
        let mut out = BTreeMap::new();
        match self {
            Family::Hermite | Family::Legendre => {}
            Family::Laguerre { alpha } => {
                out.insert("alpha", alpha.to_string());
            }
            Family::Jacobi { alpha, beta } => {
                out.insert("alpha", alpha.to_string());
                out.insert("beta", beta.to_string());
            }
            Family::Kravchuk { p, size } => {
                out.insert("p", p.to_string());
                out.insert("N", size.to_string());
            }
            Family::Meixner { gamma, mu } => {
                out.insert("gamma", gamma.to_string());
                out.insert("mu", mu.to_string());
            }
            Family::Charlier { mu } => {
                out.insert("mu", mu.to_string());
            }
            Family::Chebyshev { size } => {
                out.insert("N", size.to_string());
            }
            Family::Hahn { alpha, beta, size } => {
                out.insert("alpha", alpha.to_string());
                out.insert("beta", beta.to_string());
                out.insert("N", size.to_string());
            }
        }
        out
    }

    /// The family whose closed forms this one uses.
    pub(crate) fn data(&self) -> Family {
        match self {
            Family::Chebyshev { size } => Family::Hahn {
                alpha: BigRational::zero(),
                beta: BigRational::zero(),
                size: *size,
            },
            other => other.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        let above = |name: &'static str, value: &BigRational, bound: i64, text: &'static str| {
            if value > &int(bound) {
                Ok(())
            } else {
                Err(Error::Parameter {
                    name,
                    value: value.to_string(),
                    bound: text,
                })
            }
        };
        let below_one = |name: &'static str, value: &BigRational, text: &'static str| {
            if value < &BigRational::one() {
                Ok(())
            } else {
                Err(Error::Parameter {
                    name,
                    value: value.to_string(),
                    bound: text,
                })
            }
        };
        let pair = |alpha: &BigRational, beta: &BigRational| -> Result<()> {
            above("alpha", alpha, -1, "alpha > -1")?;
            above("beta", beta, -1, "beta > -1")?;
            if (alpha + beta) == int(-1) {
                return Err(Error::Parameter {
                    name: "alpha+beta",
                    value: (alpha + beta).to_string(),
                    bound: "alpha + beta != -1",
                });
            }
            Ok(())
        };
        let lattice = |size: usize| {
            if size >= 1 {
                Ok(())
            } else {
                Err(Error::Parameter {
                    name: "N",
                    value: size.to_string(),
                    bound: "N >= 1",
                })
            }
        };
        match self {
            Family::Hermite | Family::Legendre => Ok(()),
            Family::Laguerre { alpha } => above("alpha", alpha, -1, "alpha > -1"),
            Family::Jacobi { alpha, beta } => pair(alpha, beta),
            Family::Kravchuk { p, size } => {
                above("p", p, 0, "0 < p < 1")?;
                below_one("p", p, "0 < p < 1")?;
                lattice(*size)
            }
            Family::Meixner { gamma, mu } => {
                above("gamma", gamma, 0, "gamma > 0")?;
                above("mu", mu, 0, "0 < mu < 1")?;
                below_one("mu", mu, "0 < mu < 1")
            }
            Family::Charlier { mu } => above("mu", mu, 0, "mu > 0"),
            Family::Chebyshev { size } => lattice(*size),
            Family::Hahn { alpha, beta, size } => {
                pair(alpha, beta)?;
                lattice(*size)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            return f.write_str(self.name());
        }
        let list: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), list.join(", "))
    }
}

/// Three-term recurrence coefficients: `var * y_n = alpha y_{n+1} + beta y_n + gamma y_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub kind: Kind,
    pub sigma: Poly,
    pub tau: Poly,
    pub support: (Bound, Bound),
}

/// Builds a validated family from its name and parameters.
pub fn make_family(name: &str, params: &Params) -> Result<FamilySpec> {
    FamilySpec::new(Family::from_params(name, params)?)
}

impl FamilySpec {
    pub fn new(family: Family) -> Result<Self> {
        family.validate()?;
        let (kind, sigma, tau, support) = data::equation(&family.data());
        Ok(Self {
            family,
            kind,
            sigma,
            tau,
            support,
        })
    }

    pub fn desk(name: &str) -> Result<Self> {
        Self::new(Family::desk(name)?)
    }

    pub fn all_desk() -> Vec<FamilySpec> {
        Family::all_desk()
            .into_iter()
            .map(|family| FamilySpec::new(family).expect("desk parameters are admissible"))
            .collect()
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn var_name(&self) -> &'static str {
        match self.kind {
            Kind::Continuous => "s",
            Kind::Discrete => "x",
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.kind == Kind::Discrete
    }

    /// Number of lattice points of a finite discrete family.
    pub fn lattice_size(&self) -> Option<usize> {
        match &self.support.1 {
            Bound::At(end) if self.is_discrete() => end.to_integer().try_into().ok(),
            _ => None,
        }
    }

    /// Largest degree handled for this family; `None` when unbounded.
    pub fn max_degree(&self) -> Option<usize> {
        match self.family.data() {
            Family::Kravchuk { size, .. } | Family::Hahn { size, .. } => Some(size - 1),
            _ => None,
        }
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        match self.max_degree() {
            Some(max) if n > max => Err(Error::Degree {
                family: self.family.to_string(),
                n,
                reason: format!("largest admissible degree is {max}"),
            }),
            _ => Ok(()),
        }
    }

    fn tau_slope(&self) -> BigRational {
        self.tau.coeff(1)
    }

    /// `sigma''`.
    fn sigma_curvature(&self) -> BigRational {
        self.sigma.coeff(2) * int(2)
    }

    /// `-(tau' + (m-1)/2 sigma'')`; equals `lambda_m / m` for `m >= 1`.
    pub fn lambda_slope(&self, m: usize) -> BigRational {
        let half_steps = rat(m as i64 - 1, 2);
        -(self.tau_slope() + half_steps * self.sigma_curvature())
    }

    pub fn lambda(&self, n: usize) -> BigRational {
        int(n as i64) * self.lambda_slope(n)
    }

    pub fn tau_n(&self, n: usize) -> Poly {
        let shift = int(n as i64);
        match self.kind {
            Kind::Continuous => &self.tau + &self.sigma.derivative().scale(&shift),
            Kind::Discrete => {
                let moved = &self.tau.shift(&shift) + &self.sigma.shift(&shift);
                &moved - &self.sigma
            }
        }
    }

    /// `(lambda_n/n) tau_n / tau_n'`, the multiplicative part of the raising operator.
    pub fn drift(&self, n: usize) -> Poly {
        let tau_n = self.tau_n(n);
        let factor = self.lambda_slope(n) / tau_n.coeff(1);
        tau_n.scale(&factor)
    }

    pub fn recurrence(&self, n: usize) -> Result<Recurrence> {
        self.check_degree(n)?;
        Ok(data::recurrence(&self.family.data(), n))
    }

    /// The recurrence data one step past the top degree of a finite family,
    /// where the closed forms still hold and the ladder coefficients need them.
    pub fn recurrence_extended(&self, n: usize) -> Result<Recurrence> {
        if n > 0 {
            self.check_degree(n - 1)?;
        }
        Ok(data::recurrence(&self.family.data(), n))
    }

    /// `d_{n+1}^2 / d_n^2`.
    pub fn norm_ratio(&self, n: usize) -> Result<BigRational> {
        self.check_degree(n)?;
        Ok(data::norm_ratio(&self.family.data(), n))
    }

    pub fn d0_sq(&self) -> Scaled {
        data::d0_sq(&self.family.data())
    }

    /// `d_n^2` as a rational multiple of the family constant.
    pub fn dn_sq(&self, n: usize) -> Result<Scaled> {
        self.check_degree(n)?;
        let mut d = self.d0_sq();
        for k in 0..n {
            d.rational *= data::norm_ratio(&self.family.data(), k);
        }
        Ok(d)
    }

    /// `rho(x+1) / rho(x)`, discrete families only.
    pub fn pearson_ratio(&self) -> Result<RationalFn> {
        if !self.is_discrete() {
            return Err(Error::Kind(format!("{} is not a discrete family", self.name())));
        }
        RationalFn::new(&self.sigma + &self.tau, self.sigma.shift(&BigRational::one()))
    }

    /// `rho` at the left end of the lattice, discrete families only.
    pub fn weight_origin(&self) -> Result<Scaled> {
        if !self.is_discrete() {
            return Err(Error::Kind(format!("{} is not a discrete family", self.name())));
        }
        Ok(data::weight_origin(&self.family.data()))
    }

    /// `int s^k rho(s) ds` as a rational multiple of the constant of `d0_sq`.
    pub fn moment(&self, k: usize) -> Result<Scaled> {
        if self.is_discrete() {
            return Err(Error::Kind(format!("{} has no continuous moments", self.name())));
        }
        Ok(data::moment(&self.family.data(), k))
    }

    /// Whether `at` lies in the open support (continuous) or on the lattice (discrete).
    pub fn in_support(&self, at: f64) -> bool {
        if !at.is_finite() {
            return false;
        }
        let (a, b) = (self.support.0.to_f64(), self.support.1.to_f64());
        match self.kind {
            Kind::Continuous => a < at && at < b,
            Kind::Discrete => at.fract() == 0.0 && a <= at && at < b,
        }
    }

    pub fn weight_eval(&self, at: f64) -> Result<f64> {
        if !self.in_support(at) {
            return Err(Error::Domain(format!("{at} for {}", self.family)));
        }
        Ok(self.ln_weight(at).exp())
    }

    /// `ln rho(at)`; `at` must already be known to lie in the support.
    pub fn ln_weight(&self, at: f64) -> f64 {
        let ln_fact = |v: f64| ln_gamma(v + 1.0);
        match &self.family.data() {
            Family::Hermite => -at * at,
            Family::Laguerre { alpha } => to_f64(alpha) * at.ln() - at,
            Family::Legendre => 0.0,
            Family::Jacobi { alpha, beta } => to_f64(alpha) * (1.0 - at).ln() + to_f64(beta) * (1.0 + at).ln(),
            Family::Kravchuk { p, size } => {
                let (p, n) = (to_f64(p), *size as f64);
                ln_fact(n) - ln_fact(at) - ln_fact(n - at) + at * p.ln() + (n - at) * (1.0 - p).ln()
            }
            Family::Meixner { gamma, mu } => {
                let g = to_f64(gamma);
                at * to_f64(mu).ln() + ln_gamma(at + g) - ln_fact(at) - ln_gamma(g)
            }
            Family::Charlier { mu } => {
                let m = to_f64(mu);
                -m + at * m.ln() - ln_fact(at)
            }
            Family::Hahn { alpha, beta, size } => {
                let (a, b, n) = (to_f64(alpha), to_f64(beta), *size as f64);
                ln_gamma(n + a - at) + ln_gamma(b + at + 1.0) - ln_fact(at) - ln_gamma(n - at)
            }
            Family::Chebyshev { .. } => unreachable!("resolved to hahn"),
        }
    }

    /// `(ln sqrt(rho))'` at `at`, computed from the explicit weight; continuous only.
    pub fn half_log_weight_slope(&self, at: f64) -> f64 {
        let slope = match &self.family.data() {
            Family::Hermite => -2.0 * at,
            Family::Laguerre { alpha } => to_f64(alpha) / at - 1.0,
            Family::Legendre => 0.0,
            Family::Jacobi { alpha, beta } => -to_f64(alpha) / (1.0 - at) + to_f64(beta) / (1.0 + at),
            _ => f64::NAN,
        };
        0.5 * slope
    }

    /// The lattice points of a finite family.
    pub fn lattice(&self) -> Option<std::ops::Range<i64>> {
        self.lattice_size().map(|size| 0..size as i64)
    }

    /// `rho(x) / rho(0)` for integer `x >= 0`, exact through the Pearson ratio.
    pub fn relative_weight(&self, x: i64) -> Result<BigRational> {
        let ratio = self.pearson_ratio()?;
        let mut w = BigRational::one();
        for t in 0..x {
            w *= ratio
                .eval(&int(t))
                .ok_or_else(|| Error::Invariant("pole of the Pearson ratio on the lattice".into()))?;
        }
        Ok(w)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.fmt(f)
    }
}

#[cfg(test)]
mod tests;
