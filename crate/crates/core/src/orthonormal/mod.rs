//! Orthonormal functions `psi_n = sqrt(rho) y_n / d_n`, their ladder operators,
//! inner products, adjointness and the reduction of every orthonormal-layer
//! identity to exact polynomial arithmetic.

pub mod quadrature;
pub mod relation;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::rational::{int, sign_of, to_f64};
use crate::algebra::{Poly, RationalFn, SignedSqrt};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Kind, Scaled};
use crate::ladder_poly::{build_family_polys, PolySeq};

pub use relation::{reduce, Op, Reduced, Relation, Term};

/// A family's polynomials together with their squared norms.
#[derive(Clone, Debug)]
pub struct Basis {
    pub family: FamilySpec,
    pub seq: PolySeq,
    norms: Vec<Scaled>,
    /// `rho(x) / rho(0)` on a finite lattice.
    lattice_weights: Option<Vec<BigRational>>,
}

impl Basis {
    pub fn new(family: &FamilySpec, n_max: usize) -> Result<Self> {
        let seq = build_family_polys(family, n_max)?;
        let norms = (0..=n_max).map(|n| family.dn_sq(n)).collect::<Result<Vec<_>>>()?;
        let lattice_weights = match family.lattice() {
            Some(points) => Some(points.map(|x| family.relative_weight(x)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        Ok(Self {
            family: family.clone(),
            seq,
            norms,
            lattice_weights,
        })
    }

    /// Degrees `0..=12`, capped at the family's largest degree.
    pub fn desk(family: &FamilySpec) -> Result<Self> {
        Self::new(family, family.max_degree().map_or(12, |m| m.min(12)))
    }

    pub fn n_max(&self) -> usize {
        self.seq.n_max()
    }

    pub fn poly(&self, m: usize) -> Result<&Poly> {
        self.seq.get(m).ok_or_else(|| Error::Degree {
            family: self.family.family.to_string(),
            n: m,
            reason: format!("basis stops at degree {}", self.n_max()),
        })
    }

    pub fn norm_sq(&self, m: usize) -> Result<&Scaled> {
        self.poly(m)?;
        Ok(&self.norms[m])
    }

    /// `d_n / d_m` as an exact signed square root.
    pub fn norm_quotient(&self, n: usize, m: usize) -> Result<SignedSqrt> {
        let square = &self.norm_sq(n)?.rational / &self.norm_sq(m)?.rational;
        Ok(SignedSqrt::sqrt(square))
    }

    pub fn ortho(&self, m: usize) -> Result<OrthoFn> {
        Ok(OrthoFn {
            family: self.family.clone(),
            n: m,
            core: self.poly(m)?.clone(),
            dn_sq: self.norm_sq(m)?.clone(),
        })
    }

    pub fn lattice_weights(&self) -> Option<&[BigRational]> {
        self.lattice_weights.as_deref()
    }
}

/// `psi_n = sqrt(rho) core / d_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoFn {
    pub family: FamilySpec,
    pub n: usize,
    pub core: Poly,
    pub dn_sq: Scaled,
}

impl OrthoFn {
    pub fn eval(&self, at: f64) -> Result<f64> {
        if !self.family.in_support(at) {
            return Err(Error::Domain(format!("{at} for {}", self.family)));
        }
        Ok(self.eval_unchecked(at))
    }

    /// Evaluation in log space; zero outside the support.
    pub fn eval_unchecked(&self, at: f64) -> f64 {
        if !self.family.in_support(at) {
            return 0.0;
        }
        let ln_scale = 0.5 * self.family.ln_weight(at) - 0.5 * self.ln_norm_sq();
        ln_scale.exp() * self.core.eval_f64(at)
    }

    /// The direct path `sqrt(rho(at)) / d_n * core(at)`, used as a cross-check.
    pub fn eval_direct(&self, at: f64) -> Result<f64> {
        let rho = self.family.weight_eval(at)?;
        Ok(rho.sqrt() / self.dn_sq.to_f64().sqrt() * self.core.eval_f64(at))
    }

    fn ln_norm_sq(&self) -> f64 {
        to_f64(&self.dn_sq.rational).ln() + self.dn_sq.constant.ln_value()
    }

    /// `psi_n'(at)`, from the explicit weight; continuous families only.
    pub fn derivative(&self, at: f64) -> f64 {
        if !self.family.in_support(at) {
            return 0.0;
        }
        let ln_scale = 0.5 * self.family.ln_weight(at) - 0.5 * self.ln_norm_sq();
        let slope = self.family.half_log_weight_slope(at);
        ln_scale.exp() * (self.core.derivative().eval_f64(at) + slope * self.core.eval_f64(at))
    }
}

pub fn ortho_eval(family: &FamilySpec, n: usize, at: f64) -> Result<f64> {
    Basis::new(family, n)?.ortho(n)?.eval(at)
}

#[derive(Clone, Debug, PartialEq)]
pub enum InnerValue {
    Exact(SignedSqrt),
    Numeric(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    pub value: InnerValue,
    /// Bound on the neglected tail of a truncated infinite sum.
    pub tail_bound: Option<f64>,
}

impl InnerProduct {
    pub fn to_f64(&self) -> f64 {
        match &self.value {
            InnerValue::Exact(v) => v.to_f64(),
            InnerValue::Numeric(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, InnerValue::Exact(_))
    }

    /// Exact equality with the Kronecker delta; `None` in numeric mode.
    pub fn is_exactly(&self, expected: &BigRational) -> Option<bool> {
        match &self.value {
            InnerValue::Exact(v) => Some(v == &SignedSqrt::from_rational(expected.clone())),
            InnerValue::Numeric(_) => None,
        }
    }
}

/// Truncated lattice sum of `term(x)`, `x = 0, 1, ...`, where
/// `term(x) = rho(x) p(x)` for a polynomial `p` of degree at most `degree` with
/// all roots in the disc of radius `root_bound`. Stops once the geometric tail
/// bound drops below `tol`.
pub fn truncated_sum(
    family: &FamilySpec,
    degree: usize,
    root_bound: f64,
    tol: f64,
    term: impl Fn(i64) -> f64,
) -> Result<(f64, f64)> {
    let ratio = family.pearson_ratio()?;
    let limit = if ratio.numer().degree() == ratio.denom().degree() {
        to_f64(&(ratio.numer().leading() / ratio.denom().leading()))
    } else {
        0.0
    };
    let mut sum = 0.0;
    for x in 0..200_000i64 {
        let t = term(x);
        sum += t;
        let xf = x as f64;
        if xf <= root_bound + 1.0 {
            continue;
        }
        let pearson = ratio.eval_f64(xf).max(limit);
        let q = pearson * (1.0 + 1.0 / (xf - root_bound)).powi(degree as i32);
        if q < 1.0 {
            let bound = t.abs() * q / (1.0 - q);
            if bound < tol {
                return Ok((sum, bound));
            }
        }
    }
    Err(Error::Invariant(format!("{family}: lattice sum did not converge")))
}

/// Fujiwara's bound `2 max |a_{d-i} / a_d|^{1/i}` on the moduli of all roots.
pub fn root_bound(p: &Poly) -> f64 {
    match p.degree() {
        None | Some(0) => 0.0,
        Some(d) => {
            let lead = to_f64(&p.leading()).abs();
            let tail = (1..=d)
                .map(|i| {
                    let ratio = to_f64(&p.coeff(d - i)).abs() / lead;
                    let ratio = if i == d { ratio / 2.0 } else { ratio };
                    ratio.powf(1.0 / i as f64)
                })
                .fold(0.0, f64::max);
            2.0 * tail
        }
    }
}

pub const TAIL_TOLERANCE: f64 = 1e-15;

impl Basis {
    /// `<psi_m, psi_n>`; exact except on infinite lattices.
    pub fn inner_product(&self, m: usize, n: usize) -> Result<InnerProduct> {
        let product = self.poly(m)? * self.poly(n)?;
        let rm = &self.norm_sq(m)?.rational;
        let rn = &self.norm_sq(n)?.rational;
        let exact = |sum: BigRational| {
            let square = &sum * &sum / (rm * rn);
            InnerProduct {
                value: InnerValue::Exact(SignedSqrt::new(sign_of(&sum), square)),
                tail_bound: None,
            }
        };
        match self.family.kind {
            Kind::Continuous => {
                let d0 = self.family.d0_sq();
                let mut sum = BigRational::zero();
                for (k, c) in product.coeffs().iter().enumerate() {
                    let moment = self.family.moment(k)?;
                    if moment.constant != d0.constant {
                        return Err(Error::Invariant("moment and norm constants differ".into()));
                    }
                    sum += c * moment.rational;
                }
                Ok(exact(sum))
            }
            Kind::Discrete => match &self.lattice_weights {
                Some(weights) => {
                    let origin = self.family.weight_origin()?;
                    let scale = origin
                        .ratio(&self.family.d0_sq())
                        .ok_or_else(|| Error::Invariant("weight and norm constants differ".into()))?
                        * &self.family.d0_sq().rational;
                    let sum = weights
                        .iter()
                        .enumerate()
                        .map(|(x, w)| w * product.eval(&int(x as i64)))
                        .fold(BigRational::zero(), |acc, t| acc + t);
                    Ok(exact(sum * scale))
                }
                None => {
                    let (psi_m, psi_n) = (self.ortho(m)?, self.ortho(n)?);
                    let (value, bound) = truncated_sum(
                        &self.family,
                        product.degree().unwrap_or(0),
                        root_bound(self.poly(m)?).max(root_bound(self.poly(n)?)),
                        TAIL_TOLERANCE,
                        |x| psi_m.eval_unchecked(x as f64) * psi_n.eval_unchecked(x as f64),
                    )?;
                    Ok(InnerProduct {
                        value: InnerValue::Numeric(value),
                        tail_bound: Some(bound),
                    })
                }
            },
        }
    }
}

pub fn inner_product(family: &FamilySpec, m: usize, n: usize) -> Result<InnerProduct> {
    Basis::new(family, m.max(n))?.inner_product(m, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Raise,
    Lower,
}

/// `(lambda_2n/2n) alpha_n d_{n+1}/d_n`, signed.
pub fn raise_constant(family: &FamilySpec, n: usize) -> Result<SignedSqrt> {
    let base = family.lambda_slope(2 * n) * family.recurrence(n)?.alpha;
    Ok(SignedSqrt::new(sign_of(&base), &base * &base * family.norm_ratio(n)?))
}

/// `(lambda_2n/2n) gamma_n d_{n-1}/d_n`, signed; zero at `n = 0`.
pub fn lower_constant(family: &FamilySpec, n: usize) -> Result<SignedSqrt> {
    if n == 0 {
        return Ok(SignedSqrt::zero());
    }
    let base = family.lambda_slope(2 * n) * family.recurrence(n)?.gamma;
    Ok(SignedSqrt::new(sign_of(&base), &base * &base / family.norm_ratio(n - 1)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderStep {
    pub constant: SignedSqrt,
    /// `None` when the operator annihilates `psi_n`.
    pub target: Option<OrthoFn>,
}

/// The constant and target of `L^+ psi_n` or `L^- psi_n`; with
/// `adjoint_normalized` both operators are divided by `lambda_2n / 2n`.
pub fn ladder_orthonormal(family: &FamilySpec, dir: Direction, n: usize, adjoint_normalized: bool) -> Result<LadderStep> {
    let (constant, target) = match dir {
        Direction::Raise => (raise_constant(family, n)?, Some(n + 1)),
        Direction::Lower => (lower_constant(family, n)?, n.checked_sub(1)),
    };
    let constant = if adjoint_normalized {
        let slope = family.lambda_slope(2 * n);
        constant.mul(&SignedSqrt::from_rational(BigRational::one() / slope))
    } else {
        constant
    };
    let target = match target {
        Some(m) => Some(Basis::new(family, m.max(n))?.ortho(m)?),
        None => None,
    };
    Ok(LadderStep { constant, target })
}

/// `(tau - sigma') / 2`.
fn half_drift_gap(family: &FamilySpec) -> Poly {
    (&family.tau - &family.sigma.derivative()).scale(&BigRational::new(1.into(), 2.into()))
}

/// The multiplicative parts of `L^+(n)` and `L^-(n)` at the orthonormal layer:
/// `f, g` (continuous) or `u, v` (discrete).
pub fn ladder_multipliers(family: &FamilySpec, n: usize) -> Result<(Poly, Poly)> {
    let drift = family.drift(n);
    let rec = family.recurrence_extended(n)?;
    let centred = Poly::linear(BigRational::one(), -rec.beta).scale(&family.lambda_slope(2 * n));
    Ok(match family.kind {
        Kind::Continuous => {
            let gap = half_drift_gap(family);
            (&drift + &gap, &(&centred - &drift) - &gap)
        }
        Kind::Discrete => {
            let up = &drift - &family.sigma;
            let lifted = &(&centred - &drift) + &Poly::constant(family.lambda(n));
            let down = &lifted - &(&family.sigma + &family.tau);
            (up, down)
        }
    })
}

/// `L^+(n)` applied to `psi_{n + offset}`.
pub fn raise_operator(family: &FamilySpec, n: usize, offset: i32) -> Result<Relation> {
    let (first, _) = ladder_multipliers(family, n)?;
    let one = BigRational::one();
    let moved = match family.kind {
        Kind::Continuous => Term::rational(-one.clone(), family.sigma.clone(), Op::Deriv(1), offset),
        Kind::Discrete => Term::rational(one.clone(), Poly::one(), Op::Shift(-1), offset),
    };
    Ok(Relation::new().with(Term::rational(one, first, Op::Value, offset)).with(moved))
}

/// `L^-(n)` applied to `psi_{n + offset}`.
pub fn lower_operator(family: &FamilySpec, n: usize, offset: i32) -> Result<Relation> {
    let (_, second) = ladder_multipliers(family, n)?;
    let one = BigRational::one();
    let moved = match family.kind {
        Kind::Continuous => Term::rational(one.clone(), family.sigma.clone(), Op::Deriv(1), offset),
        Kind::Discrete => Term::rational(one.clone(), Poly::one(), Op::Shift(1), offset),
    };
    Ok(Relation::new().with(Term::rational(one, second, Op::Value, offset)).with(moved))
}

/// The potential of the orthonormal-layer equation,
/// `-(tau - sigma')^2 / (4 sigma) - (tau' - sigma'')/2 + lambda_n`.
pub fn potential(family: &FamilySpec, n: usize) -> RationalFn {
    let gap = &family.tau - &family.sigma.derivative();
    let quarter = RationalFn::new(&gap * &gap, family.sigma.scale(&int(4))).expect("nonzero sigma");
    let slopes = &family.tau.coeff(1) - &(family.sigma.coeff(2) * int(2));
    let constant = family.lambda(n) - slopes / int(2);
    &RationalFn::constant(constant) - &quarter
}

/// `H(n)` applied to `psi_{n + offset}`.
pub fn hamiltonian(family: &FamilySpec, n: usize, offset: i32) -> Relation {
    let one = BigRational::one();
    match family.kind {
        Kind::Continuous => Relation::new()
            .with(Term::rational(one.clone(), family.sigma.clone(), Op::Deriv(2), offset))
            .with(Term::rational(one.clone(), family.sigma.derivative(), Op::Deriv(1), offset))
            .with(Term::rational(one, potential(family, n), Op::Value, offset)),
        Kind::Discrete => {
            let diagonal = &Poly::constant(family.lambda(n)) - &(&family.sigma.scale(&int(2)) + &family.tau);
            Relation::new()
                .with(Term::rational(one.clone(), Poly::one(), Op::Shift(1), offset))
                .with(Term::rational(one.clone(), Poly::one(), Op::Shift(-1), offset))
                .with(Term::rational(one, diagonal, Op::Value, offset))
        }
    }
}

/// The four orthonormal-layer identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrthoIdentity {
    Equation,
    Recurrence,
    Raise,
    Lower,
}

impl OrthoIdentity {
    pub const ALL: [OrthoIdentity; 4] = [Self::Equation, Self::Recurrence, Self::Raise, Self::Lower];

    pub fn tag(self, kind: Kind) -> String {
        let prefix = match kind {
            Kind::Continuous => "NC",
            Kind::Discrete => "ND",
        };
        let index = match self {
            Self::Equation => 1,
            Self::Recurrence => 2,
            Self::Raise => 3,
            Self::Lower => 4,
        };
        format!("{prefix}{index}")
    }
}

/// The relation `identity` at degree `n`, written as `... = 0`.
pub fn identity_relation(family: &FamilySpec, identity: OrthoIdentity, n: usize) -> Result<Relation> {
    let slope = family.lambda_slope(2 * n);
    Ok(match identity {
        OrthoIdentity::Equation => hamiltonian(family, n, 0),
        OrthoIdentity::Recurrence => {
            let rec = family.recurrence(n)?;
            let centred = Poly::linear(-slope.clone(), &slope * &rec.beta);
            let mut relation = Relation::new()
                .with(Term::new(raise_constant(family, n)?, Poly::one(), Op::Value, 1))
                .with(Term::rational(BigRational::one(), centred, Op::Value, 0));
            if n > 0 {
                relation.push(Term::new(lower_constant(family, n)?, Poly::one(), Op::Value, -1));
            }
            relation
        }
        OrthoIdentity::Raise => {
            let mut relation = raise_operator(family, n, 0)?;
            relation.push(Term::new(raise_constant(family, n)?.neg(), Poly::one(), Op::Value, 1));
            relation
        }
        OrthoIdentity::Lower => {
            let mut relation = lower_operator(family, n, 0)?;
            if n > 0 {
                relation.push(Term::new(lower_constant(family, n)?.neg(), Poly::one(), Op::Value, -1));
            }
            relation
        }
    })
}

/// Exact residual of `identity` at degree `n` after reduction to polynomials.
pub fn reduce_to_poly_layer(basis: &Basis, identity: OrthoIdentity, n: usize) -> Result<Reduced> {
    reduce(basis, n, &identity_relation(&basis.family, identity, n)?)
}

/// `H(n) psi_n`, reduced.
pub fn h_residual(basis: &Basis, n: usize) -> Result<Reduced> {
    reduce_to_poly_layer(basis, OrthoIdentity::Equation, n)
}

/// Applies a relation numerically to the basis at a single point.
pub fn apply_numeric(basis: &Basis, n: usize, relation: &Relation, at: f64) -> Result<f64> {
    let family = &basis.family;
    let mut total = 0.0;
    for term in &relation.terms {
        let m = n as i64 + term.offset as i64;
        let psi = basis.ortho(m as usize)?;
        let coef = term.coef.eval_f64(at);
        let value = match term.op {
            Op::Value => psi.eval_unchecked(at),
            Op::Deriv(1) => psi.derivative(at),
            Op::Deriv(2) => second_derivative(&psi, at),
            Op::Shift(k) => {
                let target = at + k as f64;
                let mut hop = 1.0;
                let edges: Vec<f64> = if k >= 0 {
                    (0..k).map(|m| at + m as f64).collect()
                } else {
                    (k..0).map(|m| at + m as f64).collect()
                };
                for edge in edges {
                    let sq = relation::hop_square(family).eval_f64(edge);
                    hop *= sq.max(0.0).sqrt();
                }
                hop * psi.eval_unchecked(target)
            }
            Op::Deriv(order) => return Err(Error::Invariant(format!("derivative of order {order}"))),
        };
        total += term.scalar.to_f64() * coef * value;
    }
    Ok(total)
}

/// `psi''` from the explicit weight: with `g = (ln sqrt(rho))'`,
/// `psi'' = sqrt(rho)/d (y'' + 2 g y' + (g' + g^2) y)`, `g'` by a centred difference.
fn second_derivative(psi: &OrthoFn, at: f64) -> f64 {
    let family = &psi.family;
    if !family.in_support(at) {
        return 0.0;
    }
    let step = 1e-5 * at.abs().max(1.0);
    let g = family.half_log_weight_slope(at);
    let dg = (family.half_log_weight_slope(at + step) - family.half_log_weight_slope(at - step)) / (2.0 * step);
    let y = psi.core.eval_f64(at);
    let y1 = psi.core.derivative().eval_f64(at);
    let y2 = psi.core.derivative().derivative().eval_f64(at);
    let ln_scale = 0.5 * family.ln_weight(at) - 0.5 * psi.ln_norm_sq();
    ln_scale.exp() * (y2 + 2.0 * g * y1 + (dg + g * g) * y)
}

/// Probe points: seven points inside a continuous support, every lattice point
/// of a finite lattice, `0..=40` on an infinite one.
pub fn probe_points(family: &FamilySpec) -> Vec<f64> {
    match family.kind {
        Kind::Continuous => match (family.support.0.to_f64(), family.support.1.to_f64()) {
            (a, b) if a.is_finite() && b.is_finite() => {
                let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
                [-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9].iter().map(|t| c + h * t).collect()
            }
            (a, _) if a.is_finite() => [0.25, 0.5, 1.0, 2.0, 4.0, 7.0, 11.0].iter().map(|t| a + t).collect(),
            _ => vec![-3.0, -1.5, -0.5, 0.0, 0.5, 1.5, 3.0],
        },
        Kind::Discrete => {
            let end = family.lattice_size().unwrap_or(41) as i64;
            (0..end).map(|x| x as f64).collect()
        }
    }
}

/// Largest pointwise deviation of `L psi_n` from `c psi_target` over the probes.
pub fn ladder_pointwise_error(basis: &Basis, dir: Direction, n: usize) -> Result<f64> {
    let family = &basis.family;
    let (operator, constant, target) = match dir {
        Direction::Raise => (raise_operator(family, n, 0)?, raise_constant(family, n)?, Some(n + 1)),
        Direction::Lower => (lower_operator(family, n, 0)?, lower_constant(family, n)?, n.checked_sub(1)),
    };
    let mut worst: f64 = 0.0;
    for at in probe_points(family) {
        let lhs = apply_numeric(basis, n, &operator, at)?;
        let rhs = match target {
            Some(m) => constant.to_f64() * basis.ortho(m)?.eval_unchecked(at),
            None => 0.0,
        };
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjointCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub expected: f64,
    pub tail_bound: Option<f64>,
}

/// Numeric sum or integral of `f` against the family's measure-free support.
fn integrate_support(basis: &Basis, degree: usize, root_bound: f64, f: impl Fn(f64) -> f64) -> Result<(f64, Option<f64>)> {
    let family = &basis.family;
    match family.kind {
        Kind::Continuous => Ok((
            quadrature::integrate(&f, family.support.0.to_f64(), family.support.1.to_f64()),
            None,
        )),
        Kind::Discrete => match family.lattice() {
            Some(points) => Ok((points.map(|x| f(x as f64)).sum(), None)),
            None => {
                let (sum, bound) = truncated_sum(family, degree, root_bound, TAIL_TOLERANCE, |x| f(x as f64))?;
                Ok((sum, Some(bound)))
            }
        },
    }
}

/// `<psi_{n+1}, L^+(n) psi_n> / (lambda_2n/2n)` against
/// `<L^-(n+1) psi_{n+1}, psi_n> / (lambda_{2n+2}/(2n+2))` and `alpha_n d_{n+1}/d_n`.
pub fn adjointness_check(basis: &Basis, n: usize) -> Result<AdjointCheck> {
    let family = &basis.family;
    let up = raise_operator(family, n, 0)?;
    let down = lower_operator(family, n + 1, 1)?;
    let (psi_n, psi_next) = (basis.ortho(n)?, basis.ortho(n + 1)?);
    let up_scale = 1.0 / to_f64(&family.lambda_slope(2 * n));
    let down_scale = 1.0 / to_f64(&family.lambda_slope(2 * n + 2));
    let product = &psi_n.core * &psi_next.core;
    // the shifted factors add one degree of polynomial growth on each side
    let degree = product.degree().unwrap_or(0) + 4;
    let bound = root_bound(&psi_n.core).max(root_bound(&psi_next.core)) + 2.0;
    let (lhs, tail_l) = integrate_support(basis, degree, bound, |at| {
        psi_next.eval_unchecked(at) * up_scale * apply_numeric(basis, n, &up, at).unwrap_or(f64::NAN)
    })?;
    let (rhs, tail_r) = integrate_support(basis, degree, bound, |at| {
        down_scale * apply_numeric(basis, n, &down, at).unwrap_or(f64::NAN) * psi_n.eval_unchecked(at)
    })?;
    let rec = family.recurrence(n)?;
    let expected = to_f64(&rec.alpha) * to_f64(&family.norm_ratio(n)?).sqrt();
    let tail_bound = match (tail_l, tail_r) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    Ok(AdjointCheck {
        lhs,
        rhs,
        expected,
        tail_bound,
    })
}

/// `(sum phi_l H phi_n, sum (H phi_l) phi_n)` over a finite lattice, `H = H(n)`.
pub fn discrete_symmetry(basis: &Basis, l: usize, n: usize) -> Result<(f64, f64)> {
    let family = &basis.family;
    let points = family
        .lattice()
        .ok_or_else(|| Error::Kind(format!("{family} has no finite lattice")))?;
    let h_on_n = hamiltonian(family, n, 0);
    let offset = l as i32 - n as i32;
    let h_on_l = hamiltonian(family, n, offset);
    let (phi_l, phi_n) = (basis.ortho(l)?, basis.ortho(n)?);
    let mut left = 0.0;
    let mut right = 0.0;
    for x in points {
        let at = x as f64;
        left += phi_l.eval_unchecked(at) * apply_numeric(basis, n, &h_on_n, at)?;
        right += apply_numeric(basis, n, &h_on_l, at)? * phi_n.eval_unchecked(at);
    }
    Ok((left, right))
}
