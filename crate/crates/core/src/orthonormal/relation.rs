//! Linear relations between orthonormal functions and their exact reduction to
//! the polynomial layer.
//!
//! A relation is `sum_i scalar_i * coef_i(var) * op_i psi_{n + offset_i} = 0`.
//! Dividing by the common factor `sqrt(rho) / d_n` turns every term into a
//! signed square root times a rational function of the variable:
//!
//! * continuous: `psi' -> y' + h y`, `psi'' -> y'' + 2 h y' + (h' + h^2) y`
//!   with `h = (rho'/rho)/2 = (tau - sigma')/(2 sigma)`;
//! * discrete: a shift `E^k` carries the hop coefficient `hop_k`, the product of
//!   `sqrt((sigma + tau)(x) sigma(x + 1))` over the traversed edges, and
//!   `hop_k(x) sqrt(rho(x + k) / rho(x))` is the polynomial `G_k` (products of
//!   `sigma + tau` going up, of `sigma` going down).
//!
//! Terms are then grouped by square class of their scalar; square roots of
//! rationals with distinct square-free parts are linearly independent over the
//! rationals, so the relation holds iff every class sums to zero.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Basis;
use crate::algebra::rational::{int, rational_sqrt};
use crate::algebra::{Poly, RationalFn, SignedSqrt};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Value,
    /// `d^k/ds^k`, continuous families.
    Deriv(u8),
    /// `hop_k E^k`, discrete families.
    Shift(i32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub scalar: SignedSqrt,
    pub coef: RationalFn,
    pub op: Op,
    pub offset: i32,
}

impl Term {
    pub fn new(scalar: SignedSqrt, coef: impl Into<RationalFn>, op: Op, offset: i32) -> Self {
        Self {
            scalar,
            coef: coef.into(),
            op,
            offset,
        }
    }

    /// A term with a rational scalar.
    pub fn rational(scalar: BigRational, coef: impl Into<RationalFn>, op: Op, offset: i32) -> Self {
        Self::new(SignedSqrt::from_rational(scalar), coef, op, offset)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, term: Term) -> Self {
        self.terms.push(term);
        self
    }

    pub fn push(&mut self, term: Term) {
        self.terms.push(term);
    }

    pub fn extend(&mut self, other: Relation) {
        self.terms.extend(other.terms);
    }

    pub fn negated(mut self) -> Self {
        for term in &mut self.terms {
            term.scalar = term.scalar.neg();
        }
        self
    }
}

/// Exact residual of a reduced relation, one rational function per square class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduced {
    /// `(square of the class representative, coefficient function)`.
    pub classes: Vec<(BigRational, RationalFn)>,
}

impl Reduced {
    fn add(&mut self, scalar: &SignedSqrt, value: RationalFn) {
        if scalar.is_zero() || value.is_zero() {
            return;
        }
        for (square, acc) in &mut self.classes {
            if let Some(factor) = rational_sqrt(&(scalar.square() / &*square)) {
                let factor = if scalar.sign() < 0 { -factor } else { factor };
                *acc = &*acc + &value.scale(&factor);
                return;
            }
        }
        let sign = int(scalar.sign() as i64);
        self.classes.push((scalar.square().clone(), value.scale(&sign)));
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(|(_, value)| value.is_zero())
    }

    /// The numerators of the non-vanishing classes, summed; zero iff `is_zero`
    /// up to accidental cancellation between classes, so use it for display only.
    pub fn residual_poly(&self) -> Poly {
        self.classes
            .iter()
            .filter(|(_, value)| !value.is_zero())
            .fold(Poly::zero(), |acc, (_, value)| &acc + value.numer())
    }

    /// Largest absolute coefficient over all classes, each scaled by its root.
    pub fn magnitude(&self) -> f64 {
        self.classes
            .iter()
            .flat_map(|(square, value)| {
                let root = crate::algebra::rational::to_f64(square).sqrt();
                value
                    .numer()
                    .coeffs()
                    .iter()
                    .map(move |c| crate::algebra::rational::to_f64(c).abs() * root)
                    .collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .filter(|(_, value)| !value.is_zero())
            .map(|(square, value)| {
                if square.is_one() {
                    format!("({value})")
                } else {
                    format!("sqrt({square}) ({value})")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `(tau - sigma') / (2 sigma)`, half the logarithmic derivative of the weight.
pub fn half_log_weight_derivative(family: &FamilySpec) -> RationalFn {
    let num = &family.tau - &family.sigma.derivative();
    RationalFn::new(num, family.sigma.scale(&int(2))).expect("sigma is not the zero polynomial")
}

/// `(sigma + tau)(x) sigma(x + 1)`, the square of the upward hop.
pub fn hop_square(family: &FamilySpec) -> Poly {
    &(&family.sigma + &family.tau) * &family.sigma.shift_by(1)
}

/// `hop_k(x) sqrt(rho(x + k) / rho(x))`.
pub fn shift_gain(family: &FamilySpec, k: i32) -> Poly {
    let up = &family.sigma + &family.tau;
    let mut out = Poly::one();
    if k >= 0 {
        for m in 0..k {
            out = &out * &up.shift_by(m as i64);
        }
    } else {
        for m in k..0 {
            out = &out * &family.sigma.shift_by(m as i64 + 1);
        }
    }
    out
}

/// Applies `op` to `psi = sqrt(rho) y / d` and divides by `sqrt(rho) / d`.
fn reduce_op(family: &FamilySpec, op: Op, y: &Poly) -> Result<RationalFn> {
    match (family.kind, op) {
        (_, Op::Value) => Ok(y.into()),
        (Kind::Continuous, Op::Deriv(order)) => {
            let h = half_log_weight_derivative(family);
            let y0: RationalFn = y.into();
            let y1: RationalFn = y.derivative().into();
            match order {
                0 => Ok(y0),
                1 => Ok(&y1 + &(&h * &y0)),
                2 => {
                    let y2: RationalFn = y.derivative().derivative().into();
                    let twice_h = h.scale(&int(2));
                    let curvature = &h.derivative() + &(&h * &h);
                    Ok(&(&y2 + &(&twice_h * &y1)) + &(&curvature * &y0))
                }
                _ => Err(Error::Invariant(format!("derivative of order {order} is not supported"))),
            }
        }
        (Kind::Discrete, Op::Shift(k)) => Ok((&shift_gain(family, k) * &y.shift_by(k as i64)).into()),
        (kind, op) => Err(Error::Kind(format!("operator {op:?} does not apply to a {kind:?} family"))),
    }
}

/// Reduces `relation`, anchored at degree `n`, to the polynomial layer.
pub fn reduce(basis: &Basis, n: usize, relation: &Relation) -> Result<Reduced> {
    let mut out = Reduced::default();
    for term in &relation.terms {
        let m = n as i64 + term.offset as i64;
        if m < 0 {
            return Err(Error::Invariant(format!("relation refers to degree {m}")));
        }
        let m = m as usize;
        let y = basis.poly(m)?;
        let ratio = basis.norm_quotient(n, m)?;
        let scalar = term.scalar.mul(&ratio);
        let value = &term.coef * &reduce_op(&basis.family, term.op, y)?;
        out.add(&scalar, value);
    }
    Ok(out)
}

/// Writes `sign * sqrt(radicand)` as `scalar * coef * hop_k` when
/// `radicand / hop_k^2` is a constant times the square of a rational function.
pub fn radical_as_hop(family: &FamilySpec, sign: i8, radicand: &RationalFn, k: i32) -> Result<(SignedSqrt, RationalFn)> {
    let mut hop_sq = Poly::one();
    let range: Vec<i64> = if k >= 0 { (0..k as i64).collect() } else { (k as i64..0).collect() };
    for m in range {
        hop_sq = &hop_sq * &hop_square(family).shift_by(m);
    }
    let quotient = radicand / &RationalFn::from(hop_sq);
    let (constant, root) = rational_fn_sqrt(&quotient).ok_or_else(|| {
        Error::Invariant(format!(
            "sqrt({}) is not a rational multiple of the shift-{k} hop",
            radicand.display_in(family.var_name())
        ))
    })?;
    let mut root = root;
    // The square root must be the non-negative branch on the lattice.
    let size = family.lattice_size().unwrap_or(40) as i64;
    let values: Vec<BigRational> = (0..size)
        .filter_map(|x| root.eval(&int(x)))
        .filter(|v| !v.is_zero())
        .collect();
    let negative = values.iter().filter(|v| **v < BigRational::zero()).count();
    if negative > 0 && negative == values.len() {
        root = -&root;
    } else if negative > 0 {
        return Err(Error::Invariant("square root changes sign on the lattice".into()));
    }
    Ok((SignedSqrt::new(sign, constant), root))
}

/// `value = c * root^2` with rational `c >= 0` and rational function `root`.
pub fn rational_fn_sqrt(value: &RationalFn) -> Option<(BigRational, RationalFn)> {
    if value.is_zero() {
        return Some((BigRational::zero(), RationalFn::zero()));
    }
    let lead = value.numer().leading();
    if lead < BigRational::zero() {
        return None;
    }
    let monic = value.numer().scale(&(BigRational::one() / &lead));
    let num = monic.sqrt()?;
    let den = value.denom().sqrt()?;
    Some((lead, RationalFn::new(num, den).ok()?))
}
