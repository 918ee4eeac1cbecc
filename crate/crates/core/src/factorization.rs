//! Factorization of the orthonormal-layer operator `H` into the ladder pair.
//!
//! Operators are kept as exact coefficient data: `sum_k c_k(s) d^k/ds^k` for
//! continuous families and `sum_k c_k(x) hop_k(x) E^k` for discrete ones, with
//! `hop_k` the product of edge hops `sqrt((sigma + tau)(y) sigma(y + 1))` over
//! the edges `E^k` traverses. Composition never needs a square root: a hop that
//! is traversed twice contributes its square, a polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::rational::{int, rat};
use crate::algebra::{Poly, RationalFn};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Kind};
use crate::orthonormal::relation::hop_square;
use crate::orthonormal::{self, Basis, Op, Relation, Term};

/// `sum_k coeffs[k] * D_k`, with `D_k = d^k/ds^k` or `hop_k E^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub kind: Kind,
    pub coeffs: BTreeMap<i32, RationalFn>,
}

impl Operator {
    pub fn zero(kind: Kind) -> Self {
        Self {
            kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn multiplier(kind: Kind, value: impl Into<RationalFn>) -> Self {
        Self::zero(kind).plus(0, value.into())
    }

    fn plus(mut self, key: i32, value: RationalFn) -> Self {
        self.add_at(key, value);
        self
    }

    fn add_at(&mut self, key: i32, value: RationalFn) {
        let entry = self.coeffs.entry(key).or_insert_with(RationalFn::zero);
        *entry = &*entry + &value;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Reads a relation whose terms all act on the same function with rational scalars.
    pub fn from_relation(kind: Kind, relation: &Relation) -> Result<Self> {
        let mut out = Self::zero(kind);
        for term in &relation.terms {
            let scalar = term
                .scalar
                .to_rational()
                .ok_or_else(|| Error::Invariant("operator scalar is irrational".into()))?;
            let key = match (kind, term.op) {
                (_, Op::Value) => 0,
                (Kind::Continuous, Op::Deriv(k)) => k as i32,
                (Kind::Discrete, Op::Shift(k)) => k,
                (kind, op) => return Err(Error::Kind(format!("{op:?} in a {kind:?} operator"))),
            };
            out.add_at(key, term.coef.scale(&scalar));
        }
        Ok(out)
    }

    /// The operator applied to `psi_{n + offset}`.
    pub fn to_relation(&self, offset: i32) -> Relation {
        let mut relation = Relation::new();
        for (key, coef) in &self.coeffs {
            let op = match (self.kind, *key) {
                (_, 0) => Op::Value,
                (Kind::Continuous, k) => Op::Deriv(k as u8),
                (Kind::Discrete, k) => Op::Shift(k),
            };
            relation.push(Term::rational(BigRational::one(), coef.clone(), op, offset));
        }
        relation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The multiplier, when the operator has no derivative or shift part.
    pub fn as_multiplier(&self) -> Option<RationalFn> {
        match self.coeffs.keys().collect::<Vec<_>>().as_slice() {
            [] => Some(RationalFn::zero()),
            [0] => Some(self.coeffs[&0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        let mut out = self.clone();
        for (key, value) in &other.coeffs {
            out.add_at(*key, value.clone());
        }
        out
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        let mut out = self.clone();
        for (key, value) in &other.coeffs {
            out.add_at(*key, -value);
        }
        out
    }

    /// Left multiplication by a function.
    pub fn scale_by(&self, factor: &RationalFn) -> Operator {
        let mut out = Self::zero(self.kind);
        for (key, value) in &self.coeffs {
            out.add_at(*key, factor * value);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator, family: &FamilySpec) -> Operator {
        let mut out = Self::zero(self.kind);
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                match self.kind {
                    Kind::Continuous => {
                        // D^i (b D^j) = sum_l C(i, l) b^(l) D^(i - l + j)
                        let mut derived = b.clone();
                        for l in 0..=i {
                            let binomial = binomial(i as u64, l as u64);
                            out.add_at(i - l + j, (a * &derived).scale(&binomial));
                            derived = derived.derivative();
                        }
                    }
                    Kind::Discrete => {
                        let moved = b.shift(&int(i as i64));
                        let doubled = RationalFn::from(doubled_hops(family, i, j));
                        out.add_at(i + j, &(a * &moved) * &doubled);
                    }
                }
            }
        }
        out
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(key, coef)| {
                let coef = coef.display_in(var);
                match (self.kind, *key) {
                    (_, 0) => format!("({coef})"),
                    (Kind::Continuous, k) => format!("({coef}) D^{k}"),
                    (Kind::Discrete, k) => format!("({coef}) hop E^{k}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}

fn binomial(n: u64, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, m| acc * rat((n - m) as i64, (m + 1) as i64))
}

/// Edges crossed by `E^k` starting at `start`: `y -> y + 1` is edge `y`.
fn edges(start: i32, k: i32) -> Vec<i32> {
    if k >= 0 {
        (start..start + k).collect()
    } else {
        (start + k..start).collect()
    }
}

/// `hop_i(x) hop_j(x + i) / hop_{i+j}(x)`: the product of the squared hops of
/// edges crossed twice.
fn doubled_hops(family: &FamilySpec, i: i32, j: i32) -> Poly {
    let mut count: BTreeMap<i32, u32> = BTreeMap::new();
    for edge in edges(0, i).into_iter().chain(edges(i, j)) {
        *count.entry(edge).or_default() += 1;
    }
    let square = hop_square(family);
    count
        .into_iter()
        .filter(|(_, c)| *c == 2)
        .fold(Poly::one(), |acc, (edge, _)| &acc * &square.shift_by(edge as i64))
}

/// The multiplicative parts of the ladder pair at degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCoeffs {
    pub family: FamilySpec,
    pub n: usize,
    /// `f(s, n)` or `u(x, n)`.
    pub first: Poly,
    /// `g(s, n)` or `v(x, n)`.
    pub second: Poly,
}

pub fn ladder_coeffs(family: &FamilySpec, n: usize) -> Result<LadderCoeffs> {
    let (first, second) = orthonormal::ladder_multipliers(family, n)?;
    let cap = match family.kind {
        Kind::Continuous => 1,
        Kind::Discrete => 2,
    };
    for p in [&first, &second] {
        if p.degree().unwrap_or(0) > cap {
            return Err(Error::Invariant(format!("{family}: ladder coefficient {p} has degree above {cap}")));
        }
    }
    Ok(LadderCoeffs {
        family: family.clone(),
        n,
        first,
        second,
    })
}

/// `f(., n) - g(., n + 1)` or `u(. + 1, n) - v(., n + 1)`.
pub fn shift_identity_residual(family: &FamilySpec, n: usize) -> Result<Poly> {
    let here = ladder_coeffs(family, n)?;
    let next = ladder_coeffs(family, n + 1)?;
    Ok(match family.kind {
        Kind::Continuous => &here.first - &next.second,
        Kind::Discrete => &here.first.shift_by(1) - &next.second,
    })
}

fn operator(family: &FamilySpec, relation: Result<Relation>) -> Result<Operator> {
    Operator::from_relation(family.kind, &relation?)
}

pub fn raise_op(family: &FamilySpec, n: usize) -> Result<Operator> {
    operator(family, orthonormal::raise_operator(family, n, 0))
}

pub fn lower_op(family: &FamilySpec, n: usize) -> Result<Operator> {
    operator(family, orthonormal::lower_operator(family, n, 0))
}

pub fn hamiltonian_op(family: &FamilySpec, n: usize) -> Result<Operator> {
    operator(family, Ok(orthonormal::hamiltonian(family, n, 0)))
}

/// The factor in front of `H` in the factorized products.
fn h_weight(family: &FamilySpec, coeffs: &LadderCoeffs, shifted: bool) -> RationalFn {
    match family.kind {
        Kind::Continuous => RationalFn::from(-&family.sigma),
        Kind::Discrete if shifted => coeffs.first.shift_by(1).into(),
        Kind::Discrete => coeffs.first.clone().into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Product {
    /// `L^-(n + 1) L^+(n)`.
    DownUp,
    /// `L^+(n) L^-(n + 1)`.
    UpDown,
}

/// `L^-(n+1) L^+(n)` or `L^+(n) L^-(n+1)`.
pub fn ladder_product(family: &FamilySpec, product: Product, n: usize) -> Result<Operator> {
    let (up, down) = (raise_op(family, n)?, lower_op(family, n + 1)?);
    Ok(match product {
        Product::DownUp => down.compose(&up, family),
        Product::UpDown => up.compose(&down, family),
    })
}

/// `product - w H(m)` with `w = -sigma`, `u(x + 1, n)` or `u(x, n)` and
/// `m = n` for `DownUp`, `n + 1` for `UpDown`; a constant when the factorization holds.
pub fn bracket(family: &FamilySpec, product: Product, n: usize) -> Result<Operator> {
    let coeffs = ladder_coeffs(family, n)?;
    let (shifted, level) = match product {
        Product::DownUp => (true, n),
        Product::UpDown => (false, n + 1),
    };
    let h = hamiltonian_op(family, level)?.scale_by(&h_weight(family, &coeffs, shifted));
    Ok(ladder_product(family, product, n)?.sub(&h))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationConstants {
    pub family: String,
    pub n: usize,
    pub mu: BigRational,
    /// `nu(n + 1)`, the constant of `L^+(n) L^-(n+1)`.
    pub nu: BigRational,
    pub bracket_poly_degree_checked: bool,
}

/// `(lambda_2n/2n)(lambda_{2n+2}/(2n+2)) alpha_n gamma_{n+1}`.
pub fn mu_closed_form(family: &FamilySpec, n: usize) -> Result<BigRational> {
    Ok(family.lambda_slope(2 * n) * family.lambda_slope(2 * n + 2) * adjoint_product(family, n)?)
}

fn adjoint_product(family: &FamilySpec, n: usize) -> Result<BigRational> {
    Ok(family.recurrence(n)?.alpha * family.recurrence_extended(n + 1)?.gamma)
}

fn bracket_constant(family: &FamilySpec, product: Product, n: usize) -> Result<BigRational> {
    let op = bracket(family, product, n)?;
    let value = op
        .as_multiplier()
        .ok_or_else(|| Error::Invariant(format!("{family} n={n}: bracket keeps operator part {op}")))?;
    value.as_constant().ok_or_else(|| {
        Error::Invariant(format!(
            "{family} n={n}: bracket {} depends on the variable",
            value.display_in(family.var_name())
        ))
    })
}

/// Both brackets, asserted constant and equal to the closed form.
pub fn mu_bracket(family: &FamilySpec, n: usize) -> Result<FactorizationConstants> {
    family.check_degree(n)?;
    let mu = bracket_constant(family, Product::DownUp, n)?;
    let nu = bracket_constant(family, Product::UpDown, n)?;
    let closed = mu_closed_form(family, n)?;
    if mu != closed {
        return Err(Error::Invariant(format!("{family} n={n}: bracket {mu} differs from closed form {closed}")));
    }
    if nu != mu {
        return Err(Error::Invariant(format!("{family} n={n}: nu(n+1) = {nu} differs from mu(n) = {mu}")));
    }
    Ok(FactorizationConstants {
        family: family.to_string(),
        n,
        mu,
        nu,
        bracket_poly_degree_checked: true,
    })
}

/// `mu(n)` divided by `(lambda_2n/2n)(lambda_{2n+2}/(2n+2))`, i.e. `alpha_n gamma_{n+1}`.
pub fn adjoint_scaled_factorization(family: &FamilySpec, n: usize) -> Result<FactorizationConstants> {
    let raw = mu_bracket(family, n)?;
    let scale = family.lambda_slope(2 * n) * family.lambda_slope(2 * n + 2);
    let mu = &raw.mu / &scale;
    if mu != adjoint_product(family, n)? {
        return Err(Error::Invariant(format!("{family} n={n}: rescaled constant {mu} is not alpha_n gamma_(n+1)")));
    }
    Ok(FactorizationConstants {
        nu: mu.clone(),
        mu,
        ..raw
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factorization {
    /// `L^-(n+1) L^+(n) = mu(n) - sigma H(n)`.
    NC5,
    /// `L^+(n) L^-(n+1) = mu(n) - sigma H(n+1)`.
    NC6,
    /// `L^-(n+1) L^+(n) = mu(n) + u(x+1, n) H(n)`.
    ND5,
    /// `L^+(n) L^-(n+1) = mu(n) + u(x, n) H(n+1)`.
    ND6,
}

impl Factorization {
    pub const ALL: [Factorization; 4] = [Self::NC5, Self::NC6, Self::ND5, Self::ND6];

    pub fn kind(self) -> Kind {
        match self {
            Self::NC5 | Self::NC6 => Kind::Continuous,
            Self::ND5 | Self::ND6 => Kind::Discrete,
        }
    }

    pub fn product(self) -> Product {
        match self {
            Self::NC5 | Self::ND5 => Product::DownUp,
            Self::NC6 | Self::ND6 => Product::UpDown,
        }
    }

    pub fn for_kind(kind: Kind) -> [Factorization; 2] {
        match kind {
            Kind::Continuous => [Self::NC5, Self::NC6],
            Kind::Discrete => [Self::ND5, Self::ND6],
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `lhs - rhs` of a factorization as an operator, with `mu` from the closed form.
pub fn factorization_operator_residual(family: &FamilySpec, which: Factorization, n: usize) -> Result<Operator> {
    if which.kind() != family.kind {
        return Err(Error::Kind(format!("{which} does not apply to {family}")));
    }
    let mu = Operator::multiplier(family.kind, RationalFn::constant(mu_closed_form(family, n)?));
    Ok(bracket(family, which.product(), n)?.sub(&mu))
}

/// The factorization applied to `psi_n` (`..5`) or `psi_{n+1}` (`..6`) and
/// reduced to the polynomial layer; the zero polynomial certifies it.
pub fn factorization_residual(basis: &Basis, which: Factorization, n: usize) -> Result<Poly> {
    let family = &basis.family;
    if which.kind() != family.kind {
        return Err(Error::Kind(format!("{which} does not apply to {family}")));
    }
    let coeffs = ladder_coeffs(family, n)?;
    let (shifted, level, target) = match which.product() {
        Product::DownUp => (true, n, n),
        Product::UpDown => (false, n + 1, n + 1),
    };
    let lhs = ladder_product(family, which.product(), n)?;
    let h = hamiltonian_op(family, level)?.scale_by(&h_weight(family, &coeffs, shifted));
    let mu = Operator::multiplier(family.kind, RationalFn::constant(mu_closed_form(family, n)?));
    let residual = lhs.sub(&h.add(&mu));
    let reduced = orthonormal::reduce(basis, target, &residual.to_relation(0))?;
    Ok(reduced.residual_poly())
}

/// The eigenvalue of `L^-(n+1)L^+(n)` on `psi_n`, computed numerically by
/// composing the operators at the probe points; a cross-check on the exact value.
pub fn product_eigenvalue_numeric(basis: &Basis, product: Product, n: usize) -> Result<f64> {
    let family = &basis.family;
    let op = ladder_product(family, product, n)?;
    let target = match product {
        Product::DownUp => n,
        Product::UpDown => n + 1,
    };
    let relation = op.to_relation(0);
    let psi = basis.ortho(target)?;
    let mut best = (0.0f64, f64::NAN);
    for at in orthonormal::probe_points(family) {
        let value = psi.eval_unchecked(at);
        if value.abs() > best.0.abs() {
            best = (value, orthonormal::apply_numeric(basis, target, &relation, at)? / value);
        }
    }
    Ok(best.1)
}

/// The discrete `L^+(n)L^-(n+1)` factorization with the prefactor `u(x, n - 1)`
/// in front of `H(n+1)`, as it is sometimes displayed; nonzero in general.
pub fn shifted_index_residual(family: &FamilySpec, n: usize) -> Result<Operator> {
    if family.kind != Kind::Discrete || n == 0 {
        return Err(Error::Kind("needs a discrete family and n >= 1".into()));
    }
    let earlier = ladder_coeffs(family, n - 1)?;
    let h = hamiltonian_op(family, n + 1)?.scale_by(&earlier.first.into());
    let mu = Operator::multiplier(family.kind, RationalFn::constant(mu_closed_form(family, n)?));
    Ok(ladder_product(family, Product::UpDown, n)?.sub(&h.add(&mu)))
}

#[cfg(test)]
mod tests;
