//! The displayed relations of the reference tables, transcribed as printed and
//! checked against the generic engine.
//!
//! Every fixture carries the printed form. Where the printed form does not hold
//! the fixture may carry a correction; the correction is asserted too, and its
//! category says whether the defect is one of the known transcription slips or
//! a new finding. A new finding fails the suite.

mod general;
mod table1;
mod table2;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::rational::{int, to_f64};
use crate::algebra::{Poly, RationalFn, SignedSqrt};
use crate::error::{Error, Result};
use crate::factorization::{lower_op, raise_op, Operator};
use crate::families::{Family, FamilySpec, Kind, Recurrence};
use crate::orthonormal::relation::radical_as_hop;
use crate::orthonormal::{apply_numeric, probe_points, raise_constant, reduce, Basis, Op, Relation, Term};

type Q = BigRational;

/// Relative tolerance for closed forms evaluated in floating point.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-11;
/// Absolute tolerance for printed relations that can only be checked pointwise.
pub const POINTWISE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    /// One of the seven known transcription slips.
    Documented,
    /// A known slip carried as a defective entry.
    KnownDefective,
    /// A slip found by the engine that is on neither list; fails the suite.
    Additional,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Documented => "documented",
            Category::KnownDefective => "known-defective",
            Category::Additional => "additional",
        })
    }
}

pub type Check = fn(&Ctx) -> Result<Residual>;

#[derive(Clone, Copy)]
pub struct Correction {
    pub category: Category,
    pub note: &'static str,
    pub check: Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Family(&'static str),
    Kind(Kind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degrees {
    /// Lowest and highest degree offset the relation refers to.
    Span(i32, i32),
    /// Only meaningful at `n = 0`.
    Ground,
}

#[derive(Clone, Copy)]
pub struct Fixture {
    pub id: &'static str,
    pub scope: Scope,
    pub degrees: Degrees,
    pub printed: Check,
    pub correction: Option<Correction>,
}

impl Fixture {
    pub(crate) fn plain(id: &'static str, family: &'static str, degrees: Degrees, printed: Check) -> Self {
        Self {
            id,
            scope: Scope::Family(family),
            degrees,
            printed,
            correction: None,
        }
    }

    pub(crate) fn fixed(self, category: Category, note: &'static str, check: Check) -> Self {
        Self {
            correction: Some(Correction { category, note, check }),
            ..self
        }
    }

    pub fn applies_to(&self, family: &FamilySpec) -> bool {
        match self.scope {
            Scope::Family(name) => name == family.name(),
            Scope::Kind(kind) => kind == family.kind,
        }
    }
}

/// Every fixture, general relations first.
pub fn registry() -> Vec<Fixture> {
    let mut out = general::fixtures();
    out.extend(table1::fixtures());
    out.extend(table2::fixtures());
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Exact { zero: bool, display: String },
    Numeric { error: f64, tolerance: f64 },
}

impl Residual {
    pub fn passes(&self) -> bool {
        match self {
            Residual::Exact { zero, .. } => *zero,
            Residual::Numeric { error, tolerance } => error <= tolerance,
        }
    }

    fn exact(zero: bool, display: impl fmt::Display) -> Self {
        Residual::Exact {
            zero,
            display: display.to_string(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact { display, .. } => f.write_str(display),
            Residual::Numeric { error, tolerance } => write!(f, "{error:.3e} (tolerance {tolerance:.0e})"),
        }
    }
}

/// What a fixture check sees: the family, a basis deep enough for every
/// degree it touches, and the anchor degree.
pub struct Ctx<'a> {
    pub family: &'a FamilySpec,
    pub basis: &'a Basis,
    pub n: usize,
}

impl Ctx<'_> {
    /// The anchor degree as a rational.
    pub fn k(&self) -> Q {
        int(self.n as i64)
    }

    fn data(&self) -> Family {
        self.family.family.data()
    }

    pub fn alpha(&self) -> Q {
        match self.data() {
            Family::Laguerre { alpha } | Family::Jacobi { alpha, .. } | Family::Hahn { alpha, .. } => alpha,
            _ => Q::zero(),
        }
    }

    pub fn beta(&self) -> Q {
        match self.data() {
            Family::Jacobi { beta, .. } | Family::Hahn { beta, .. } => beta,
            _ => Q::zero(),
        }
    }

    /// `N`: the binomial size of Kravchuk, the lattice length of Hahn.
    pub fn big(&self) -> Q {
        match self.data() {
            Family::Kravchuk { size, .. } | Family::Hahn { size, .. } => int(size as i64),
            _ => Q::zero(),
        }
    }

    pub fn p(&self) -> Q {
        match self.data() {
            Family::Kravchuk { p, .. } => p,
            _ => Q::zero(),
        }
    }

    pub fn q(&self) -> Q {
        Q::one() - self.p()
    }

    pub fn mu(&self) -> Q {
        match self.data() {
            Family::Meixner { mu, .. } | Family::Charlier { mu } => mu,
            _ => Q::zero(),
        }
    }

    pub fn gamma(&self) -> Q {
        match self.data() {
            Family::Meixner { gamma, .. } => gamma,
            _ => Q::zero(),
        }
    }

    pub fn slope(&self, m: usize) -> Q {
        self.family.lambda_slope(m)
    }

    pub fn lambda(&self) -> Q {
        self.family.lambda(self.n)
    }

    /// `(lambda_n/n) tau_n / tau_n'`.
    pub fn drift(&self) -> Poly {
        self.family.drift(self.n)
    }

    pub fn rec(&self) -> Result<Recurrence> {
        self.family.recurrence_extended(self.n)
    }

    /// `d_m / d_n`.
    pub fn norm_ratio(&self, m: usize) -> Result<SignedSqrt> {
        self.basis.norm_quotient(m, self.n)
    }

    /// The polynomial core `y_n` at a point.
    pub fn y(&self, at: f64) -> Result<f64> {
        Ok(self.basis.poly(self.n)?.eval_f64(at))
    }
}

/// The variable.
pub fn v() -> Poly {
    Poly::var()
}

/// A constant polynomial.
pub fn c(value: Q) -> Poly {
    Poly::constant(value)
}

/// `a / b` for rationals built from integers.
pub fn r(num: i64, den: i64) -> Q {
    crate::algebra::rational::rat(num, den)
}

/// Action on a polynomial of the sequence.
#[derive(Clone, Copy, Debug)]
pub enum On {
    Value,
    Deriv(u8),
    Shift(i64),
    /// The coefficient alone, not multiplied by any polynomial.
    Free,
}

/// `sum coef * on(y_{n + offset})`, exact.
pub fn poly_relation(ctx: &Ctx, terms: Vec<(Poly, On, i32)>) -> Result<Residual> {
    let mut total = Poly::zero();
    for (coef, on, offset) in terms {
        let value = match on {
            On::Free => Poly::one(),
            _ => {
                let m = ctx.n as i64 + offset as i64;
                let y = ctx.basis.poly(usize::try_from(m).map_err(|_| degree_error(m))?)?;
                match on {
                    On::Value => y.clone(),
                    On::Deriv(1) => y.derivative(),
                    On::Deriv(2) => y.derivative().derivative(),
                    On::Deriv(k) => return Err(Error::Invariant(format!("derivative of order {k}"))),
                    On::Shift(k) => y.shift_by(k),
                    On::Free => unreachable!(),
                }
            }
        };
        total = total + coef * value;
    }
    Ok(Residual::exact(total.is_zero(), total.display_in(ctx.family.var_name())))
}

fn degree_error(m: i64) -> Error {
    Error::Invariant(format!("relation refers to degree {m}"))
}

/// One term of an orthonormal-layer relation.
pub enum Part {
    /// `scalar * coef * op psi_{n + offset}`; a shift carries its hop.
    Term(SignedSqrt, RationalFn, Op, i32),
    /// `sign * sqrt(radicand) * psi_n(x + k)`.
    Radical(i8, RationalFn, i32),
    /// `coef * psi_n(x + k)` with a plain coefficient.
    Shifted(RationalFn, i32),
    /// A function standing alone, multiplying no `psi`.
    Free(Poly),
}

/// `value * psi_{n + offset}` with a rational value.
pub fn term(value: impl Into<RationalFn>, op: Op, offset: i32) -> Part {
    Part::Term(SignedSqrt::one(), value.into(), op, offset)
}

/// `root * psi_{n + offset}` with a signed square root.
pub fn rooted(root: SignedSqrt, offset: i32) -> Part {
    Part::Term(root, RationalFn::constant(Q::one()), Op::Value, offset)
}

/// `sign * sqrt(square)`.
pub fn root(sign: i8, square: Q) -> SignedSqrt {
    SignedSqrt::new(sign, square)
}

/// Applies `relation` to the orthonormal functions: exact when every part is
/// expressible through hops, pointwise otherwise.
pub fn ortho_relation(ctx: &Ctx, parts: Vec<Part>) -> Result<Residual> {
    let mut relation = Relation::new();
    let mut shifted = Vec::new();
    let mut free = Vec::new();
    for part in parts {
        match part {
            Part::Term(scalar, coef, op, offset) => relation.push(Term::new(scalar, coef, op, offset)),
            Part::Radical(sign, radicand, k) => {
                let (scalar, coef) = radical_as_hop(ctx.family, sign, &radicand, k)?;
                relation.push(Term::new(scalar, coef, shift_op(k), 0));
            }
            Part::Shifted(coef, k) => shifted.push((coef, k)),
            Part::Free(coef) => free.push(coef),
        }
    }
    if free.is_empty() {
        for (coef, k) in shifted {
            let square = &coef * &coef;
            let (scalar, root) = radical_as_hop(ctx.family, 1, &square, k)?;
            // recover the sign lost in the square
            let sign = lattice_sign(ctx.family, &coef, &root)?;
            relation.push(Term::new(scalar, root.scale(&int(sign)), shift_op(k), 0));
        }
        let reduced = reduce(ctx.basis, ctx.n, &relation)?;
        return Ok(Residual::exact(reduced.is_zero(), reduced));
    }
    let psi = ctx.basis.ortho(ctx.n)?;
    let mut error: f64 = 0.0;
    for at in probe_points(ctx.family) {
        let mut total = apply_numeric(ctx.basis, ctx.n, &relation, at)?;
        total += free.iter().map(|p| p.eval_f64(at)).sum::<f64>();
        total += shifted
            .iter()
            .map(|(coef, k)| coef.eval_f64(at) * psi.eval_unchecked(at + *k as f64))
            .sum::<f64>();
        error = error.max(total.abs());
    }
    Ok(Residual::Numeric {
        error,
        tolerance: POINTWISE_TOLERANCE,
    })
}

fn shift_op(k: i32) -> Op {
    if k == 0 {
        Op::Value
    } else {
        Op::Shift(k)
    }
}

/// `+1` if `coef` and `root` agree in sign on the lattice, `-1` if they are opposite.
fn lattice_sign(family: &FamilySpec, coef: &RationalFn, root: &RationalFn) -> Result<i64> {
    let range = family.lattice().unwrap_or(0..41);
    let mut sign = 0;
    for x in range {
        let at = int(x);
        let (Some(a), Some(b)) = (coef.eval(&at), root.eval(&at)) else {
            continue;
        };
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let here = if (a > Q::zero()) == (b > Q::zero()) { 1 } else { -1 };
        if sign != 0 && sign != here {
            return Err(Error::Invariant("coefficient changes sign against its hop".into()));
        }
        sign = here;
    }
    Ok(if sign == 0 { 1 } else { sign })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Up,
    Down,
}

/// `first(level_1) second(level_2) psi_n = value psi_n`, as an operator
/// product reduced on `psi_n`.
pub fn eigen(ctx: &Ctx, first: (Ladder, i64), second: (Ladder, i64), value: Q) -> Result<Residual> {
    let op = |(ladder, level): (Ladder, i64)| -> Result<Operator> {
        let m = ctx.n as i64 + level;
        let m = usize::try_from(m).map_err(|_| degree_error(m))?;
        match ladder {
            Ladder::Up => raise_op(ctx.family, m),
            Ladder::Down => lower_op(ctx.family, m),
        }
    };
    let product = op(first)?.compose(&op(second)?, ctx.family);
    let mut relation = product.to_relation(0);
    relation.push(Term::rational(-value, Poly::one(), Op::Value, 0));
    let reduced = reduce(ctx.basis, ctx.n, &relation)?;
    Ok(Residual::exact(reduced.is_zero(), reduced))
}

/// `psi_n = constant * L^+(n-1) ... L^+(0) psi_0` holds iff
/// `constant * prod_k c_k^+ = 1`.
pub fn chain(ctx: &Ctx, constant: SignedSqrt) -> Result<Residual> {
    let mut product = constant;
    for k in 0..ctx.n {
        product = product.mul(&raise_constant(ctx.family, k)?);
    }
    Ok(Residual::exact(product == SignedSqrt::one(), product))
}

/// A closed form for `psi_n` against the engine's values at the probe points.
pub fn closed_form(ctx: &Ctx, form: impl Fn(f64) -> Result<f64>) -> Result<Residual> {
    let psi = ctx.basis.ortho(ctx.n)?;
    let mut error: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for at in probe_points(ctx.family) {
        let expected = psi.eval(at)?;
        scale = scale.max(expected.abs());
        error = error.max((form(at)? - expected).abs());
    }
    Ok(Residual::Numeric {
        error: error / scale.max(f64::MIN_POSITIVE),
        tolerance: CLOSED_FORM_TOLERANCE,
    })
}

/// An operator identity: zero operator or not.
pub fn operator_zero(ctx: &Ctx, op: Operator) -> Residual {
    Residual::exact(op.is_zero(), op.display_in(ctx.family.var_name()))
}

pub fn f(value: &Q) -> f64 {
    to_f64(value)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Corrected(Category),
    Fail,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub n: usize,
    pub corrected: bool,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureOutcome {
    pub id: &'static str,
    pub family: String,
    pub status: Status,
    pub note: Option<&'static str>,
    pub degrees: Vec<usize>,
    /// Mode of the check that decided the status (the correction, if one ran).
    pub mode: Mode,
    /// The first failure of the printed form, and of the correction if that fails too.
    pub printed_failure: Option<Failure>,
    pub correction_failure: Option<Failure>,
}

impl FixtureOutcome {
    /// Passes as printed, or corrected in one of the two sanctioned ways.
    pub fn accepted(&self) -> bool {
        matches!(
            self.status,
            Status::Pass | Status::Corrected(Category::Documented) | Status::Corrected(Category::KnownDefective)
        )
    }
}

/// How the accepted check of a fixture was decided.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    /// Worst relative error over the checked degrees, and its tolerance.
    Numeric { worst: f64, tolerance: f64 },
}

struct Sweep {
    failure: Option<Failure>,
    mode: Mode,
}

fn sweep(check: Check, family: &FamilySpec, basis: &Basis, degrees: &[usize], corrected: bool) -> Sweep {
    let mut mode = Mode::Exact;
    for &n in degrees {
        let ctx = Ctx { family, basis, n };
        let failure = |residual: String| Failure { n, corrected, residual };
        match check(&ctx) {
            Ok(residual) => {
                if let Residual::Numeric { error, tolerance } = residual {
                    let worst = match mode {
                        Mode::Numeric { worst, .. } => worst.max(error),
                        Mode::Exact => error,
                    };
                    mode = Mode::Numeric { worst, tolerance };
                }
                if !residual.passes() {
                    return Sweep { failure: Some(failure(residual.to_string())), mode };
                }
            }
            Err(err) => return Sweep { failure: Some(failure(format!("error: {err}"))), mode },
        }
    }
    Sweep { failure: None, mode }
}

/// The degrees a fixture is checked at, given a basis reaching `top`.
fn degrees_for(fixture: &Fixture, n_max: usize, top: usize) -> Vec<usize> {
    match fixture.degrees {
        Degrees::Ground => vec![0],
        Degrees::Span(lo, hi) => {
            let first = (-lo).max(0) as usize;
            let last = (top as i64 - hi as i64).min(n_max as i64);
            if last < first as i64 {
                return Vec::new();
            }
            (first..=last as usize).collect()
        }
    }
}

pub fn run_fixture(fixture: &Fixture, basis: &Basis, n_max: usize) -> FixtureOutcome {
    let family = &basis.family;
    let degrees = degrees_for(fixture, n_max, basis.n_max());
    let printed = sweep(fixture.printed, family, basis, &degrees, false);
    let (status, mode, correction_failure, note) = match (&printed.failure, &fixture.correction) {
        (None, _) => (Status::Pass, printed.mode, None, None),
        (Some(_), None) => (Status::Fail, printed.mode, None, None),
        (Some(_), Some(fix)) => {
            let fixed = sweep(fix.check, family, basis, &degrees, true);
            match fixed.failure {
                None => (Status::Corrected(fix.category), fixed.mode, None, Some(fix.note)),
                Some(failure) => (Status::Fail, fixed.mode, Some(failure), Some(fix.note)),
            }
        }
    };
    FixtureOutcome {
        id: fixture.id,
        family: family.family.to_string(),
        status,
        note,
        degrees,
        mode,
        printed_failure: printed.failure,
        correction_failure,
    }
}

/// Runs every fixture that applies to `family` at degrees `0..=n_max`
/// (capped by the family's largest degree).
pub fn run_fixtures(family: &FamilySpec, n_max: usize) -> Result<Vec<FixtureOutcome>> {
    let top = family.max_degree().map_or(n_max + 1, |m| m.min(n_max + 1));
    let basis = Basis::new(family, top)?;
    Ok(registry()
        .iter()
        .filter(|fixture| fixture.applies_to(family))
        .map(|fixture| run_fixture(fixture, &basis, n_max))
        .collect())
}
