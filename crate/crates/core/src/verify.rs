//! Verification suites and the machine-readable report they produce.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::factorization::{
    adjoint_scaled_factorization, factorization_residual, mu_bracket, product_eigenvalue_numeric, shift_identity_residual,
    Factorization, Product,
};
use crate::families::{FamilySpec, Kind};
use crate::fixtures::{self, Category, Mode, Status};
use crate::ladder_poly::{build_family_polys, lower_residual, raise_residual, verify_ode, verify_recurrence};
use crate::orthonormal::{
    adjointness_check, discrete_symmetry, ladder_orthonormal, reduce_to_poly_layer, Basis, Direction, InnerValue,
    OrthoIdentity,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Relative tolerance of the probe-point eigenvalue cross-check; continuous
/// families go through a centred difference there, so it cannot reach the default.
pub const EIGENVALUE_PROBE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Ode,
    Recurrence,
    Ladder,
    Orthonormality,
    Adjoint,
    Factorization,
    Fixtures,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Ode,
        Suite::Recurrence,
        Suite::Ladder,
        Suite::Orthonormality,
        Suite::Adjoint,
        Suite::Factorization,
        Suite::Fixtures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ode => "ode",
            Suite::Recurrence => "recurrence",
            Suite::Ladder => "ladder",
            Suite::Orthonormality => "orthonormality",
            Suite::Adjoint => "adjoint",
            Suite::Factorization => "factorization",
            Suite::Fixtures => "fixtures",
        }
    }

    /// A comma-separated list of suite names, or `all`.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        if text.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut suites: Vec<Suite> = text.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?;
        suites.sort();
        suites.dedup();
        Ok(suites)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub n_max: usize,
    pub tolerance: f64,
    pub adjoint_normalized: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            n_max: 12,
            tolerance: DEFAULT_TOLERANCE,
            adjoint_normalized: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    ExactZero,
    /// A nonzero exact residual, or a failure that produced no number.
    Text(String),
    Numeric(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub identity: String,
    pub n: usize,
    pub residual: Residual,
    /// `None` for exact checks.
    pub tolerance: Option<f64>,
    pub pass: bool,
    /// Exact value certified by the check, e.g. a factorization constant.
    pub value: Option<String>,
    /// Set on fixtures that only hold after a correction.
    pub correction: Option<(Category, &'static str)>,
}

impl Check {
    fn exact(identity: impl Into<String>, n: usize, residual: Result<Poly>) -> Self {
        let residual = match residual {
            Ok(p) if p.is_zero() => Residual::ExactZero,
            Ok(p) => Residual::Text(p.to_string()),
            Err(err) => Residual::Text(format!("error: {err}")),
        };
        Check {
            identity: identity.into(),
            n,
            pass: residual == Residual::ExactZero,
            residual,
            tolerance: None,
            value: None,
            correction: None,
        }
    }

    fn numeric(identity: impl Into<String>, n: usize, error: Result<f64>, tolerance: f64) -> Self {
        let (residual, pass) = match error {
            Ok(e) => (Residual::Numeric(e), e < tolerance),
            Err(err) => (Residual::Text(format!("error: {err}")), false),
        };
        Check {
            identity: identity.into(),
            n,
            residual,
            tolerance: Some(tolerance),
            pass,
            value: None,
            correction: None,
        }
    }

    fn with_value(mut self, value: impl fmt::Display) -> Self {
        self.value = Some(value.to_string());
        self
    }

    pub fn is_exact(&self) -> bool {
        self.tolerance.is_none()
    }

    fn to_json(&self) -> Value {
        let mut record = Map::new();
        record.insert("identity".into(), json!(self.identity));
        record.insert("n".into(), json!(self.n));
        record.insert("mode".into(), json!(if self.is_exact() { "exact" } else { "numeric" }));
        let residual = match &self.residual {
            Residual::ExactZero => json!("exact-zero"),
            Residual::Text(text) => json!(text),
            Residual::Numeric(e) => json!(e),
        };
        record.insert("residual".into(), residual);
        record.insert("tolerance".into(), json!(self.tolerance));
        record.insert("pass".into(), json!(self.pass));
        if let Some(value) = &self.value {
            record.insert("value".into(), json!(value));
        }
        if let Some((category, note)) = &self.correction {
            record.insert("corrected".into(), json!(true));
            record.insert("correction".into(), json!({"category": category.to_string(), "note": note}));
        }
        Value::Object(record)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn to_json(&self) -> Value {
        let failed = self.failures().count();
        json!({
            "name": self.suite.name(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "summary": {"total": self.checks.len(), "passed": self.checks.len() - failed, "failed": failed},
            "pass": self.pass(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub family: String,
    pub params: BTreeMap<&'static str, String>,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.suites.iter().all(SuiteReport::pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "engine_version": ENGINE_VERSION,
            "family": self.family,
            "params": self.params,
            "suites": self.suites.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
            "pass": self.pass(),
        })
    }
}

/// Several families in one document, in the order given.
pub fn combined_json(reports: &[Report]) -> Value {
    json!({
        "engine_version": ENGINE_VERSION,
        "families": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        "pass": reports.iter().all(Report::pass),
    })
}

/// Shared state for the suites of one family.
struct Run<'a> {
    family: &'a FamilySpec,
    basis: Basis,
    settings: &'a Settings,
    /// Highest degree checked.
    n_max: usize,
    /// Highest degree built; identities reaching `n + 1` stop one below it.
    top: usize,
}

impl Run<'_> {
    fn tag(&self, index: u8) -> String {
        let prefix = match self.family.kind {
            Kind::Continuous => "C",
            Kind::Discrete => "D",
        };
        format!("{prefix}{index}")
    }

    fn degrees(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.n_max
    }

    /// Degrees whose identities reach `n + 1`.
    fn stepping(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.n_max.min(self.top.saturating_sub(1))
    }
}

pub fn verify(family: &FamilySpec, suites: &[Suite], settings: &Settings) -> Result<Report> {
    let n_max = family.max_degree().map_or(settings.n_max, |m| m.min(settings.n_max));
    let top = family.max_degree().map_or(n_max + 1, |m| m.min(n_max + 1));
    let run = Run {
        family,
        basis: Basis::new(family, top)?,
        settings,
        n_max,
        top,
    };
    let suites = suites
        .iter()
        .map(|&suite| {
            Ok(SuiteReport {
                suite,
                checks: match suite {
                    Suite::Ode => ode(&run)?,
                    Suite::Recurrence => recurrence(&run)?,
                    Suite::Ladder => ladder(&run)?,
                    Suite::Orthonormality => orthonormality(&run),
                    Suite::Adjoint => adjoint(&run),
                    Suite::Factorization => factorization(&run),
                    Suite::Fixtures => fixture_checks(&run)?,
                },
            })
        })
        .collect::<Result<_>>()?;
    Ok(Report {
        family: family.name().to_string(),
        params: family.family.params(),
        suites,
    })
}

/// Runs the families concurrently; the reports keep the input order.
pub fn verify_all(families: &[FamilySpec], suites: &[Suite], settings: &Settings) -> Result<Vec<Report>> {
    families.par_iter().map(|family| verify(family, suites, settings)).collect()
}

fn ode(run: &Run) -> Result<Vec<Check>> {
    let seq = build_family_polys(run.family, run.top)?;
    Ok(run
        .degrees()
        .map(|n| Check::exact(run.tag(1), n, Ok(verify_ode(run.family, n, &seq.polys[n]))))
        .collect())
}

fn recurrence(run: &Run) -> Result<Vec<Check>> {
    let seq = build_family_polys(run.family, run.top)?;
    Ok(run
        .stepping()
        .map(|n| Check::exact(run.tag(2), n, verify_recurrence(run.family, n, &seq)))
        .collect())
}

fn ladder(run: &Run) -> Result<Vec<Check>> {
    let family = run.family;
    let seq = build_family_polys(family, run.top)?;
    let normalized = run.settings.adjoint_normalized;
    let mut checks = Vec::new();
    for n in run.stepping() {
        let step = ladder_orthonormal(family, Direction::Raise, n, normalized);
        let raise = Check::exact(run.tag(3), n, raise_residual(family, n, &seq));
        checks.push(match step {
            Ok(step) => raise.with_value(step.constant),
            Err(err) => raise.with_value(format!("error: {err}")),
        });
        checks.push(Check::exact("shift", n, shift_identity_residual(family, n)));
    }
    for n in run.degrees().filter(|&n| n > 0) {
        let lower = Check::exact(run.tag(4), n, lower_residual(family, n, &seq));
        checks.push(match ladder_orthonormal(family, Direction::Lower, n, normalized) {
            Ok(step) => lower.with_value(step.constant),
            Err(err) => lower.with_value(format!("error: {err}")),
        });
    }
    for identity in OrthoIdentity::ALL {
        let range = match identity {
            OrthoIdentity::Recurrence | OrthoIdentity::Raise => run.stepping(),
            _ => run.degrees(),
        };
        for n in range {
            let reduced = reduce_to_poly_layer(&run.basis, identity, n).map(|r| r.residual_poly());
            checks.push(Check::exact(identity.tag(family.kind), n, reduced));
        }
    }
    Ok(checks)
}

fn orthonormality(run: &Run) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in run.degrees() {
        for m in 0..=n {
            let delta = BigRational::from_integer((m == n).into());
            let identity = format!("<psi_{m}, psi_{n}>");
            let check = match run.basis.inner_product(m, n) {
                Ok(product) => match &product.value {
                    InnerValue::Exact(value) => {
                        let mut check = Check::exact(identity, n, Ok(Poly::zero()));
                        if product.is_exactly(&delta) != Some(true) {
                            check.residual = Residual::Text(format!("{value}"));
                            check.pass = false;
                        }
                        check
                    }
                    InnerValue::Numeric(value) => {
                        // the reported tail bound is part of the error
                        let error = (value - if m == n { 1.0 } else { 0.0 }).abs() + product.tail_bound.unwrap_or(0.0);
                        Check::numeric(identity, n, Ok(error), run.settings.tolerance)
                    }
                },
                Err(err) => Check::exact(identity, n, Err(err)),
            };
            checks.push(check);
        }
    }
    checks
}

fn adjoint(run: &Run) -> Vec<Check> {
    let tolerance = run.settings.tolerance;
    let mut checks = Vec::new();
    for n in run.stepping() {
        let result = adjointness_check(&run.basis, n);
        let (symmetry, constant) = match result {
            Ok(c) => (
                Ok((c.lhs - c.rhs).abs()),
                Ok((c.lhs - c.expected).abs().max((c.rhs - c.expected).abs())),
            ),
            Err(err) => (Err(err.clone()), Err(err)),
        };
        checks.push(Check::numeric("<psi_{n+1}, L+ psi_n> = <L- psi_{n+1}, psi_n>", n, symmetry, tolerance));
        checks.push(Check::numeric("<psi_{n+1}, L+ psi_n> = alpha_n d_{n+1}/d_n", n, constant, tolerance));
    }
    if run.family.lattice().is_some() {
        for n in run.degrees() {
            for l in 0..=n {
                let error = discrete_symmetry(&run.basis, l, n).map(|(left, right)| (left - right).abs());
                checks.push(Check::numeric(format!("H symmetry l={l}"), n, error, tolerance));
            }
        }
    }
    checks
}

fn factorization(run: &Run) -> Vec<Check> {
    let family = run.family;
    let mut checks = Vec::new();
    for n in run.stepping() {
        let constants = if run.settings.adjoint_normalized {
            adjoint_scaled_factorization(family, n)
        } else {
            mu_bracket(family, n)
        };
        match constants {
            Ok(c) => {
                checks.push(Check::exact("mu", n, Ok(Poly::zero())).with_value(&c.mu));
                checks.push(Check::exact("nu(n+1)", n, Ok(Poly::zero())).with_value(&c.nu));
                // the raw constant is the eigenvalue of the unscaled product
                let exact = match mu_bracket(family, n) {
                    Ok(raw) => crate::algebra::rational::to_f64(&raw.mu),
                    Err(_) => f64::NAN,
                };
                let numeric = product_eigenvalue_numeric(&run.basis, Product::DownUp, n)
                    .map(|value| (value - exact).abs() / exact.abs().max(1.0));
                checks.push(Check::numeric("mu (numeric)", n, numeric, EIGENVALUE_PROBE_TOLERANCE));
            }
            Err(err) => checks.push(Check::exact("mu", n, Err(err))),
        }
        for which in Factorization::for_kind(family.kind) {
            checks.push(Check::exact(which.to_string(), n, factorization_residual(&run.basis, which, n)));
        }
    }
    checks
}

fn fixture_checks(run: &Run) -> Result<Vec<Check>> {
    let outcomes = fixtures::run_fixtures(run.family, run.n_max)?;
    Ok(outcomes
        .into_iter()
        .map(|outcome| {
            let failure = outcome.correction_failure.as_ref().or(outcome.printed_failure.as_ref());
            let n = match (&outcome.status, failure) {
                (Status::Fail, Some(f)) => f.n,
                _ => outcome.degrees.last().copied().unwrap_or(0),
            };
            let (residual, tolerance) = match (&outcome.status, outcome.mode) {
                (Status::Fail, mode) => (
                    Residual::Text(failure.map_or_else(String::new, |f| f.residual.clone())),
                    match mode {
                        Mode::Numeric { tolerance, .. } => Some(tolerance),
                        Mode::Exact => None,
                    },
                ),
                (_, Mode::Exact) => (Residual::ExactZero, None),
                (_, Mode::Numeric { worst, tolerance }) => (Residual::Numeric(worst), Some(tolerance)),
            };
            let correction = match (&outcome.status, outcome.note) {
                (Status::Corrected(category), Some(note)) => Some((*category, note)),
                _ => None,
            };
            Check {
                identity: outcome.id.to_string(),
                n,
                residual,
                tolerance,
                pass: outcome.accepted(),
                value: None,
                correction,
            }
        })
        .collect())
}
