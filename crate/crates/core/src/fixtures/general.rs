//! The family-independent relations: the four polynomial-layer relations and
//! their orthonormal counterparts, the operator `H` and the factorizations.

use num_traits::One;

use super::*;
use crate::factorization::{factorization_operator_residual, shifted_index_residual, Factorization};

const CONTINUOUS: Scope = Scope::Kind(Kind::Continuous);
const DISCRETE: Scope = Scope::Kind(Kind::Discrete);

fn sigma(ctx: &Ctx) -> Poly {
    ctx.family.sigma.clone()
}

fn tau(ctx: &Ctx) -> Poly {
    ctx.family.tau.clone()
}

/// `(lambda_2n/2n)(var - beta_n)`.
fn centred(ctx: &Ctx) -> Result<Poly> {
    Ok((v() - c(ctx.rec()?.beta)).scale(&ctx.slope(2 * ctx.n)))
}

/// `(lambda_2n/2n) * coefficient * d_m/d_n`.
fn ladder_root(ctx: &Ctx, coefficient: Q, m: usize) -> Result<SignedSqrt> {
    let base = ctx.slope(2 * ctx.n) * coefficient;
    Ok(SignedSqrt::from_rational(base).mul(&ctx.norm_ratio(m)?))
}

/// `(tau - sigma') / 2`.
fn half_gap(ctx: &Ctx) -> Poly {
    (tau(ctx) - sigma(ctx).derivative()).scale(&r(1, 2))
}

/// `-(1/4) gap^2 / sigma - (tau' - sigma'')/2 + lambda_n`.
fn potential_with(ctx: &Ctx, gap: Poly) -> Result<RationalFn> {
    let quarter = RationalFn::new(&gap * &gap, sigma(ctx).scale(&int(4)))?;
    let slopes = tau(ctx).derivative() - sigma(ctx).derivative().derivative();
    let constant = RationalFn::from(c(ctx.lambda()) - slopes.scale(&r(1, 2)));
    Ok(constant - quarter)
}

fn c1(ctx: &Ctx) -> Result<Residual> {
    poly_relation(
        ctx,
        vec![
            (sigma(ctx), On::Deriv(2), 0),
            (tau(ctx), On::Deriv(1), 0),
            (c(ctx.lambda()), On::Value, 0),
        ],
    )
}

fn c2(ctx: &Ctx) -> Result<Residual> {
    let rec = ctx.rec()?;
    poly_relation(
        ctx,
        vec![
            (v(), On::Value, 0),
            (c(-rec.alpha), On::Value, 1),
            (c(-rec.beta), On::Value, 0),
            (c(-rec.gamma), On::Value, -1),
        ],
    )
}

fn c3(ctx: &Ctx) -> Result<Residual> {
    let raise = ctx.slope(2 * ctx.n) * ctx.rec()?.alpha;
    poly_relation(
        ctx,
        vec![
            (ctx.drift(), On::Value, 0),
            (-sigma(ctx), On::Deriv(1), 0),
            (c(-raise), On::Value, 1),
        ],
    )
}

fn c4_with(ctx: &Ctx, bracket_on: On) -> Result<Residual> {
    let lower = ctx.slope(2 * ctx.n) * ctx.rec()?.gamma;
    poly_relation(
        ctx,
        vec![
            (centred(ctx)? - ctx.drift(), bracket_on, 0),
            (sigma(ctx), On::Deriv(1), 0),
            (c(-lower), On::Value, -1),
        ],
    )
}

fn d1(ctx: &Ctx) -> Result<Residual> {
    let (s, t) = (sigma(ctx), tau(ctx));
    poly_relation(
        ctx,
        vec![
            (&s + &t, On::Shift(1), 0),
            (-(s.scale(&int(2)) + &t), On::Value, 0),
            (s, On::Shift(-1), 0),
            (c(ctx.lambda()), On::Value, 0),
        ],
    )
}

fn d2_with(ctx: &Ctx, last: i32) -> Result<Residual> {
    let rec = ctx.rec()?;
    poly_relation(
        ctx,
        vec![
            (v(), On::Value, 0),
            (c(-rec.alpha), On::Value, 1),
            (c(-rec.beta), On::Value, 0),
            (c(-rec.gamma), On::Value, last),
        ],
    )
}

fn d3_with(ctx: &Ctx, with_alpha: bool) -> Result<Residual> {
    let alpha = if with_alpha { ctx.rec()?.alpha } else { Q::one() };
    let raise = ctx.slope(2 * ctx.n) * alpha;
    let s = sigma(ctx);
    poly_relation(
        ctx,
        vec![
            (s.clone(), On::Value, 0),
            (-s, On::Shift(-1), 0),
            (-ctx.drift(), On::Value, 0),
            (c(raise), On::Value, 1),
        ],
    )
}

/// `(sigma + tau) Delta y = [first - lambda_n - (lambda_2n/2n)(x - beta_n)] y
/// + (lambda_2n/2n) gamma_n y_{n-1}`.
fn d4_with(ctx: &Ctx, first: Poly) -> Result<Residual> {
    let up = sigma(ctx) + tau(ctx);
    let bracket = first - c(ctx.lambda()) - centred(ctx)?;
    let lower = ctx.slope(2 * ctx.n) * ctx.rec()?.gamma;
    poly_relation(
        ctx,
        vec![
            (up.clone(), On::Shift(1), 0),
            (-up, On::Value, 0),
            (-bracket, On::Value, 0),
            (c(-lower), On::Value, -1),
        ],
    )
}

/// The printed bracket: `tau` where `tau_n` belongs, with
/// `-(lambda_n/n)(2n+1)/lambda_{2n+1} = (lambda_n/n)/tau_n'`.
fn d4_printed(ctx: &Ctx) -> Result<Residual> {
    let n = ctx.n;
    let factor = -ctx.slope(n) * int(2 * n as i64 + 1) / ctx.family.lambda(2 * n + 1);
    d4_with(ctx, tau(ctx).scale(&factor))
}

fn nc1(ctx: &Ctx) -> Result<Residual> {
    let gap = tau(ctx) - sigma(ctx).derivative();
    ortho_relation(
        ctx,
        vec![
            term(sigma(ctx), Op::Deriv(2), 0),
            term(sigma(ctx).derivative(), Op::Deriv(1), 0),
            term(potential_with(ctx, gap)?, Op::Value, 0),
        ],
    )
}

fn nc2_with(ctx: &Ctx, last: i32) -> Result<Residual> {
    let rec = ctx.rec()?;
    ortho_relation(
        ctx,
        vec![
            rooted(ladder_root(ctx, rec.alpha, ctx.n + 1)?, 1),
            rooted(ladder_root(ctx, rec.gamma, ctx.n - 1)?, last),
            term(-centred(ctx)?, Op::Value, 0),
        ],
    )
}

fn nc3(ctx: &Ctx) -> Result<Residual> {
    let rec = ctx.rec()?;
    ortho_relation(
        ctx,
        vec![
            term(ctx.drift() + half_gap(ctx), Op::Value, 0),
            term(-sigma(ctx), Op::Deriv(1), 0),
            rooted(ladder_root(ctx, rec.alpha, ctx.n + 1)?.neg(), 1),
        ],
    )
}

fn nc4(ctx: &Ctx) -> Result<Residual> {
    let rec = ctx.rec()?;
    ortho_relation(
        ctx,
        vec![
            term(centred(ctx)? - ctx.drift() - half_gap(ctx), Op::Value, 0),
            term(sigma(ctx), Op::Deriv(1), 0),
            rooted(ladder_root(ctx, rec.gamma, ctx.n - 1)?.neg(), -1),
        ],
    )
}

fn h_with(ctx: &Ctx, gap: Poly) -> Result<Residual> {
    ortho_relation(
        ctx,
        vec![
            term(sigma(ctx), Op::Deriv(2), 0),
            term(sigma(ctx).derivative(), Op::Deriv(1), 0),
            term(potential_with(ctx, gap)?, Op::Value, 0),
        ],
    )
}

fn factorized(ctx: &Ctx, which: Factorization) -> Result<Residual> {
    Ok(operator_zero(ctx, factorization_operator_residual(ctx.family, which, ctx.n)?))
}

fn nd1(ctx: &Ctx) -> Result<Residual> {
    let diagonal = c(ctx.lambda()) - sigma(ctx).scale(&int(2)) - tau(ctx);
    ortho_relation(
        ctx,
        vec![
            term(Poly::one(), Op::Shift(1), 0),
            term(Poly::one(), Op::Shift(-1), 0),
            term(diagonal, Op::Value, 0),
        ],
    )
}

fn nd2(ctx: &Ctx) -> Result<Residual> {
    let rec = ctx.rec()?;
    ortho_relation(
        ctx,
        vec![
            rooted(ladder_root(ctx, rec.alpha, ctx.n + 1)?, 1),
            rooted(ladder_root(ctx, rec.gamma, ctx.n - 1)?, -1),
            term(-centred(ctx)?, Op::Value, 0),
        ],
    )
}

fn nd3(ctx: &Ctx) -> Result<Residual> {
    let rec = ctx.rec()?;
    ortho_relation(
        ctx,
        vec![
            term(ctx.drift() - sigma(ctx), Op::Value, 0),
            term(Poly::one(), Op::Shift(-1), 0),
            rooted(ladder_root(ctx, rec.alpha, ctx.n + 1)?.neg(), 1),
        ],
    )
}

fn nd4(ctx: &Ctx) -> Result<Residual> {
    let rec = ctx.rec()?;
    let multiplier = c(ctx.lambda()) + centred(ctx)? - ctx.drift() - sigma(ctx) - tau(ctx);
    ortho_relation(
        ctx,
        vec![
            term(multiplier, Op::Value, 0),
            term(Poly::one(), Op::Shift(1), 0),
            rooted(ladder_root(ctx, rec.gamma, ctx.n - 1)?.neg(), -1),
        ],
    )
}

pub(super) fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            id: "C1",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 0),
            printed: c1,
            correction: None,
        },
        Fixture {
            id: "C2",
            scope: CONTINUOUS,
            degrees: Degrees::Span(-1, 1),
            printed: c2,
            correction: None,
        },
        Fixture {
            id: "C3",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 1),
            printed: c3,
            correction: None,
        },
        Fixture {
            id: "C4",
            scope: CONTINUOUS,
            degrees: Degrees::Span(-1, 0),
            printed: |ctx| c4_with(ctx, On::Free),
            correction: Some(Correction {
                category: Category::Documented,
                note: "the bracket multiplies y_n",
                check: |ctx| c4_with(ctx, On::Value),
            }),
        },
        Fixture {
            id: "D1",
            scope: DISCRETE,
            degrees: Degrees::Span(0, 0),
            printed: d1,
            correction: None,
        },
        Fixture {
            id: "D2",
            scope: DISCRETE,
            degrees: Degrees::Span(-1, 1),
            printed: |ctx| d2_with(ctx, 1),
            correction: Some(Correction {
                category: Category::Documented,
                note: "gamma_n multiplies P_{n-1}, not P_{n+1}",
                check: |ctx| d2_with(ctx, -1),
            }),
        },
        Fixture {
            id: "D3",
            scope: DISCRETE,
            degrees: Degrees::Span(0, 1),
            printed: |ctx| d3_with(ctx, false),
            correction: Some(Correction {
                category: Category::Documented,
                note: "alpha_n multiplies P_{n+1}",
                check: |ctx| d3_with(ctx, true),
            }),
        },
        Fixture {
            id: "D4",
            scope: DISCRETE,
            degrees: Degrees::Span(-1, 0),
            printed: d4_printed,
            correction: Some(Correction {
                category: Category::Documented,
                note: "the bracket carries tau_n, i.e. (lambda_n/n) tau_n/tau_n'",
                check: |ctx| d4_with(ctx, ctx.drift()),
            }),
        },
        Fixture {
            id: "NC1",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 0),
            printed: nc1,
            correction: None,
        },
        Fixture {
            id: "NC2",
            scope: CONTINUOUS,
            degrees: Degrees::Span(-1, 1),
            printed: |ctx| nc2_with(ctx, 0),
            correction: Some(Correction {
                category: Category::Additional,
                note: "the gamma_n d_{n-1}/d_n term multiplies psi_{n-1}, not psi_n",
                check: |ctx| nc2_with(ctx, -1),
            }),
        },
        Fixture {
            id: "NC3",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 1),
            printed: nc3,
            correction: None,
        },
        Fixture {
            id: "NC4",
            scope: CONTINUOUS,
            degrees: Degrees::Span(-1, 0),
            printed: nc4,
            correction: None,
        },
        Fixture {
            id: "H",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 0),
            printed: |ctx| h_with(ctx, sigma(ctx) - sigma(ctx).derivative()),
            correction: Some(Correction {
                category: Category::KnownDefective,
                note: "the potential carries (tau - sigma')^2, as in NC1",
                check: |ctx| h_with(ctx, tau(ctx) - sigma(ctx).derivative()),
            }),
        },
        Fixture {
            id: "NC5",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 1),
            printed: |ctx| factorized(ctx, Factorization::NC5),
            correction: None,
        },
        Fixture {
            id: "NC6",
            scope: CONTINUOUS,
            degrees: Degrees::Span(0, 1),
            printed: |ctx| factorized(ctx, Factorization::NC6),
            correction: None,
        },
        Fixture {
            id: "ND1",
            scope: DISCRETE,
            degrees: Degrees::Span(0, 0),
            printed: nd1,
            correction: None,
        },
        Fixture {
            id: "ND2",
            scope: DISCRETE,
            degrees: Degrees::Span(-1, 1),
            printed: nd2,
            correction: None,
        },
        Fixture {
            id: "ND3",
            scope: DISCRETE,
            degrees: Degrees::Span(0, 1),
            printed: nd3,
            correction: None,
        },
        Fixture {
            id: "ND4",
            scope: DISCRETE,
            degrees: Degrees::Span(-1, 0),
            printed: nd4,
            correction: None,
        },
        Fixture {
            id: "ND5",
            scope: DISCRETE,
            degrees: Degrees::Span(0, 1),
            printed: |ctx| factorized(ctx, Factorization::ND5),
            correction: None,
        },
        Fixture {
            id: "ND6",
            scope: DISCRETE,
            degrees: Degrees::Span(-1, 1),
            printed: |ctx| Ok(operator_zero(ctx, shifted_index_residual(ctx.family, ctx.n)?)),
            correction: Some(Correction {
                category: Category::Additional,
                note: "the prefactor of H(x, n+1) is u(x, n), not u(x, n-1)",
                check: |ctx| factorized(ctx, Factorization::ND6),
            }),
        },
    ]
}
