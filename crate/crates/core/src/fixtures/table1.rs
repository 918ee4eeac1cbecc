//! Continuous families: the polynomial relations and the orthonormal
//! functions with their ladders, ground states, product formulas and the
//! eigenvalues of the ladder products.

use statrs::function::gamma::ln_gamma;

use super::*;

const SPAN0: Degrees = Degrees::Span(0, 0);
const UP: Degrees = Degrees::Span(0, 1);
const DOWN: Degrees = Degrees::Span(-1, 0);
const BOTH: Degrees = Degrees::Span(-1, 1);

fn one() -> Poly {
    Poly::one()
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// `1 - s^2`.
fn bulge() -> Poly {
    Poly::from_ints(&[1, 0, -1])
}

/// `(k + shift)` for the anchor degree `k`.
fn kp(ctx: &Ctx, shift: i64) -> Q {
    ctx.k() + int(shift)
}

fn hermite() -> Vec<Fixture> {
    const H: &str = "hermite";
    vec![
        Fixture::plain("He 1", H, SPAN0, |ctx| {
            poly_relation(
                ctx,
                vec![
                    (one(), On::Deriv(2), 0),
                    (v().scale(&int(-2)), On::Deriv(1), 0),
                    (c(ctx.k() * int(2)), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("He 2", H, BOTH, |ctx| {
            poly_relation(
                ctx,
                vec![(v(), On::Value, 0), (c(r(-1, 2)), On::Value, 1), (c(-ctx.k()), On::Value, -1)],
            )
        }),
        Fixture::plain("He 3", H, UP, |ctx| {
            poly_relation(
                ctx,
                vec![(one(), On::Value, 1), (v().scale(&int(-2)), On::Value, 0), (one(), On::Deriv(1), 0)],
            )
        }),
        Fixture::plain("He 4", H, DOWN, |ctx| {
            let inverse = Q::one() / (ctx.k() * int(2));
            poly_relation(ctx, vec![(one(), On::Value, -1), (c(-inverse), On::Deriv(1), 0)])
        }),
        Fixture::plain("N He 1", H, SPAN0, |ctx| {
            let potential = c(int(1) + ctx.k() * int(2)) - &v() * &v();
            ortho_relation(ctx, vec![term(one(), Op::Deriv(2), 0), term(potential, Op::Value, 0)])
        }),
        Fixture::plain("N He 2", H, BOTH, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    rooted(root(1, kp(ctx, 1) * int(2)), 1),
                    rooted(root(1, ctx.k() * int(2)), -1),
                    term(v().scale(&int(-2)), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("N He 3", H, UP, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    term(v(), Op::Value, 0),
                    term(-one(), Op::Deriv(1), 0),
                    rooted(root(-1, kp(ctx, 1) * int(2)), 1),
                ],
            )
        }),
        Fixture::plain("N He 4", H, DOWN, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    term(v(), Op::Value, 0),
                    term(one(), Op::Deriv(1), 0),
                    rooted(root(-1, ctx.k() * int(2)), -1),
                ],
            )
        }),
        Fixture::plain("N He psi_0", H, Degrees::Ground, |ctx| {
            closed_form(ctx, |s| Ok((-0.25 * std::f64::consts::PI.ln() - 0.5 * s * s).exp()))
        }),
        Fixture::plain("N He psi_n", H, SPAN0, |ctx| {
            let n = ctx.n;
            let ln_norm = -0.5 * (n as f64 * std::f64::consts::LN_2 + ln_factorial(n) + 0.5 * std::f64::consts::PI.ln());
            closed_form(ctx, |s| Ok((ln_norm - 0.5 * s * s).exp() * ctx.y(s)?))
        }),
        Fixture::plain("N He product", H, SPAN0, |ctx| {
            let square = Q::one() / (num_traits::pow(int(2), ctx.n) * crate::algebra::rational::factorial(ctx.n));
            chain(ctx, root(1, square))
        }),
        // printed with both ladders at level n; for this family they do not depend on it
        Fixture::plain("N He L+L-", H, SPAN0, |ctx| {
            eigen(ctx, (Ladder::Up, 0), (Ladder::Down, 0), ctx.k() * int(2))
        }),
        Fixture::plain("N He L-L+", H, SPAN0, |ctx| {
            eigen(ctx, (Ladder::Down, 0), (Ladder::Up, 0), kp(ctx, 1) * int(2))
        }),
    ]
}

fn laguerre_la3(ctx: &Ctx, bracket: Poly) -> Result<Residual> {
    poly_relation(
        ctx,
        vec![(c(kp(ctx, 1)), On::Value, 1), (-bracket, On::Value, 0), (-v(), On::Deriv(1), 0)],
    )
}

/// `exp(-s/2) s^(a/2)`, in log form.
fn laguerre_ln_weight(a: f64, s: f64) -> f64 {
    -0.5 * s + 0.5 * a * s.ln()
}

fn laguerre_chain(ctx: &Ctx, signed: bool) -> Result<Residual> {
    let a = ctx.alpha();
    let square = Q::one()
        / (crate::algebra::rational::factorial(ctx.n) * crate::algebra::rational::pochhammer(&(a + int(1)), ctx.n));
    let sign = if signed && ctx.n % 2 == 1 { -1 } else { 1 };
    chain(ctx, root(sign, square))
}

fn laguerre() -> Vec<Fixture> {
    const L: &str = "laguerre";
    vec![
        Fixture::plain("La 1", L, SPAN0, |ctx| {
            let a = ctx.alpha();
            poly_relation(
                ctx,
                vec![
                    (v(), On::Deriv(2), 0),
                    (c(a + int(1)) - v(), On::Deriv(1), 0),
                    (c(ctx.k()), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("La 2", L, BOTH, |ctx| {
            let a = ctx.alpha();
            poly_relation(
                ctx,
                vec![
                    (c(kp(ctx, 1)), On::Value, 1),
                    (c(ctx.k() + &a), On::Value, -1),
                    (v() - c(ctx.k() * int(2) + a + int(1)), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("La 3", L, UP, |ctx| laguerre_la3(ctx, v() - c(kp(ctx, 1) + ctx.alpha()))).fixed(
            Category::Additional,
            "the multiplier of L_n is (n + alpha + 1 - s), of opposite sign",
            |ctx| laguerre_la3(ctx, c(kp(ctx, 1) + ctx.alpha()) - v()),
        ),
        Fixture::plain("La 4", L, DOWN, |ctx| {
            poly_relation(
                ctx,
                vec![
                    (c(ctx.k() + ctx.alpha()), On::Value, -1),
                    (c(-ctx.k()), On::Value, 0),
                    (v(), On::Deriv(1), 0),
                ],
            )
        }),
        Fixture::plain("N La 1", L, SPAN0, |ctx| {
            let a = ctx.alpha();
            // -(1/4)(s + a^2/s - 2a - 2) + n over the common denominator s
            let inner = &v() * &v() + c(&a * &a) - v().scale(&(a * int(2) + int(2)));
            let num = inner.scale(&r(-1, 4)) + v().scale(&ctx.k());
            ortho_relation(
                ctx,
                vec![
                    term(v(), Op::Deriv(2), 0),
                    term(one(), Op::Deriv(1), 0),
                    term(RationalFn::new(num, v())?, Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("N La 2", L, BOTH, |ctx| {
            let a = ctx.alpha();
            ortho_relation(
                ctx,
                vec![
                    rooted(root(1, kp(ctx, 1) * (kp(ctx, 1) + &a)), 1),
                    rooted(root(1, ctx.k() * (ctx.k() + &a)), -1),
                    term(v() - c(ctx.k() * int(2) + a + int(1)), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("N La 3", L, UP, |ctx| {
            let a = ctx.alpha();
            let multiplier = (c(ctx.k() * int(2) + &a + int(2)) - v()).scale(&r(-1, 2));
            ortho_relation(
                ctx,
                vec![
                    term(multiplier, Op::Value, 0),
                    term(-v(), Op::Deriv(1), 0),
                    rooted(root(1, kp(ctx, 1) * (kp(ctx, 1) + a)), 1),
                ],
            )
        }),
        Fixture::plain("N La 4", L, DOWN, |ctx| {
            let a = ctx.alpha();
            let multiplier = (c(ctx.k() * int(2) + &a) - v()).scale(&r(-1, 2));
            ortho_relation(
                ctx,
                vec![
                    term(multiplier, Op::Value, 0),
                    term(v(), Op::Deriv(1), 0),
                    rooted(root(1, ctx.k() * (ctx.k() + a)), -1),
                ],
            )
        }),
        Fixture::plain("N La psi_0", L, Degrees::Ground, |ctx| {
            let a = f(&ctx.alpha());
            closed_form(ctx, |s| Ok((-0.5 * ln_gamma(a + 1.0) + laguerre_ln_weight(a, s)).exp()))
        }),
        Fixture::plain("N La psi_n", L, SPAN0, |ctx| {
            let (a, n) = (f(&ctx.alpha()), ctx.n);
            let ln_norm = 0.5 * (ln_factorial(n) - ln_gamma(n as f64 + a + 1.0));
            closed_form(ctx, |s| Ok((ln_norm + laguerre_ln_weight(a, s)).exp() * ctx.y(s)?))
        }),
        Fixture::plain("N La product", L, SPAN0, |ctx| laguerre_chain(ctx, false)).fixed(
            Category::Additional,
            "the constant carries (-1)^n, the raising constants being negative",
            |ctx| laguerre_chain(ctx, true),
        ),
        Fixture::plain("N La L+L-", L, DOWN, |ctx| {
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), ctx.k() * (ctx.k() + ctx.alpha()))
        }),
        Fixture::plain("N La L-L+", L, SPAN0, |ctx| {
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), kp(ctx, 1) * (kp(ctx, 1) + ctx.alpha()))
        }),
    ]
}

/// `(2n+1)/(2n+3) (n+1)^2`, the square of the Legendre raising constant.
fn legendre_up(ctx: &Ctx) -> Q {
    kp(ctx, 1) * kp(ctx, 1) * (ctx.k() * int(2) + int(1)) / (ctx.k() * int(2) + int(3))
}

/// `(2n+1)/(2n-1) n^2`.
fn legendre_down(ctx: &Ctx) -> Q {
    ctx.k() * ctx.k() * (ctx.k() * int(2) + int(1)) / (ctx.k() * int(2) - int(1))
}

fn legendre() -> Vec<Fixture> {
    const P: &str = "legendre";
    vec![
        Fixture::plain("Le 1", P, SPAN0, |ctx| {
            poly_relation(
                ctx,
                vec![
                    (bulge(), On::Deriv(2), 0),
                    (v().scale(&int(-2)), On::Deriv(1), 0),
                    (c(ctx.k() * kp(ctx, 1)), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("Le 2", P, BOTH, |ctx| {
            let odd = ctx.k() * int(2) + int(1);
            poly_relation(
                ctx,
                vec![
                    (c(kp(ctx, 1) / &odd), On::Value, 1),
                    (c(ctx.k() / odd), On::Value, -1),
                    (-v(), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("Le 3", P, UP, |ctx| {
            poly_relation(
                ctx,
                vec![
                    (c(kp(ctx, 1)), On::Value, 1),
                    (v().scale(&-kp(ctx, 1)), On::Value, 0),
                    (bulge(), On::Deriv(1), 0),
                ],
            )
        }),
        Fixture::plain("Le 4", P, DOWN, |ctx| {
            poly_relation(
                ctx,
                vec![(c(ctx.k()), On::Value, -1), (v().scale(&-ctx.k()), On::Value, 0), (-bulge(), On::Deriv(1), 0)],
            )
        }),
        Fixture::plain("N Le 1", P, SPAN0, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    term(bulge(), Op::Deriv(2), 0),
                    term(v().scale(&int(-2)), Op::Deriv(1), 0),
                    term(c(ctx.k() * kp(ctx, 1)), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("N Le 2", P, BOTH, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    rooted(root(1, legendre_up(ctx)), 1),
                    rooted(root(1, legendre_down(ctx)), -1),
                    term(v().scale(&-(ctx.k() * int(2) + int(1))), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("N Le 3", P, UP, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    term(v().scale(&kp(ctx, 1)), Op::Value, 0),
                    term(-bulge(), Op::Deriv(1), 0),
                    rooted(root(-1, legendre_up(ctx)), 1),
                ],
            )
        }),
        Fixture::plain("N Le 4", P, DOWN, |ctx| {
            ortho_relation(
                ctx,
                vec![
                    term(v().scale(&ctx.k()), Op::Value, 0),
                    term(bulge(), Op::Deriv(1), 0),
                    rooted(root(-1, legendre_down(ctx)), -1),
                ],
            )
        }),
        Fixture::plain("N Le psi_0", P, Degrees::Ground, |ctx| {
            closed_form(ctx, |_| Ok(std::f64::consts::FRAC_1_SQRT_2))
        }),
        Fixture::plain("N Le psi_n", P, SPAN0, |ctx| {
            let scale = ((2 * ctx.n + 1) as f64 / 2.0).sqrt();
            closed_form(ctx, |s| Ok(scale * ctx.y(s)?))
        }),
        Fixture::plain("N Le product", P, SPAN0, |ctx| {
            let fact = crate::algebra::rational::factorial(ctx.n);
            chain(ctx, root(1, (ctx.k() * int(2) + int(1)) / (&fact * &fact)))
        }),
        // printed without the function they act on; read as applied to psi_n
        Fixture::plain("N Le L+L-", P, DOWN, |ctx| {
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), ctx.k() * ctx.k())
        }),
        Fixture::plain("N Le L-L+", P, SPAN0, |ctx| {
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), kp(ctx, 1) * kp(ctx, 1))
        }),
    ]
}

/// Jacobi shorthand: `(alpha, beta, alpha + beta, n)`.
fn jab(ctx: &Ctx) -> (Q, Q, Q, Q) {
    let (a, b) = (ctx.alpha(), ctx.beta());
    let t = &a + &b;
    (a, b, t, ctx.k())
}

/// `(beta^2 - alpha^2) / ((2n+t)(2n+t+2))`, the recurrence centre.
fn jacobi_centre(ctx: &Ctx) -> Q {
    let (a, b, t, n) = jab(ctx);
    (&b * &b - &a * &a) / ((&n * int(2) + &t) * (&n * int(2) + &t + int(2)))
}

/// `beta - alpha - (alpha + beta) s`, i.e. `tau - sigma'`.
fn jacobi_gap(ctx: &Ctx) -> Poly {
    let (a, b, t, _) = jab(ctx);
    c(b - a) - v().scale(&t)
}

/// Square of the printed `psi_{n+1}` coefficient of NJ 2 and NJ 3.
fn jacobi_up(ctx: &Ctx) -> Q {
    let (a, b, t, n) = jab(ctx);
    let two_n = &n * int(2);
    int(4) * (&n + int(1)) * (&n + &a + int(1)) * (&n + &b + int(1)) * (&n + &t + int(1)) * (&two_n + &t + int(1))
        / ((&two_n + &t + int(2)) * (&two_n + &t + int(2)) * (&two_n + &t + int(3)))
}

/// Square of the `psi_{n-1}` coefficient with the given first denominator factor.
fn jacobi_down(ctx: &Ctx, outer: Q) -> Q {
    let (a, b, t, n) = jab(ctx);
    let two_n = &n * int(2);
    int(4) * &n * (&n + &a) * (&n + &b) * (&n + &t) * (&two_n + &t + int(1))
        / (&outer * &outer * (&two_n + &t - int(1)))
}

fn jacobi_nj1(ctx: &Ctx, tail: Poly) -> Result<Residual> {
    let (_, _, t, n) = jab(ctx);
    let gap = jacobi_gap(ctx);
    // -(1/4){gap^2/(1 - s^2) - tail} + n(n + t + 1)
    let braces = &RationalFn::new(&gap * &gap, bulge())? - &RationalFn::from(tail);
    let potential = &braces.scale(&r(-1, 4)) + &RationalFn::constant(&n * (&n + &t + int(1)));
    ortho_relation(
        ctx,
        vec![
            term(bulge(), Op::Deriv(2), 0),
            term(v().scale(&int(-2)), Op::Deriv(1), 0),
            term(potential, Op::Value, 0),
        ],
    )
}

fn jacobi_nj2(ctx: &Ctx, outer: Q) -> Result<Residual> {
    let (_, _, t, n) = jab(ctx);
    let centre = (c(jacobi_centre(ctx)) - v()).scale(&(&n * int(2) + &t + int(1)));
    ortho_relation(
        ctx,
        vec![
            rooted(root(1, jacobi_up(ctx)), 1),
            rooted(root(1, jacobi_down(ctx, outer)), -1),
            term(centre, Op::Value, 0),
        ],
    )
}

/// `(n+t+1)/(2n+t+2) * (beta - alpha - extra)`.
fn jacobi_shift(ctx: &Ctx, extra: Q) -> Q {
    let (a, b, t, n) = jab(ctx);
    (&n + &t + int(1)) / (&n * int(2) + &t + int(2)) * (b - a - extra)
}

fn jacobi_nj3(ctx: &Ctx, extra: Q) -> Result<Residual> {
    let (_, _, t, n) = jab(ctx);
    let multiplier = v().scale(&(&n + &t + int(1))) - c(jacobi_shift(ctx, extra)) + jacobi_gap(ctx).scale(&r(1, 2));
    ortho_relation(
        ctx,
        vec![
            term(multiplier, Op::Value, 0),
            term(-bulge(), Op::Deriv(1), 0),
            rooted(root(-1, jacobi_up(ctx)), 1),
        ],
    )
}

fn jacobi_nj4(ctx: &Ctx, extra: Q) -> Result<Residual> {
    let (_, _, t, n) = jab(ctx);
    let two_n = &n * int(2);
    let multiplier = v().scale(&-(&n + &t + int(1))) + c(jacobi_shift(ctx, extra))
        + (v() - c(jacobi_centre(ctx))).scale(&(&two_n + &t + int(1)))
        - jacobi_gap(ctx).scale(&r(1, 2));
    ortho_relation(
        ctx,
        vec![
            term(multiplier, Op::Value, 0),
            term(bulge(), Op::Deriv(1), 0),
            rooted(root(-1, jacobi_down(ctx, two_n + t)), -1),
        ],
    )
}

/// `J 4`: `lhs y_{n-1} = bracket * first + (1 - s^2) * second`.
fn jacobi_j4(ctx: &Ctx, first: On, second: On) -> Result<Residual> {
    let (a, b, t, n) = jab(ctx);
    let two_n = &n * int(2);
    let lhs = int(2) * (&n + &a) * (&n + &b) / (&two_n + &t);
    let bracket = c(jacobi_shift(ctx, Q::zero())) - v().scale(&(&n + &t + int(1)))
        + (v() - c(jacobi_centre(ctx))).scale(&(two_n + t + int(1)));
    poly_relation(ctx, vec![(c(lhs), On::Value, -1), (-bracket, first, 0), (-bulge(), second, 0)])
}

/// `(1 - s)^(a/2) (1 + s)^(b/2)`, in log form.
fn jacobi_ln_weight(a: f64, b: f64, s: f64) -> f64 {
    0.5 * a * (1.0 - s).ln() + 0.5 * b * (1.0 + s).ln()
}

fn jacobi_psi_n(ctx: &Ctx, gamma_form: bool) -> Result<Residual> {
    let (a, b, n) = (f(&ctx.alpha()), f(&ctx.beta()), ctx.n as f64);
    let t = a + b;
    let top = if gamma_form { ln_gamma(n + t + 1.0) } else { (n + t + 1.0).ln() };
    let ln_norm = 0.5
        * (ln_factorial(ctx.n) + (2.0 * n + t + 1.0).ln() + top
            - (t + 1.0) * std::f64::consts::LN_2
            - ln_gamma(n + a + 1.0)
            - ln_gamma(n + b + 1.0));
    closed_form(ctx, |s| Ok((ln_norm + jacobi_ln_weight(a, b, s)).exp() * ctx.y(s)?))
}

fn jacobi_psi_0(ctx: &Ctx, gamma_form: bool) -> Result<Residual> {
    let (a, b) = (f(&ctx.alpha()), f(&ctx.beta()));
    let t = a + b;
    let ln_den = 0.5 * ((t + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0));
    let ln_num = if gamma_form { 0.5 * ln_gamma(t + 2.0) } else { (t + 1.0).ln() };
    closed_form(ctx, |s| Ok((ln_num - ln_den + jacobi_ln_weight(a, b, s)).exp()))
}

fn jacobi() -> Vec<Fixture> {
    const J: &str = "jacobi";
    vec![
        Fixture::plain("J 1", J, SPAN0, |ctx| {
            let (a, b, t, n) = jab(ctx);
            poly_relation(
                ctx,
                vec![
                    (bulge(), On::Deriv(2), 0),
                    (c(b - a) - v().scale(&(&t + int(2))), On::Deriv(1), 0),
                    (c(&n * (&n + &t + int(1))), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("J 2", J, BOTH, |ctx| {
            let (a, b, t, n) = jab(ctx);
            let two_n = &n * int(2);
            let up = int(2) * (&n + int(1)) * (&n + &t + int(1)) / ((&two_n + &t + int(1)) * (&two_n + &t + int(2)));
            let down = int(2) * (&n + &a) * (&n + &b) / ((&two_n + &t) * (&two_n + &t + int(1)));
            poly_relation(
                ctx,
                vec![
                    (c(up), On::Value, 1),
                    (c(down), On::Value, -1),
                    (c(jacobi_centre(ctx)) - v(), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("J 3", J, UP, |ctx| {
            let (a, b, t, n) = jab(ctx);
            let lead = &n + &t + int(1);
            let up = int(2) * (&n + int(1)) * &lead / (&n * int(2) + &t + int(2));
            let shift = &lead / (&n * int(2) + &t + int(2)) * (a - b);
            poly_relation(
                ctx,
                vec![
                    (c(up), On::Value, 1),
                    (-(c(shift) + v().scale(&lead)), On::Value, 0),
                    (bulge(), On::Deriv(1), 0),
                ],
            )
        }),
        Fixture::plain("J 4", J, DOWN, |ctx| jacobi_j4(ctx, On::Deriv(1), On::Value)).fixed(
            Category::Additional,
            "the bracket multiplies P_n and (1 - s^2) multiplies P_n'",
            |ctx| jacobi_j4(ctx, On::Value, On::Deriv(1)),
        ),
        Fixture::plain("NJ 1", J, SPAN0, |ctx| {
            let t = jab(ctx).2;
            jacobi_nj1(ctx, v().scale(&(t * int(2))))
        })
        .fixed(
            Category::Additional,
            "the term next to the fraction is the constant 2(alpha + beta), not 2(alpha + beta) s",
            |ctx| {
                let t = jab(ctx).2;
                jacobi_nj1(ctx, c(t * int(2)))
            },
        ),
        Fixture::plain("NJ 2", J, BOTH, |ctx| {
            let (_, _, t, n) = jab(ctx);
            jacobi_nj2(ctx, n * int(2) + t + int(2))
        })
        .fixed(
            Category::Additional,
            "the psi_{n-1} coefficient has (2n + alpha + beta) in the denominator, as in NJ 4",
            |ctx| {
                let (_, _, t, n) = jab(ctx);
                jacobi_nj2(ctx, n * int(2) + t)
            },
        ),
        Fixture::plain("NJ 3", J, UP, |ctx| jacobi_nj3(ctx, ctx.k() * ctx.k())).fixed(
            Category::KnownDefective,
            "the bracket term is (beta - alpha), without -n^2",
            |ctx| jacobi_nj3(ctx, Q::zero()),
        ),
        Fixture::plain("NJ 4", J, DOWN, |ctx| jacobi_nj4(ctx, ctx.k() * ctx.k())).fixed(
            Category::Additional,
            "the bracket term is (beta - alpha), without -n^2 (the NJ 3 slip repeated)",
            |ctx| jacobi_nj4(ctx, Q::zero()),
        ),
        Fixture::plain("NJ psi_0", J, Degrees::Ground, |ctx| jacobi_psi_0(ctx, false)).fixed(
            Category::Additional,
            "the constant is sqrt(Gamma(alpha + beta + 2) / (2^(alpha+beta+1) Gamma(alpha+1) Gamma(beta+1)))",
            |ctx| jacobi_psi_0(ctx, true),
        ),
        Fixture::plain("NJ psi_n", J, SPAN0, |ctx| jacobi_psi_n(ctx, false)).fixed(
            Category::Additional,
            "the factor (n + alpha + beta + 1) under the root is Gamma(n + alpha + beta + 1)",
            |ctx| jacobi_psi_n(ctx, true),
        ),
        Fixture::plain("NJ product", J, SPAN0, |ctx| {
            let (a, b, t) = (ctx.alpha(), ctx.beta(), ctx.alpha() + ctx.beta());
            let mut square = Q::one();
            for k in 0..ctx.n {
                let k = int(k as i64);
                let two_k = &k * int(2);
                square *= (&two_k + &t + int(2)) * (&two_k + &t + int(2)) * (&two_k + &t + int(3))
                    / (int(4)
                        * (&k + int(1))
                        * (&k + &a + int(1))
                        * (&k + &b + int(1))
                        * (&k + &t + int(1))
                        * (&two_k + &t + int(1)));
            }
            chain(ctx, root(1, square))
        }),
        Fixture::plain("NJ L+L-", J, DOWN, |ctx| {
            let (a, b, t, n) = jab(ctx);
            let den = &n * int(2) + &t;
            let value = int(4) * &n * (&n + a) * (&n + b) * (&n + t) / (&den * &den);
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), value)
        }),
        Fixture::plain("NJ L-L+", J, SPAN0, |ctx| {
            let (a, b, t, n) = jab(ctx);
            let den = &n * int(2) + &t + int(2);
            let value = int(4) * (&n + int(1)) * (&n + a + int(1)) * (&n + b + int(1)) * (&n + t + int(1)) / (&den * &den);
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), value)
        }),
    ]
}

pub(super) fn fixtures() -> Vec<Fixture> {
    let mut out = hermite();
    out.extend(laguerre());
    out.extend(legendre());
    out.extend(jacobi());
    out
}
