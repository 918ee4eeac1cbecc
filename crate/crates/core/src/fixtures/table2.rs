//! Discrete families: the polynomial relations and the orthonormal functions
//! with their ladders, ground states, product formulas and the eigenvalues of
//! the ladder products.

use statrs::function::gamma::ln_gamma;

use super::*;

const SPAN0: Degrees = Degrees::Span(0, 0);
const UP: Degrees = Degrees::Span(0, 1);
const DOWN: Degrees = Degrees::Span(-1, 0);
const BOTH: Degrees = Degrees::Span(-1, 1);

fn kp(ctx: &Ctx, shift: i64) -> Q {
    ctx.k() + int(shift)
}

/// `x + shift`.
fn xp(shift: Q) -> Poly {
    v() + c(shift)
}

fn ratfn(p: Poly) -> RationalFn {
    RationalFn::from(p)
}

/// `ln x!` on the lattice, through the gamma function.
fn ln_fact(x: f64) -> f64 {
    ln_gamma(x + 1.0)
}

fn kravchuk_k2(ctx: &Ctx, scale: Q) -> Result<Residual> {
    let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
    let centre = c(&n + &p * (&big - &n * int(2))) - v();
    poly_relation(
        ctx,
        vec![
            (c(kp(ctx, 1) / &q), On::Value, 1),
            (c(&p * (&big - &n + int(1))), On::Value, -1),
            (centre.scale(&scale), On::Value, 0),
        ],
    )
}

fn kravchuk_k4(ctx: &Ctx, lhs: On) -> Result<Residual> {
    let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
    let ratio = &p / &q;
    poly_relation(
        ctx,
        vec![
            (c(&p * (&big - &n + int(1))), lhs, -1),
            (-(xp(&n - &big).scale(&ratio)), On::Value, 0),
            (-((c(big) - v()).scale(&ratio)), On::Shift(1), 0),
        ],
    )
}

/// `(p/q)(N - x)(x + 1)` and `(p/q)(N - x + 1) x`.
fn kravchuk_hops(ctx: &Ctx) -> (RationalFn, RationalFn) {
    let (p, q, big) = (ctx.p(), ctx.q(), ctx.big());
    let ratio = &p / &q;
    let up = ((c(big.clone()) - v()) * xp(int(1))).scale(&ratio);
    let down = ((c(big + int(1)) - v()) * v()).scale(&ratio);
    (ratfn(up), ratfn(down))
}

/// `(p/q)(N - n)(n + 1)` and `(p/q)(N - n + 1) n`.
fn kravchuk_constants(ctx: &Ctx) -> (Q, Q) {
    let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
    let ratio = &p / &q;
    let up = &ratio * (&big - &n) * (&n + int(1));
    let down = ratio * (&big - &n + int(1)) * &n;
    (up, down)
}

/// `p^x q^(N-x) / (x! (N-x)!)`, in log form.
fn kravchuk_ln_weight(ctx: &Ctx, x: f64) -> f64 {
    let (p, q, big) = (f(&ctx.p()), f(&ctx.q()), f(&ctx.big()));
    x * p.ln() + (big - x) * q.ln() - ln_fact(x) - ln_fact(big - x)
}

fn kravchuk() -> Vec<Fixture> {
    const K: &str = "kravchuk";
    vec![
        Fixture::plain("K 1", K, SPAN0, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
            let up = (c(big.clone()) - v()).scale(&(&p / &q));
            let diagonal = (v().scale(&(&p - &q)) - c(&big * &p)).scale(&(Q::one() / &q));
            poly_relation(
                ctx,
                vec![
                    (up, On::Shift(1), 0),
                    (v(), On::Shift(-1), 0),
                    (diagonal, On::Value, 0),
                    (c(n / q), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("K 2", K, BOTH, |ctx| kravchuk_k2(ctx, Q::one())).fixed(
            Category::Additional,
            "the bracket [n + p(N - 2n) - x] carries the factor 1/q",
            |ctx| kravchuk_k2(ctx, Q::one() / ctx.q()),
        ),
        Fixture::plain("K 3", K, UP, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
            poly_relation(
                ctx,
                vec![
                    (c(kp(ctx, 1) / &q), On::Value, 1),
                    (-(xp(n - big).scale(&(p / q))), On::Value, 0),
                    (-v(), On::Shift(-1), 0),
                ],
            )
        }),
        Fixture::plain("K 4", K, DOWN, |ctx| kravchuk_k4(ctx, On::Free)).fixed(
            Category::Documented,
            "the left side is p(N - n + 1) k_{n-1}(x)",
            |ctx| kravchuk_k4(ctx, On::Value),
        ),
        Fixture::plain("NK 1", K, SPAN0, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
            let (up, down) = kravchuk_hops(ctx);
            let diagonal = (v().scale(&(&p - &q)) - c(&big * &p) + c(n)).scale(&(Q::one() / q));
            ortho_relation(
                ctx,
                vec![Part::Radical(1, up, 1), Part::Radical(1, down, -1), term(diagonal, Op::Value, 0)],
            )
        }),
        Fixture::plain("NK 2", K, BOTH, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
            let (up, down) = kravchuk_constants(ctx);
            let centre = (c(&n + &p * (&big - &n * int(2))) - v()).scale(&(Q::one() / q));
            ortho_relation(
                ctx,
                vec![rooted(root(1, up), 1), rooted(root(1, down), -1), term(centre, Op::Value, 0)],
            )
        }),
        Fixture::plain("NK 3", K, UP, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
            let (_, down_hop) = kravchuk_hops(ctx);
            let (up, _) = kravchuk_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    term(xp(n - big).scale(&(p / q)), Op::Value, 0),
                    Part::Radical(1, down_hop, -1),
                    rooted(root(-1, up), 1),
                ],
            )
        }),
        Fixture::plain("NK 4", K, DOWN, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.k());
            let (up_hop, _) = kravchuk_hops(ctx);
            let (_, down) = kravchuk_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    term(xp(n - big).scale(&(p / q)), Op::Value, 0),
                    Part::Radical(1, up_hop, 1),
                    rooted(root(-1, down), -1),
                ],
            )
        }),
        Fixture::plain("NK psi_0", K, Degrees::Ground, |ctx| {
            let big = f(&ctx.big());
            closed_form(ctx, |x| Ok((0.5 * (ln_fact(big) + kravchuk_ln_weight(ctx, x))).exp()))
        }),
        Fixture::plain("NK psi_n", K, SPAN0, |ctx| {
            let (n, big, pq) = (ctx.n as f64, f(&ctx.big()), f(&(ctx.p() * ctx.q())));
            let ln_norm = 0.5 * (ln_fact(n) + ln_fact(big - n) - n * pq.ln());
            closed_form(ctx, |x| Ok((ln_norm + 0.5 * kravchuk_ln_weight(ctx, x)).exp() * ctx.y(x)?))
        }),
        Fixture::plain("NK product", K, SPAN0, |ctx| {
            let (p, q, big, n) = (ctx.p(), ctx.q(), ctx.big(), ctx.n);
            let fact = |m: &Q| crate::algebra::rational::factorial(m.to_integer().try_into().unwrap_or(0));
            let num = num_traits::pow(q, n) * fact(&(&big - int(n as i64)));
            let den = num_traits::pow(p, n) * fact(&big) * crate::algebra::rational::factorial(n);
            chain(ctx, root(1, num / den))
        }),
        Fixture::plain("NK L+L-", K, DOWN, |ctx| {
            let value = kravchuk_constants(ctx).1;
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), value)
        }),
        Fixture::plain("NK L-L+", K, SPAN0, |ctx| {
            let value = kravchuk_constants(ctx).0;
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), value)
        }),
    ]
}

/// `mu(x + n + gamma) + n - x`.
fn meixner_centre(ctx: &Ctx) -> Poly {
    let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
    xp(&n + g).scale(&mu) + c(n) - v()
}

fn meixner_m2(ctx: &Ctx, up_sign: i64, last: i32) -> Result<Residual> {
    let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
    poly_relation(
        ctx,
        vec![
            (c(mu * int(up_sign)), On::Value, 1),
            (c(-(&n * (&n + g - int(1)))), On::Value, last),
            (meixner_centre(ctx), On::Value, 0),
        ],
    )
}

/// `mu(x + gamma)(x + 1)` and `mu x (x + gamma - 1)`.
fn meixner_hops(ctx: &Ctx) -> (RationalFn, RationalFn) {
    let (mu, g) = (ctx.mu(), ctx.gamma());
    let up = (xp(g.clone()) * xp(int(1))).scale(&mu);
    let down = (v() * xp(g - int(1))).scale(&mu);
    (ratfn(up), ratfn(down))
}

/// `mu(n + gamma)(n + 1)` and `mu n (n + gamma - 1)`.
fn meixner_constants(ctx: &Ctx) -> (Q, Q) {
    let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
    (&mu * (&n + &g) * (&n + int(1)), mu * &n * (&n + g - int(1)))
}

/// `mu^x Gamma(x + gamma) / (Gamma(x + 1) Gamma(gamma))`, in log form.
fn meixner_ln_weight(ctx: &Ctx, x: f64) -> f64 {
    let (mu, g) = (f(&ctx.mu()), f(&ctx.gamma()));
    x * mu.ln() + ln_gamma(x + g) - ln_fact(x) - ln_gamma(g)
}

fn meixner() -> Vec<Fixture> {
    const M: &str = "meixner";
    vec![
        Fixture::plain("M 1", M, SPAN0, |ctx| {
            let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
            let up = xp(g).scale(&mu);
            poly_relation(
                ctx,
                vec![
                    (up.clone(), On::Shift(1), 0),
                    (v(), On::Shift(-1), 0),
                    (-(up + v()), On::Value, 0),
                    (c(n * (Q::one() - mu)), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("M 2", M, BOTH, |ctx| meixner_m2(ctx, 1, 1)).fixed(
            Category::Additional,
            "the first term is -mu m_{n+1} and the second multiplies m_{n-1}",
            |ctx| meixner_m2(ctx, -1, -1),
        ),
        Fixture::plain("M 3", M, UP, |ctx| {
            let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
            poly_relation(
                ctx,
                vec![
                    (c(-mu.clone()), On::Value, 1),
                    (xp(n + g).scale(&mu), On::Value, 0),
                    (-v(), On::Shift(-1), 0),
                ],
            )
        }),
        Fixture::plain("M 4", M, DOWN, |ctx| {
            let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
            poly_relation(
                ctx,
                vec![
                    (c(-(&n * (&n + &g - int(1)))), On::Value, -1),
                    (xp(&n + &g).scale(&mu), On::Value, 0),
                    (-(xp(g).scale(&mu)), On::Shift(1), 0),
                ],
            )
        }),
        Fixture::plain("NM 1", M, SPAN0, |ctx| {
            let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
            let (up, down) = meixner_hops(ctx);
            let diagonal = c(n * (Q::one() - &mu)) - xp(g).scale(&mu) - v();
            ortho_relation(
                ctx,
                vec![Part::Radical(1, up, 1), Part::Radical(1, down, -1), term(diagonal, Op::Value, 0)],
            )
        }),
        Fixture::plain("NM 2", M, BOTH, |ctx| {
            let (up, down) = meixner_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    rooted(root(-1, up), 1),
                    rooted(root(-1, down), -1),
                    term(meixner_centre(ctx), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("NM 3", M, UP, |ctx| {
            let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
            let (_, down_hop) = meixner_hops(ctx);
            let (up, _) = meixner_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    term(-(xp(n + g).scale(&mu)), Op::Value, 0),
                    Part::Radical(1, down_hop, -1),
                    rooted(root(1, up), 1),
                ],
            )
        }),
        Fixture::plain("NM 4", M, DOWN, |ctx| {
            let (mu, g, n) = (ctx.mu(), ctx.gamma(), ctx.k());
            let (up_hop, _) = meixner_hops(ctx);
            let (_, down) = meixner_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    term(-(xp(n + g).scale(&mu)), Op::Value, 0),
                    Part::Radical(1, up_hop, 1),
                    rooted(root(1, down), -1),
                ],
            )
        }),
        Fixture::plain("NM psi_0", M, Degrees::Ground, |ctx| {
            let (mu, g) = (f(&ctx.mu()), f(&ctx.gamma()));
            closed_form(ctx, |x| Ok((0.5 * (g * (1.0 - mu).ln() + meixner_ln_weight(ctx, x))).exp()))
        }),
        Fixture::plain("NM psi_n", M, SPAN0, |ctx| {
            let (mu, g, n) = (f(&ctx.mu()), f(&ctx.gamma()), ctx.n as f64);
            // (gamma)_n = Gamma(gamma + n) / Gamma(gamma)
            let ln_poch = ln_gamma(g + n) - ln_gamma(g);
            let ln_norm = 0.5 * (n * mu.ln() + g * (1.0 - mu).ln() - ln_fact(n) - ln_poch);
            closed_form(ctx, |x| Ok((ln_norm + 0.5 * meixner_ln_weight(ctx, x)).exp() * ctx.y(x)?))
        }),
        Fixture::plain("NM product", M, SPAN0, |ctx| {
            let n = ctx.n;
            let den = num_traits::pow(ctx.mu(), n)
                * crate::algebra::rational::pochhammer(&ctx.gamma(), n)
                * crate::algebra::rational::factorial(n);
            chain(ctx, root(if n % 2 == 1 { -1 } else { 1 }, Q::one() / den))
        }),
        Fixture::plain("NM L+L-", M, DOWN, |ctx| {
            let value = meixner_constants(ctx).1;
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), value)
        }),
        Fixture::plain("NM L-L+", M, SPAN0, |ctx| {
            let value = meixner_constants(ctx).0;
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), value)
        }),
    ]
}

fn charlier() -> Vec<Fixture> {
    const C: &str = "charlier";
    vec![
        Fixture::plain("C 1", C, SPAN0, |ctx| {
            let (mu, n) = (ctx.mu(), ctx.k());
            poly_relation(
                ctx,
                vec![
                    (c(mu.clone()), On::Shift(1), 0),
                    (v(), On::Shift(-1), 0),
                    (-xp(mu), On::Value, 0),
                    (c(n), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("C 2", C, BOTH, |ctx| {
            let (mu, n) = (ctx.mu(), ctx.k());
            poly_relation(
                ctx,
                vec![
                    (c(-mu.clone()), On::Value, 1),
                    (c(-n.clone()), On::Value, -1),
                    (c(n + mu) - v(), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("C 3", C, UP, |ctx| {
            let mu = ctx.mu();
            poly_relation(
                ctx,
                vec![(c(-mu.clone()), On::Value, 1), (c(mu), On::Value, 0), (-v(), On::Shift(-1), 0)],
            )
        }),
        Fixture::plain("C 4", C, DOWN, |ctx| {
            let mu = ctx.mu();
            poly_relation(
                ctx,
                vec![(c(-ctx.k()), On::Value, -1), (c(mu.clone()), On::Value, 0), (c(-mu), On::Shift(1), 0)],
            )
        }),
        Fixture::plain("NC 1", C, SPAN0, |ctx| {
            let (mu, n) = (ctx.mu(), ctx.k());
            ortho_relation(
                ctx,
                vec![
                    Part::Radical(1, ratfn(xp(int(1)).scale(&mu)), 1),
                    Part::Radical(1, ratfn(v().scale(&mu)), -1),
                    term(c(n) - xp(mu), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("NC 2", C, BOTH, |ctx| {
            let (mu, n) = (ctx.mu(), ctx.k());
            ortho_relation(
                ctx,
                vec![
                    rooted(root(-1, &mu * (&n + int(1))), 1),
                    rooted(root(-1, &mu * &n), -1),
                    term(c(n + mu) - v(), Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("NC 3", C, UP, |ctx| {
            let (mu, n) = (ctx.mu(), ctx.k());
            ortho_relation(
                ctx,
                vec![
                    term(c(-mu.clone()), Op::Value, 0),
                    Part::Radical(1, ratfn(v().scale(&mu)), -1),
                    rooted(root(1, mu * (n + int(1))), 1),
                ],
            )
        }),
        Fixture::plain("NC 4", C, DOWN, |ctx| {
            let (mu, n) = (ctx.mu(), ctx.k());
            ortho_relation(
                ctx,
                vec![
                    term(c(-mu.clone()), Op::Value, 0),
                    Part::Radical(1, ratfn(xp(int(1)).scale(&mu)), 1),
                    rooted(root(1, mu * n), -1),
                ],
            )
        }),
        Fixture::plain("NC psi_0", C, Degrees::Ground, |ctx| {
            let mu = f(&ctx.mu());
            closed_form(ctx, |x| Ok((0.5 * (-mu + x * mu.ln() - ln_fact(x))).exp()))
        }),
        Fixture::plain("NC psi_n", C, SPAN0, |ctx| {
            let (mu, n) = (f(&ctx.mu()), ctx.n as f64);
            let ln_norm = 0.5 * (n * mu.ln() - ln_fact(n));
            closed_form(ctx, |x| Ok((ln_norm + 0.5 * (-mu + x * mu.ln() - ln_fact(x))).exp() * ctx.y(x)?))
        }),
        Fixture::plain("NC product", C, SPAN0, |ctx| {
            let n = ctx.n;
            let den = num_traits::pow(ctx.mu(), n) * crate::algebra::rational::factorial(n);
            chain(ctx, root(if n % 2 == 1 { -1 } else { 1 }, Q::one() / den))
        }),
        Fixture::plain("NC L+L-", C, DOWN, |ctx| {
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), ctx.mu() * ctx.k())
        }),
        Fixture::plain("NC L-L+", C, SPAN0, |ctx| {
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), ctx.mu() * kp(ctx, 1))
        }),
    ]
}

/// `(x + 1)(N - x - 1)`, the upward edge weight of the Chebyshev lattice.
fn cheb_up(ctx: &Ctx) -> Poly {
    xp(int(1)) * (c(ctx.big() - int(1)) - v())
}

/// `x (N - x)`.
fn cheb_down(ctx: &Ctx) -> Poly {
    v() * (c(ctx.big()) - v())
}

/// `(1/2)(n + 1)(N - 2x - n - 1)`.
fn cheb_raise_part(ctx: &Ctx) -> Poly {
    let (big, n) = (ctx.big(), ctx.k());
    (c(&big - &n - int(1)) - v().scale(&int(2))).scale(&((n + int(1)) / int(2)))
}

/// The T 4 / NT 4 bracket.
fn cheb_lower_bracket(ctx: &Ctx) -> Poly {
    let (big, n) = (ctx.big(), ctx.k());
    let centred = (v() - c((big - int(1)) / int(2))).scale(&(&n * int(2) + int(1)));
    cheb_raise_part(ctx) + c(&n * (&n + int(1))) + centred - cheb_up(ctx)
}

/// `(n+1)^2/4 (2n+1)(N^2 - (n+1)^2)/(2n+3)` and `n^2/4 (2n+1)(N^2 - n^2)/(2n-1)`.
fn cheb_constants(ctx: &Ctx) -> (Q, Q) {
    let (big, n) = (ctx.big(), ctx.k());
    let sq = |v: &Q| v * v;
    let odd = &n * int(2) + int(1);
    let up = sq(&(kp(ctx, 1))) / int(4) * &odd * (sq(&big) - sq(&kp(ctx, 1))) / (&n * int(2) + int(3));
    let down = sq(&n) / int(4) * &odd * (sq(&big) - sq(&n)) / (&n * int(2) - int(1));
    (up, down)
}

fn cheb_nt1(ctx: &Ctx, printed: bool) -> Result<Residual> {
    let n = ctx.k();
    let diagonal = c(&n * (&n + int(1))) - cheb_up(ctx) - cheb_down(ctx);
    let mut parts = vec![
        Part::Shifted(ratfn(cheb_down(ctx)), -1),
        term(diagonal, Op::Value, 0),
    ];
    if printed {
        // "(x+1)(N-x-1) + psi_n(x+1)"
        parts.push(Part::Free(cheb_up(ctx)));
        parts.push(Part::Shifted(ratfn(Poly::one()), 1));
    } else {
        parts.push(Part::Shifted(ratfn(cheb_up(ctx)), 1));
    }
    ortho_relation(ctx, parts)
}

fn cheb_psi_n(ctx: &Ctx, factorial: bool) -> Result<Residual> {
    let (big, n) = (f(&ctx.big()), ctx.n as f64);
    let tail = if factorial { ln_fact(big - n - 1.0) } else { (big - n - 1.0).ln() };
    let ln_norm = 0.5 * ((2.0 * n + 1.0).ln() + tail - ln_fact(big + n));
    closed_form(ctx, |x| Ok(ln_norm.exp() * ctx.y(x)?))
}

fn chebyshev() -> Vec<Fixture> {
    const T: &str = "chebyshev_discrete";
    vec![
        // the operator repeated across the line break is read as a single minus
        Fixture::plain("T 1", T, SPAN0, |ctx| {
            let n = ctx.k();
            poly_relation(
                ctx,
                vec![
                    (cheb_up(ctx), On::Shift(1), 0),
                    (cheb_down(ctx), On::Shift(-1), 0),
                    (-(cheb_up(ctx) + cheb_down(ctx)), On::Value, 0),
                    (c(&n * (&n + int(1))), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("T 2", T, BOTH, |ctx| {
            let (big, n) = (ctx.big(), ctx.k());
            let centre = (c(&big - int(1)) - v().scale(&int(2))).scale(&((&n * int(2) + int(1)) / int(2)));
            poly_relation(
                ctx,
                vec![
                    (c(kp(ctx, 1) / int(2)), On::Value, 1),
                    (c(&n * (&big * &big - &n * &n) / int(2)), On::Value, -1),
                    (centre, On::Value, 0),
                ],
            )
        }),
        Fixture::plain("T 3", T, UP, |ctx| {
            poly_relation(
                ctx,
                vec![
                    (c(kp(ctx, 1) / int(2)), On::Value, 1),
                    (cheb_raise_part(ctx) + cheb_down(ctx), On::Value, 0),
                    (-cheb_down(ctx), On::Shift(-1), 0),
                ],
            )
        }),
        Fixture::plain("T 4", T, DOWN, |ctx| {
            let (big, n) = (ctx.big(), ctx.k());
            poly_relation(
                ctx,
                vec![
                    (c(&n * (&big * &big - &n * &n) / int(2)), On::Value, -1),
                    (-cheb_lower_bracket(ctx), On::Value, 0),
                    (-cheb_up(ctx), On::Shift(1), 0),
                ],
            )
        }),
        Fixture::plain("NT 1", T, SPAN0, |ctx| cheb_nt1(ctx, true)).fixed(
            Category::Documented,
            "the stray '+' after (x+1)(N-x-1): the product multiplies psi_n(x+1)",
            |ctx| cheb_nt1(ctx, false),
        ),
        Fixture::plain("NT 2", T, BOTH, |ctx| {
            let (big, n) = (ctx.big(), ctx.k());
            let (up, down) = cheb_constants(ctx);
            let centre = (c((big - int(1)) / int(2)) - v()).scale(&(n * int(2) + int(1)));
            ortho_relation(
                ctx,
                vec![rooted(root(1, up), 1), rooted(root(1, down), -1), term(centre, Op::Value, 0)],
            )
        }),
        Fixture::plain("NT 3", T, UP, |ctx| {
            let (up, _) = cheb_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    term(-(cheb_raise_part(ctx) + cheb_down(ctx)), Op::Value, 0),
                    Part::Shifted(ratfn(cheb_down(ctx)), -1),
                    rooted(root(-1, up), 1),
                ],
            )
        }),
        Fixture::plain("NT 4", T, DOWN, |ctx| {
            let (_, down) = cheb_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    term(cheb_lower_bracket(ctx), Op::Value, 0),
                    Part::Shifted(ratfn(cheb_up(ctx)), 1),
                    rooted(root(-1, down), -1),
                ],
            )
        }),
        Fixture::plain("NT psi_0", T, Degrees::Ground, |ctx| {
            let big = f(&ctx.big());
            closed_form(ctx, |_| Ok(1.0 / big.sqrt()))
        }),
        Fixture::plain("NT psi_n", T, SPAN0, |ctx| cheb_psi_n(ctx, false)).fixed(
            Category::Documented,
            "the factor (N - n - 1) under the root is (N - n - 1)!",
            |ctx| cheb_psi_n(ctx, true),
        ),
        Fixture::plain("NT product", T, SPAN0, |ctx| {
            let big = ctx.big();
            let mut square = Q::one();
            for k in 0..ctx.n {
                let k = int(k as i64);
                square *= int(4) / ((&k + int(1)) * (&k + int(1))) * (&k * int(2) + int(3))
                    / ((&k * int(2) + int(1)) * (&big * &big - &k * &k - &k * int(2) - int(1)));
            }
            chain(ctx, root(1, square))
        }),
        Fixture::plain("NT L+L-", T, DOWN, |ctx| {
            let (big, n) = (ctx.big(), ctx.k());
            let value = &n * &n / int(4) * (&big + &n) * (&big - &n);
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), value)
        }),
        Fixture::plain("NT L-L+", T, SPAN0, |ctx| {
            let (big, m) = (ctx.big(), kp(ctx, 1));
            let value = &m * &m / int(4) * (&big + &m) * (&big - &m);
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), value)
        }),
    ]
}

/// Hahn shorthand: `(alpha, beta, alpha + beta, N, n)`.
fn hab(ctx: &Ctx) -> (Q, Q, Q, Q, Q) {
    let (a, b) = (ctx.alpha(), ctx.beta());
    let t = &a + &b;
    (a, b, t, ctx.big(), ctx.k())
}

/// `x(N - x - beta - 2) + (beta + 1)(N - 1)`, i.e. `(N - x - 1)(x + beta + 1)`.
fn hahn_up(ctx: &Ctx) -> Poly {
    let (_, b, _, big, _) = hab(ctx);
    v() * (c(&big - &b - int(2)) - v()) + c((b + int(1)) * (big - int(1)))
}

/// `x (N + alpha - x)`.
fn hahn_down(ctx: &Ctx) -> Poly {
    let (a, _, _, big, _) = hab(ctx);
    v() * (c(big + a) - v())
}

/// `(beta^2 - alpha^2)(2N + alpha + beta) / (4(2n + t)(2n + t + 2))`.
fn hahn_skew(ctx: &Ctx) -> Q {
    let (a, b, t, big, n) = hab(ctx);
    (&b * &b - &a * &a) * (&big * int(2) + &t) / (int(4) * (&n * int(2) + &t) * (&n * int(2) + &t + int(2)))
}

/// `(n+t+1)/(2n+t+2) {(beta+1)(N-1) - (t+2+2n) x + (N-n-beta-2) n}`.
fn hahn_raise_part(ctx: &Ctx) -> Poly {
    let (_, b, t, big, n) = hab(ctx);
    let inner = c((&b + int(1)) * (&big - int(1)) + (&big - &n - &b - int(2)) * &n) - v().scale(&(&t + int(2) + &n * int(2)));
    inner.scale(&((&n + &t + int(1)) / (&n * int(2) + &t + int(2))))
}

/// `(2n+t+1) (x - (2N + alpha - beta - 2)/4 - skew)`.
fn hahn_centred(ctx: &Ctx) -> Poly {
    let (a, b, t, big, n) = hab(ctx);
    let centre = (&big * int(2) + &a - &b - int(2)) / int(4) + hahn_skew(ctx);
    (v() - c(centre)).scale(&(n * int(2) + t + int(1)))
}

fn hahn_lower_bracket(ctx: &Ctx, last: Poly) -> Poly {
    let (_, _, t, _, n) = hab(ctx);
    hahn_raise_part(ctx) + c(&n * (&n + &t + int(1))) + hahn_centred(ctx) + last
}

fn hahn_ha4(ctx: &Ctx, last: Poly) -> Result<Residual> {
    let (a, b, t, big, n) = hab(ctx);
    let lhs = (&n + &a) * (&n + &b) * (&big + &n + &t) * (&big - &n) / (&n * int(2) + &t);
    poly_relation(
        ctx,
        vec![
            (c(lhs), On::Value, -1),
            (-hahn_up(ctx), On::Shift(1), 0),
            (-hahn_lower_bracket(ctx, last), On::Value, 0),
        ],
    )
}

/// Squares of the NHa 2 coefficients of `psi_{n+1}` and `psi_{n-1}`.
fn hahn_constants(ctx: &Ctx) -> (Q, Q) {
    let (a, b, t, big, n) = hab(ctx);
    let two_n = &n * int(2);
    let up = (&n + int(1)) * (&n + &a + int(1)) * (&n + &b + int(1)) * (&n + &t + int(1)) * (&two_n + &t + int(1))
        / ((&two_n + &t + int(2)) * (&two_n + &t + int(2)))
        * (&big + &n + &t + int(1))
        * (&big - &n - int(1))
        / (&two_n + &t + int(3));
    let down = &n * (&n + &a) * (&n + &b) * (&n + &t) * (&two_n + &t + int(1)) * (&big + &n + &t) * (&big - &n)
        / ((&two_n + &t) * (&two_n + &t) * (&two_n + &t - int(1)));
    (up, down)
}

/// `Gamma(N + alpha - x) Gamma(x + beta + 1) / (Gamma(N - x) Gamma(x + 1))`, in log form.
fn hahn_ln_weight(ctx: &Ctx, x: f64) -> f64 {
    let (a, b, big) = (f(&ctx.alpha()), f(&ctx.beta()), f(&ctx.big()));
    ln_gamma(big + a - x) + ln_gamma(x + b + 1.0) - ln_gamma(big - x) - ln_gamma(x + 1.0)
}

fn hahn_ln_norm(ctx: &Ctx, n: f64) -> f64 {
    let (a, b, big) = (f(&ctx.alpha()), f(&ctx.beta()), f(&ctx.big()));
    let t = a + b;
    0.5 * ((2.0 * n + t + 1.0).ln() + ln_fact(n) + ln_fact(big - n - 1.0) + ln_gamma(n + t + 1.0)
        - ln_gamma(n + a + 1.0)
        - ln_gamma(n + b + 1.0)
        - ln_gamma(big + n + t + 1.0))
}

fn hahn() -> Vec<Fixture> {
    const HA: &str = "hahn";
    vec![
        Fixture::plain("Ha 1", HA, SPAN0, |ctx| {
            let (a, b, t, big, n) = hab(ctx);
            let diagonal = v() * (c(&big * int(2) + &a - &b - int(2)) - v().scale(&int(2))) + c((b + int(1)) * (big - int(1)));
            poly_relation(
                ctx,
                vec![
                    (hahn_up(ctx), On::Shift(1), 0),
                    (hahn_down(ctx), On::Shift(-1), 0),
                    (-diagonal, On::Value, 0),
                    (c(&n * (&n + t + int(1))), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("Ha 2", HA, BOTH, |ctx| {
            let (a, b, t, big, n) = hab(ctx);
            let up = (&n + int(1)) * (&n + &t + int(1)) / (&n * int(2) + &t + int(2));
            let down = (&n + &a) * (&n + &b) * (&big + &n + &t) * (&big - &n) / (&n * int(2) + &t);
            let centre = (big * int(2) + a - b - int(2)) / int(4) + hahn_skew(ctx);
            let diagonal = (c(centre) - v()).scale(&(n * int(2) + t + int(1)));
            poly_relation(ctx, vec![(c(up), On::Value, 1), (c(down), On::Value, -1), (diagonal, On::Value, 0)])
        }),
        Fixture::plain("Ha 3", HA, UP, |ctx| {
            let (_, _, t, _, n) = hab(ctx);
            let up = (&n + int(1)) * (&n + &t + int(1)) / (n * int(2) + t + int(2));
            poly_relation(
                ctx,
                vec![
                    (c(up), On::Value, 1),
                    (-hahn_down(ctx), On::Shift(-1), 0),
                    (hahn_raise_part(ctx) + hahn_down(ctx), On::Value, 0),
                ],
            )
        }),
        Fixture::plain("Ha 4", HA, DOWN, |ctx| {
            let (_, b, _, big, _) = hab(ctx);
            // "- x(N - x - beta - 2) + (beta + 1)(N - 1)"
            let last = -(v() * (c(&big - &b - int(2)) - v())) + c((b + int(1)) * (big - int(1)));
            hahn_ha4(ctx, last)
        })
        .fixed(
            Category::Additional,
            "the last term is -[x(N - x - beta - 2) + (beta + 1)(N - 1)], as in Ha 1 and NHa 4",
            |ctx| hahn_ha4(ctx, -hahn_up(ctx)),
        ),
        // "{ N - x - 1)(x + beta + 1)" is read with the opening parenthesis restored
        Fixture::plain("NHa 1", HA, SPAN0, |ctx| {
            let (a, b, t, big, n) = hab(ctx);
            let up = c(&big - int(1)) - v();
            let radicand_up = up.clone() * xp(&b + int(1)) * (c(&big + &a - int(1)) - v()) * xp(int(1));
            let radicand_down = (c(big.clone()) - v()) * xp(b) * (c(big + a) - v()) * v();
            let diagonal = c(&n * (&n + t + int(1))) - hahn_up(ctx) - hahn_down(ctx);
            ortho_relation(
                ctx,
                vec![
                    Part::Radical(1, ratfn(radicand_up), 1),
                    Part::Radical(1, ratfn(radicand_down), -1),
                    term(diagonal, Op::Value, 0),
                ],
            )
        }),
        Fixture::plain("NHa 2", HA, BOTH, |ctx| {
            let (a, b, t, big, n) = hab(ctx);
            let (up, down) = hahn_constants(ctx);
            let centre = (big * int(2) + a - b - int(2)) / int(4) + hahn_skew(ctx);
            let diagonal = (c(centre) - v()).scale(&(n * int(2) + t + int(1)));
            ortho_relation(
                ctx,
                vec![rooted(root(1, up), 1), rooted(root(1, down), -1), term(diagonal, Op::Value, 0)],
            )
        }),
        Fixture::plain("NHa 3", HA, UP, |ctx| {
            let (a, b, _, big, _) = hab(ctx);
            let radicand = v() * (c(&big + a) - v()) * xp(b) * (c(big) - v());
            let (up, _) = hahn_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    Part::Radical(1, ratfn(radicand), -1),
                    term(-(hahn_raise_part(ctx) + hahn_down(ctx)), Op::Value, 0),
                    rooted(root(-1, up), 1),
                ],
            )
        }),
        Fixture::plain("NHa 4", HA, DOWN, |ctx| {
            let (a, b, _, big, _) = hab(ctx);
            let radicand = xp(int(1)) * (c(&big + a - int(1)) - v()) * xp(b + int(1)) * (c(big - int(1)) - v());
            let (_, down) = hahn_constants(ctx);
            ortho_relation(
                ctx,
                vec![
                    Part::Radical(1, ratfn(radicand), 1),
                    term(hahn_lower_bracket(ctx, -hahn_up(ctx)), Op::Value, 0),
                    rooted(root(-1, down), -1),
                ],
            )
        }),
        Fixture::plain("NHa psi_0", HA, Degrees::Ground, |ctx| {
            let (a, b, big) = (f(&ctx.alpha()), f(&ctx.beta()), f(&ctx.big()));
            let t = a + b;
            let ln_norm = 0.5
                * ((t + 1.0).ln() + ln_fact(big - 1.0) + ln_gamma(t + 1.0)
                    - ln_gamma(a + 1.0)
                    - ln_gamma(b + 1.0)
                    - ln_gamma(big + t + 1.0));
            closed_form(ctx, |x| Ok((ln_norm + 0.5 * hahn_ln_weight(ctx, x)).exp()))
        }),
        Fixture::plain("NHa psi_n", HA, SPAN0, |ctx| {
            let ln_norm = hahn_ln_norm(ctx, ctx.n as f64);
            closed_form(ctx, |x| Ok((ln_norm + 0.5 * hahn_ln_weight(ctx, x)).exp() * ctx.y(x)?))
        }),
        Fixture::plain("NHa product", HA, SPAN0, |ctx| {
            let (a, b, t, big, _) = hab(ctx);
            let mut square = Q::one();
            for k in 0..ctx.n {
                let k = int(k as i64);
                let two_k = &k * int(2);
                square *= (&two_k + &t + int(2)) * (&two_k + &t + int(2))
                    / ((&k + int(1)) * (&k + &a + int(1)) * (&k + &b + int(1)) * (&k + &t + int(1)))
                    * (&two_k + &t + int(3))
                    / ((&two_k + &t + int(1)) * (&big + &k + &t + int(1)) * (&big - &k - int(1)));
            }
            chain(ctx, root(1, square))
        }),
        Fixture::plain("NHa L+L-", HA, DOWN, |ctx| {
            let (a, b, t, big, n) = hab(ctx);
            let den = &n * int(2) + &t;
            let value = &n * (&n + a) * (&n + b) * (&n + &t) * (&big + &n + &t) * (&big - &n) / (&den * &den);
            eigen(ctx, (Ladder::Up, -1), (Ladder::Down, 0), value)
        }),
        Fixture::plain("NHa L-L+", HA, SPAN0, |ctx| {
            let (a, b, t, big, n) = hab(ctx);
            let den = &n * int(2) + &t + int(2);
            let value = (&n + int(1)) * (&n + a + int(1)) * (&n + b + int(1)) / (&den * &den)
                * (&n + &t + int(1))
                * (&big + &n + &t + int(1))
                * (&big - &n - int(1));
            eigen(ctx, (Ladder::Down, 1), (Ladder::Up, 0), value)
        }),
    ]
}

pub(super) fn fixtures() -> Vec<Fixture> {
    let mut out = kravchuk();
    out.extend(meixner());
    out.extend(charlier());
    out.extend(chebyshev());
    out.extend(hahn());
    out
}
