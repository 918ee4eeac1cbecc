use hyperladder::algebra::{int, rat, Poly};
use hyperladder::factorization::{mu_bracket, mu_closed_form, shift_identity_residual};
use hyperladder::families::{Family, FamilySpec, Kind};
use hyperladder::ladder_poly::{build_family_polys, lower_poly, raise_poly, verify_ode, verify_recurrence};
use hyperladder::orthonormal::{inner_product, reduce_to_poly_layer, Basis, OrthoIdentity};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const DEGREES: usize = 6;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..=max_degree + 1).prop_map(Poly::new)
}

/// Strictly above -1.
fn above_minus_one() -> impl Strategy<Value = BigRational> {
    (1i64..=24, 1i64..=6).prop_map(|(k, q)| rat(k, q) - int(1))
}

fn unit_interval() -> impl Strategy<Value = BigRational> {
    (2i64..=9).prop_flat_map(|q| (1..q).prop_map(move |k| rat(k, q)))
}

fn positive() -> impl Strategy<Value = BigRational> {
    (1i64..=20, 1i64..=5).prop_map(|(k, q)| rat(k, q))
}

fn family() -> impl Strategy<Value = FamilySpec> {
    let size = 2usize..=9;
    prop_oneof![
        Just(Family::Hermite),
        Just(Family::Legendre),
        above_minus_one().prop_map(|alpha| Family::Laguerre { alpha }),
        (above_minus_one(), above_minus_one()).prop_map(|(alpha, beta)| Family::Jacobi { alpha, beta }),
        (unit_interval(), size.clone()).prop_map(|(p, size)| Family::Kravchuk { p, size }),
        (positive(), unit_interval()).prop_map(|(gamma, mu)| Family::Meixner { gamma, mu }),
        positive().prop_map(|mu| Family::Charlier { mu }),
        size.clone().prop_map(|size| Family::Chebyshev { size }),
        (above_minus_one(), above_minus_one(), size).prop_map(|(alpha, beta, size)| Family::Hahn { alpha, beta, size }),
    ]
    .prop_filter_map("alpha + beta = -1", |family| FamilySpec::new(family).ok())
}

/// Highest degree the properties exercise: `DEGREES`, or the top of a finite lattice.
fn top(family: &FamilySpec) -> usize {
    family.max_degree().map_or(DEGREES, |m| m.min(DEGREES))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differences_commute(p in poly(8)) {
        prop_assert_eq!(p.fwd_diff().bwd_diff(), p.bwd_diff().fwd_diff());
        prop_assert_eq!(p.fwd_diff(), p.bwd_diff().shift_by(1));
    }

    #[test]
    fn product_rule(p in poly(8), q in poly(8)) {
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_moves_the_evaluation_point(p in poly(8), k in small_rational(), t in small_rational()) {
        prop_assert_eq!(p.shift(&k).eval(&t), p.eval(&(&t + &k)));
    }

    #[test]
    fn division_reconstructs(a in poly(8), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn eigenvalue_is_degree_times_slope(family in family()) {
        for n in 1..=2 * DEGREES + 1 {
            prop_assert_eq!(family.lambda(n), int(n as i64) * family.lambda_slope(n));
        }
        for n in 0..=DEGREES {
            let odd = 2 * n + 1;
            prop_assert_eq!(family.tau_n(n).coeff(1), -family.lambda(odd) / int(odd as i64));
        }
    }

    #[test]
    fn norm_ratio_matches_recurrence(family in family()) {
        for n in 0..top(&family) {
            let rec = family.recurrence(n).unwrap();
            let next = family.recurrence_extended(n + 1).unwrap();
            prop_assert_eq!(family.norm_ratio(n).unwrap(), next.gamma / rec.alpha, "{} n={}", family, n);
        }
    }

    #[test]
    fn pearson_equation_on_the_lattice(family in family()) {
        prop_assume!(family.kind == Kind::Discrete);
        let last = family.lattice_size().map_or(8, |size| size as i64 - 1);
        for x in 0..last {
            let here = family.relative_weight(x).unwrap();
            let next = family.relative_weight(x + 1).unwrap();
            let left = (family.sigma.eval(&int(x)) + family.tau.eval(&int(x))) * here;
            let right = family.sigma.eval(&int(x + 1)) * next;
            prop_assert_eq!(left, right, "{} x={}", family, x);
        }
    }

    #[test]
    fn polynomial_layer_is_exact(family in family()) {
        let top = top(&family);
        let seq = build_family_polys(&family, top).unwrap();
        for n in 0..=top {
            let y = seq.get(n).unwrap();
            prop_assert!(verify_ode(&family, n, y).is_zero(), "{} n={}", family, n);
            if n < top {
                prop_assert!(verify_recurrence(&family, n, &seq).unwrap().is_zero(), "{} n={}", family, n);
                let raised = raise_poly(&family, n, y).unwrap();
                prop_assert_eq!(&lower_poly(&family, n + 1, &raised).unwrap(), y);
                let alpha = family.recurrence(n).unwrap().alpha;
                prop_assert_eq!(raised.leading() / y.leading(), BigRational::one() / alpha);
            }
        }
    }

    #[test]
    fn orthonormal_identities_reduce_to_zero(family in family()) {
        let top = top(&family).min(4);
        let basis = Basis::new(&family, top).unwrap();
        for identity in OrthoIdentity::ALL {
            let last = match identity {
                OrthoIdentity::Equation | OrthoIdentity::Lower => top,
                _ => top.saturating_sub(1),
            };
            for n in 0..=last {
                let reduced = reduce_to_poly_layer(&basis, identity, n).unwrap();
                prop_assert!(reduced.is_zero(), "{} {} n={}", family, identity.tag(family.kind), n);
            }
        }
    }

    #[test]
    fn exact_orthonormality(family in family()) {
        prop_assume!(family.kind == Kind::Continuous || family.lattice_size().is_some());
        let top = top(&family).min(4);
        for m in 0..=top {
            for n in m..=top {
                let expected = if m == n { BigRational::one() } else { BigRational::zero() };
                let product = inner_product(&family, m, n).unwrap();
                prop_assert_eq!(product.is_exactly(&expected), Some(true), "{} <{}, {}>", family, m, n);
            }
        }
    }

    #[test]
    fn brackets_are_constant_and_agree(family in family()) {
        for n in 0..top(&family) {
            prop_assert!(shift_identity_residual(&family, n).unwrap().is_zero(), "{} n={}", family, n);
            let constants = mu_bracket(&family, n).unwrap();
            prop_assert_eq!(&constants.mu, &constants.nu);
            prop_assert_eq!(constants.mu, mu_closed_form(&family, n).unwrap());
        }
    }
}
