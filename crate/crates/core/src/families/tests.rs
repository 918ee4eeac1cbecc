use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::algebra::rational::{int, rat, to_f64};
use crate::algebra::Poly;

fn spec(name: &str) -> FamilySpec {
    FamilySpec::desk(name).unwrap()
}

fn charlier(mu: BigRational) -> FamilySpec {
    FamilySpec::new(Family::Charlier { mu }).unwrap()
}

#[test]
fn equation_coefficients() {
    let hermite = spec("hermite");
    assert_eq!(hermite.sigma, Poly::one());
    assert_eq!(hermite.tau, Poly::from_ints(&[0, -2]));
    let c = charlier(rat(3, 5));
    assert_eq!(c.sigma, Poly::var());
    assert_eq!(c.tau, Poly::linear(int(-1), rat(3, 5)));
}

#[test]
fn empty_lattice_is_rejected() {
    let err = FamilySpec::new(Family::Kravchuk { p: rat(1, 2), size: 0 }).unwrap_err();
    assert!(matches!(err, Error::Parameter { name: "N", .. }));
}

#[test]
fn domain_violations_name_the_bound() {
    let cases = [
        Family::Laguerre { alpha: int(-1) },
        Family::Jacobi { alpha: rat(-1, 2), beta: rat(-1, 2) },
        Family::Kravchuk { p: int(1), size: 4 },
        Family::Meixner { gamma: int(2), mu: int(2) },
        Family::Meixner { gamma: int(0), mu: rat(1, 2) },
        Family::Charlier { mu: int(0) },
        Family::Hahn { alpha: int(-2), beta: int(0), size: 4 },
    ];
    for family in cases {
        assert!(matches!(FamilySpec::new(family.clone()), Err(Error::Parameter { .. })), "{family}");
    }
}

#[test]
fn names_and_params() {
    assert_eq!(canonical_name("Chebyshev"), Some("chebyshev_discrete"));
    assert_eq!(canonical_name("nope"), None);
    let missing = Family::from_params("laguerre", &Params::default()).unwrap_err();
    assert!(matches!(missing, Error::Parameter { name: "alpha", .. }));
    assert_eq!(spec("hahn").to_string(), "hahn(N=8, alpha=1, beta=2)");
    assert_eq!(spec("chebyshev").name(), "chebyshev_discrete");
}

#[test]
fn eigenvalues() {
    assert_eq!(spec("hermite").lambda(3), int(6));
    let jacobi = spec("jacobi");
    // n (n + alpha + beta + 1) at alpha = beta = 1/2
    assert_eq!(jacobi.lambda(4), int(4 * 6));
    for family in FamilySpec::all_desk() {
        assert!(family.lambda(0).is_zero());
    }
}

#[test]
fn lambda_slopes() {
    assert_eq!(spec("hermite").lambda_slope(0), int(2));
    // lambda_2 / 2 = 6 / 2
    assert_eq!(spec("legendre").lambda_slope(2), int(3));
    let c = charlier(rat(7, 3));
    for m in 0..6 {
        assert_eq!(c.lambda_slope(m), int(1));
    }
}

#[test]
fn shifted_tau() {
    let hermite = spec("hermite");
    for n in 0..5 {
        assert_eq!(hermite.tau_n(n), Poly::from_ints(&[0, -2]));
    }
    // tau(x+n) + sigma(x+n) - sigma(x) = mu - x - n + x + n - x
    let c = charlier(rat(1, 2));
    assert_eq!(c.tau_n(3), Poly::linear(int(-1), rat(1, 2)));
    for family in FamilySpec::all_desk() {
        assert_eq!(family.tau_n(0), family.tau);
    }
}

#[test]
fn recurrence_examples() {
    let hermite = spec("hermite").recurrence(5).unwrap();
    assert_eq!((hermite.alpha, hermite.beta, hermite.gamma), (rat(1, 2), int(0), int(5)));
    let c = charlier(rat(1, 3)).recurrence(2).unwrap();
    assert_eq!((c.alpha, c.beta, c.gamma), (rat(-1, 3), rat(7, 3), int(-2)));
    let le = spec("legendre").recurrence(3).unwrap();
    assert_eq!((le.alpha, le.beta, le.gamma), (rat(4, 7), int(0), rat(3, 7)));
    assert!(matches!(spec("kravchuk").recurrence(8), Err(Error::Degree { .. })));
}

#[test]
fn norm_ratio_examples() {
    assert_eq!(spec("hermite").norm_ratio(3).unwrap(), int(8));
    assert_eq!(charlier(rat(1, 2)).norm_ratio(2).unwrap(), int(6));
    assert_eq!(spec("legendre").norm_ratio(1).unwrap(), rat(3, 5));
}

#[test]
fn chebyshev_norms_match_factorial_form() {
    // d_n^2 = (N+n)! / ((2n+1) (N-n-1)!)
    let cheb = spec("chebyshev");
    for n in 0..8usize {
        let expected = crate::algebra::rational::factorial(8 + n)
            / (int(2 * n as i64 + 1) * crate::algebra::rational::factorial(8 - n - 1));
        let d = cheb.dn_sq(n).unwrap();
        assert_eq!(d.constant.value(), 1.0);
        assert_eq!(d.rational, expected, "n = {n}");
    }
}

#[test]
fn pearson_ratios() {
    let c = charlier(rat(1, 2)).pearson_ratio().unwrap();
    assert_eq!(c, RationalFn::new(Poly::constant(rat(1, 2)), Poly::from_ints(&[1, 1])).unwrap());
    // p (N - x) / (q (x + 1)) with p = 1/2, N = 8
    let k = spec("kravchuk").pearson_ratio().unwrap();
    assert_eq!(k, RationalFn::new(Poly::from_ints(&[8, -1]), Poly::from_ints(&[1, 1])).unwrap());
    // mu (x + gamma) / (x + 1) with gamma = 2, mu = 1/3
    let m = spec("meixner").pearson_ratio().unwrap();
    assert_eq!(m, RationalFn::new(Poly::new(vec![rat(2, 3), rat(1, 3)]), Poly::from_ints(&[1, 1])).unwrap());
    assert!(matches!(spec("hermite").pearson_ratio(), Err(Error::Kind(_))));
}

#[test]
fn weight_values() {
    assert_eq!(spec("hermite").weight_eval(0.0).unwrap(), 1.0);
    assert_eq!(spec("legendre").weight_eval(0.3).unwrap(), 1.0);
    let c = charlier(int(1)).weight_eval(0.0).unwrap();
    assert!((c - (-1.0f64).exp()).abs() < 1e-15);
    assert!(matches!(spec("legendre").weight_eval(1.0), Err(Error::Domain(_))));
    assert!(matches!(spec("kravchuk").weight_eval(0.5), Err(Error::Domain(_))));
    assert!(matches!(spec("hahn").weight_eval(8.0), Err(Error::Domain(_))));
}

#[test]
fn tau_slope_is_minus_odd_lambda_slope() {
    for family in FamilySpec::all_desk() {
        for n in 0..=12 {
            assert_eq!(family.tau_n(n).coeff(1), -family.lambda_slope(2 * n + 1), "{family} n={n}");
            assert_eq!(family.tau_n(n).degree(), Some(1));
        }
    }
}

#[test]
fn norm_ratio_is_gamma_over_alpha() {
    for family in FamilySpec::all_desk() {
        let top = family.max_degree().unwrap_or(13).min(13);
        for n in 0..top {
            let r = family.norm_ratio(n).unwrap();
            let now = family.recurrence(n).unwrap();
            let next = family.recurrence(n + 1).unwrap();
            assert_eq!(r, &next.gamma / &now.alpha, "{family} n={n}");
            assert!(r > BigRational::zero());
        }
    }
}

#[test]
fn gamma_positive_below_top_degree() {
    for family in FamilySpec::all_desk() {
        let top = family.max_degree().unwrap_or(12).min(12);
        for n in 1..=top {
            let rec = family.recurrence(n).unwrap();
            // the sign convention of the family carries into both alpha and gamma
            assert!((&rec.gamma / &rec.alpha) > BigRational::zero(), "{family} n={n}");
        }
    }
}

#[test]
fn lambda_is_n_times_slope() {
    for family in FamilySpec::all_desk() {
        for n in 1..=12 {
            assert_eq!(family.lambda(n), int(n as i64) * family.lambda_slope(n));
        }
    }
}

#[test]
fn pearson_relation_holds_pointwise() {
    for family in FamilySpec::all_desk().into_iter().filter(FamilySpec::is_discrete) {
        let ratio = family.pearson_ratio().unwrap();
        let end = family.lattice_size().map_or(40, |n| n as i64 - 1);
        for x in 0..end {
            let xf = x as f64;
            let lhs = to_f64(&(family.sigma.eval(&int(x)) + family.tau.eval(&int(x)))) * family.weight_eval(xf).unwrap();
            let rhs = to_f64(&family.sigma.eval(&int(x + 1))) * family.weight_eval(xf + 1.0).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs(), "{family} x={x}");
            let exact = ratio.eval(&int(x)).unwrap();
            let numeric = family.weight_eval(xf + 1.0).unwrap() / family.weight_eval(xf).unwrap();
            assert!((to_f64(&exact) - numeric).abs() <= 1e-12 * numeric, "{family} x={x}");
        }
    }
}

#[test]
fn discrete_origin_weight_matches_evaluator() {
    for family in FamilySpec::all_desk().into_iter().filter(FamilySpec::is_discrete) {
        let origin = family.weight_origin().unwrap().to_f64();
        let direct = family.weight_eval(0.0).unwrap();
        assert!((origin - direct).abs() < 1e-12 * direct, "{family}");
    }
}

#[test]
fn finite_lattice_total_mass_is_d0() {
    for family in FamilySpec::all_desk().into_iter().filter(|f| f.lattice_size().is_some()) {
        let total: BigRational = family
            .lattice()
            .unwrap()
            .map(|x| family.relative_weight(x).unwrap())
            .fold(BigRational::zero(), |acc, w| acc + w);
        let mass = family.d0_sq().ratio(&family.weight_origin().unwrap()).unwrap();
        assert_eq!(total, mass, "{family}");
    }
}

#[test]
fn infinite_lattice_total_mass_is_d0() {
    for name in ["meixner", "charlier"] {
        let family = spec(name);
        let total: f64 = (0..200).map(|x| family.weight_eval(x as f64).unwrap()).sum();
        assert!((total - family.d0_sq().to_f64()).abs() < 1e-13, "{name}");
    }
}

#[test]
fn continuous_moment_examples() {
    // int s^2 sqrt(1 - s^2) ds = pi/8 against the constant pi/2
    let jacobi = spec("jacobi");
    assert_eq!(jacobi.moment(2).unwrap().rational, rat(1, 4));
    assert_eq!(jacobi.moment(0).unwrap().rational, BigRational::one());
    assert_eq!(spec("hermite").moment(4).unwrap().rational, rat(3, 4));
    // Gamma(alpha + 3) / Gamma(alpha + 1) at alpha = 2
    assert_eq!(spec("laguerre").moment(2).unwrap().rational, int(12));
    assert_eq!(spec("legendre").moment(2).unwrap().rational, rat(2, 3));
    assert_eq!(spec("legendre").moment(3).unwrap().rational, int(0));
}
