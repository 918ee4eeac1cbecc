use super::*;
use crate::algebra::rational::rat;
use crate::families::{make_family, Params};

fn top(family: &FamilySpec, cap: usize) -> usize {
    family.max_degree().map_or(cap, |m| m.min(cap))
}

#[test]
fn ladder_coefficient_examples() {
    let hermite = FamilySpec::desk("hermite").unwrap();
    let s = Poly::var();
    for n in 0..5 {
        let c = ladder_coeffs(&hermite, n).unwrap();
        assert_eq!((c.first, c.second), (s.clone(), s.clone()));
    }
    let charlier = FamilySpec::desk("charlier").unwrap();
    let minus_mu = Poly::constant(rat(-1, 2));
    for n in 0..5 {
        let c = ladder_coeffs(&charlier, n).unwrap();
        assert_eq!((c.first, c.second), (minus_mu.clone(), minus_mu.clone()));
    }
    let legendre = FamilySpec::desk("legendre").unwrap();
    for n in 0..5 {
        let f = ladder_coeffs(&legendre, n).unwrap().first;
        assert_eq!(f, s.scale(&int(n as i64 + 1)));
    }
}

#[test]
fn shift_identities_hold() {
    for family in FamilySpec::all_desk() {
        for n in 0..top(&family, 12) {
            assert!(shift_identity_residual(&family, n).unwrap().is_zero(), "{family} n={n}");
        }
    }
}

#[test]
fn shift_identity_detects_a_corrupted_tau() {
    let mut family = FamilySpec::desk("hahn").unwrap();
    family.tau = &family.tau + &Poly::constant(rat(1, 3));
    assert!(!shift_identity_residual(&family, 3).unwrap().is_zero());
}

#[test]
fn composition_matches_pointwise_application() {
    // (A ∘ B) psi computed symbolically against A applied to B psi numerically
    for name in ["laguerre", "kravchuk", "meixner"] {
        let family = FamilySpec::desk(name).unwrap();
        let basis = Basis::new(&family, 4).unwrap();
        let (up, down) = (raise_op(&family, 2).unwrap(), lower_op(&family, 3).unwrap());
        let composed = down.compose(&up, &family).to_relation(0);
        let c = orthonormal::raise_constant(&family, 2).unwrap().to_f64();
        let lowered = down.to_relation(1);
        for at in orthonormal::probe_points(&family).into_iter().take(6) {
            let direct = orthonormal::apply_numeric(&basis, 2, &composed, at).unwrap();
            let via = c * orthonormal::apply_numeric(&basis, 2, &lowered, at).unwrap();
            assert!((direct - via).abs() < 1e-9 * direct.abs().max(1.0), "{name} at={at}: {direct} vs {via}");
        }
    }
}

#[test]
fn brackets_are_constant_and_match_closed_form() {
    for family in FamilySpec::all_desk() {
        for n in 0..=top(&family, 12) {
            let c = mu_bracket(&family, n).unwrap_or_else(|e| panic!("{e}"));
            assert!(c.bracket_poly_degree_checked);
            assert_eq!(c.mu, c.nu);
        }
    }
}

#[test]
fn table_eigenvalues() {
    let hermite = FamilySpec::desk("hermite").unwrap();
    let jacobi = FamilySpec::desk("jacobi").unwrap();
    let (a, b) = (rat(1, 2), rat(1, 2));
    for n in 0..8 {
        let k = int(n as i64);
        assert_eq!(mu_bracket(&hermite, n).unwrap().mu, int(2) * (&k + int(1)));
        let expected = int(4) * (&k + int(1)) * (&k + &a + int(1)) * (&k + &b + int(1)) * (&k + &a + &b + int(1))
            / ((int(2) * &k + &a + &b + int(2)) * (int(2) * &k + &a + &b + int(2)));
        assert_eq!(mu_bracket(&jacobi, n).unwrap().mu, expected);
    }
    let chebyshev = make_family("chebyshev_discrete", &Params { size: Some(8), ..Params::default() }).unwrap();
    assert_eq!(mu_bracket(&chebyshev, 2).unwrap().mu, rat(495, 4));
}

#[test]
fn adjoint_scaling_gives_alpha_gamma() {
    let legendre = FamilySpec::desk("legendre").unwrap();
    for n in 0..6 {
        let k = n as i64;
        let expected = rat(k + 1, 2 * k + 1) * rat(k + 1, 2 * k + 3);
        assert_eq!(adjoint_scaled_factorization(&legendre, n).unwrap().mu, expected);
    }
    let hermite = FamilySpec::desk("hermite").unwrap();
    assert_eq!(adjoint_scaled_factorization(&hermite, 4).unwrap().mu, rat(5, 2));
}

#[test]
fn factorizations_hold_on_the_basis() {
    for family in FamilySpec::all_desk() {
        let cap = top(&family, 10);
        let basis = Basis::new(&family, cap).unwrap();
        for which in Factorization::for_kind(family.kind) {
            let last = match which.product() {
                Product::DownUp => cap,
                Product::UpDown => cap - 1,
            };
            for n in 0..=last {
                let residual = factorization_residual(&basis, which, n).unwrap();
                assert!(residual.is_zero(), "{family} {which} n={n}: {residual}");
                assert!(factorization_operator_residual(&family, which, n).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn wrong_kind_is_rejected() {
    let family = FamilySpec::desk("hermite").unwrap();
    assert!(matches!(factorization_operator_residual(&family, Factorization::ND5, 1), Err(Error::Kind(_))));
}

#[test]
fn shifted_prefactor_index_fails() {
    for name in ["kravchuk", "meixner", "hahn", "chebyshev_discrete"] {
        let family = FamilySpec::desk(name).unwrap();
        assert!(!shifted_index_residual(&family, 2).unwrap().is_zero(), "{name}");
    }
    // u(x, n) = -mu does not depend on n, so the index slip is invisible here
    let charlier = FamilySpec::desk("charlier").unwrap();
    assert!(shifted_index_residual(&charlier, 2).unwrap().is_zero());
}

#[test]
fn eigenvalues_agree_with_ladder_constants() {
    for family in FamilySpec::all_desk() {
        let cap = top(&family, 8);
        for n in 0..cap {
            let mu = mu_bracket(&family, n).unwrap().mu;
            let up = orthonormal::raise_constant(&family, n).unwrap();
            let down = orthonormal::lower_constant(&family, n + 1).unwrap();
            assert_eq!(up.mul(&down).square(), &(&mu * &mu), "{family} n={n}");
        }
    }
}

#[test]
fn numeric_eigenvalue_cross_check() {
    for family in FamilySpec::all_desk() {
        let basis = Basis::new(&family, 4).unwrap();
        let mu = crate::algebra::rational::to_f64(&mu_bracket(&family, 2).unwrap().mu);
        for product in [Product::DownUp, Product::UpDown] {
            let v = product_eigenvalue_numeric(&basis, product, 2).unwrap();
            assert!((v - mu).abs() < 1e-8 * mu.abs().max(1.0), "{family} {product:?}: {v} vs {mu}");
        }
    }
}

/// The displayed discrete bracket, with the denominator of its first
/// `tau_n(x + 1)` term taken at level `denominator_level`.
fn displayed_discrete_bracket(family: &FamilySpec, n: usize, denominator_level: usize) -> Poly {
    let slope = family.lambda_slope(n);
    let tau_n = family.tau_n(n);
    let next = tau_n.shift(&BigRational::one());
    let drift = tau_n.scale(&(&slope / tau_n.coeff(1)));
    let left = &drift - &Poly::constant(family.lambda(n));
    let ratio = &slope / family.tau_n(denominator_level).coeff(1);
    let right = &next.scale(&ratio) - &family.sigma.shift(&BigRational::one());
    let tail = &next.scale(&(&slope / tau_n.coeff(1))) * &(&family.sigma + &family.tau);
    &(&left * &right) + &tail
}

#[test]
fn displayed_discrete_bracket_needs_the_same_level_twice() {
    for family in FamilySpec::all_desk().into_iter().filter(|f| f.is_discrete()) {
        for n in 1..top(&family, 7) {
            let fixed = displayed_discrete_bracket(&family, n, n);
            assert!(fixed.degree().unwrap_or(0) == 0, "{family} n={n}: {fixed}");
            assert_eq!(fixed.coeff(0), mu_closed_form(&family, n).unwrap(), "{family} n={n}");
            let printed = displayed_discrete_bracket(&family, n, n + 1);
            let curved = family.sigma.coeff(2) != BigRational::from_integer(0.into());
            assert_eq!(printed.degree().unwrap_or(0) > 0, curved, "{family} n={n}: {printed}");
        }
    }
}
