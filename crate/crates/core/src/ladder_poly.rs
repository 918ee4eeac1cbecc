//! Polynomial-layer ladder: the seed `y_0 = 1`, raising and lowering between
//! consecutive degrees, and exact residuals of the defining equation and of the
//! three-term recurrence.
//!
//! With `D = d/ds` (continuous) or the backward difference (discrete) and
//! `A_n = (lambda_n/n) tau_n / tau_n'`, raising reads
//!
//! ```text
//! (lambda_2n/2n) alpha_n y_{n+1} = A_n y_n - sigma D y_n
//! ```
//!
//! Lowering is obtained by eliminating `y_{n+1}` with the recurrence; in the
//! discrete case the defining equation additionally turns `sigma grad` into
//! `(sigma + tau) delta + lambda_n`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Kind};

/// `y_0, ..., y_{n_max}` of one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeq {
    pub family: FamilySpec,
    pub polys: Vec<Poly>,
}

impl PolySeq {
    pub fn get(&self, n: usize) -> Option<&Poly> {
        self.polys.get(n)
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }
}

fn degree_error(family: &FamilySpec, n: usize, reason: impl Into<String>) -> Error {
    Error::Degree {
        family: family.family.to_string(),
        n,
        reason: reason.into(),
    }
}

fn expect_degree(family: &FamilySpec, y: &Poly, n: usize) -> Result<()> {
    if y.degree() == Some(n) {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "{family}: expected a polynomial of degree {n}, got {}",
            y.display_in(family.var_name())
        )))
    }
}

/// The derivative or the backward difference, depending on the family kind.
pub fn raise_difference(family: &FamilySpec, p: &Poly) -> Poly {
    match family.kind {
        Kind::Continuous => p.derivative(),
        Kind::Discrete => p.bwd_diff(),
    }
}

/// The derivative or the forward difference, depending on the family kind.
pub fn lower_difference(family: &FamilySpec, p: &Poly) -> Poly {
    match family.kind {
        Kind::Continuous => p.derivative(),
        Kind::Discrete => p.fwd_diff(),
    }
}

/// Coefficient of the lowering derivative: `sigma`, or `sigma + tau` on a lattice.
pub fn lower_weight(family: &FamilySpec) -> Poly {
    match family.kind {
        Kind::Continuous => family.sigma.clone(),
        Kind::Discrete => &family.sigma + &family.tau,
    }
}

/// Multiplicative part of the lowering relation:
/// `-A_n + (lambda_2n/2n)(var - beta_n)`, plus `lambda_n` on a lattice.
pub fn lower_drift(family: &FamilySpec, n: usize) -> Result<Poly> {
    let rec = family.recurrence(n)?;
    let centred = Poly::linear(BigRational::one(), -rec.beta).scale(&family.lambda_slope(2 * n));
    let mut drift = &centred - &family.drift(n);
    if family.is_discrete() {
        drift = &drift + &Poly::constant(family.lambda(n));
    }
    Ok(drift)
}

/// `y_0 = 1`, after checking that the lowering relation annihilates it.
pub fn seed_polynomial(family: &FamilySpec) -> Result<Poly> {
    let seed = Poly::one();
    // At n = 0 the lowering relation has gamma_0 = 0 on the left, so its right
    // side must vanish identically on the seed.
    let lhs = &lower_weight(family) * &lower_difference(family, &seed);
    let rhs = &lower_drift(family, 0)? * &seed;
    let residual = &lhs + &rhs;
    if !residual.is_zero() {
        return Err(Error::Invariant(format!(
            "{family}: lowering does not annihilate the seed (residual {})",
            residual.display_in(family.var_name())
        )));
    }
    Ok(seed)
}

pub fn raise_poly(family: &FamilySpec, n: usize, y_n: &Poly) -> Result<Poly> {
    if let Some(max) = family.max_degree() {
        if n + 1 > max {
            return Err(degree_error(family, n + 1, format!("largest admissible degree is {max}")));
        }
    }
    expect_degree(family, y_n, n)?;
    let divisor = family.lambda_slope(2 * n) * family.recurrence(n)?.alpha;
    if divisor.is_zero() {
        return Err(Error::Invariant(format!("{family}: vanishing raising constant at n = {n}")));
    }
    let shifted = &family.drift(n) * y_n;
    let moved = &family.sigma * &raise_difference(family, y_n);
    Ok((&shifted - &moved).scale(&(BigRational::one() / divisor)))
}

pub fn lower_poly(family: &FamilySpec, n: usize, y_n: &Poly) -> Result<Poly> {
    family.check_degree(n)?;
    if n == 0 {
        return Err(degree_error(family, n, "gamma_0 = 0, the seed has no lower neighbour"));
    }
    expect_degree(family, y_n, n)?;
    let divisor = family.lambda_slope(2 * n) * family.recurrence(n)?.gamma;
    if divisor.is_zero() {
        return Err(Error::Invariant(format!("{family}: vanishing lowering constant at n = {n}")));
    }
    let moved = &lower_weight(family) * &lower_difference(family, y_n);
    let drift = &lower_drift(family, n)? * y_n;
    Ok((&moved + &drift).scale(&(BigRational::one() / divisor)))
}

pub fn build_family_polys(family: &FamilySpec, n_max: usize) -> Result<PolySeq> {
    family.check_degree(n_max)?;
    let mut polys = vec![seed_polynomial(family)?];
    for n in 0..n_max {
        let next = raise_poly(family, n, &polys[n])?;
        polys.push(next);
    }
    Ok(PolySeq {
        family: family.clone(),
        polys,
    })
}

/// `sigma y'' + tau y' + lambda_n y`, or its lattice analogue.
pub fn verify_ode(family: &FamilySpec, n: usize, y_n: &Poly) -> Poly {
    let (second, first) = match family.kind {
        Kind::Continuous => {
            let d = y_n.derivative();
            (d.derivative(), d)
        }
        Kind::Discrete => (y_n.bwd_diff().fwd_diff(), y_n.fwd_diff()),
    };
    let lhs = &(&family.sigma * &second) + &(&family.tau * &first);
    &lhs + &y_n.scale(&family.lambda(n))
}

/// `var y_n - alpha_n y_{n+1} - beta_n y_n - gamma_n y_{n-1}`.
pub fn verify_recurrence(family: &FamilySpec, n: usize, seq: &PolySeq) -> Result<Poly> {
    if n + 1 > seq.n_max() {
        return Err(degree_error(family, n + 1, format!("sequence stops at degree {}", seq.n_max())));
    }
    let rec = family.recurrence(n)?;
    let y = &seq.polys[n];
    let mut residual = &(&Poly::var() * y) - &seq.polys[n + 1].scale(&rec.alpha);
    residual = &residual - &y.scale(&rec.beta);
    if n > 0 {
        residual = &residual - &seq.polys[n - 1].scale(&rec.gamma);
    }
    Ok(residual)
}

/// Residual of the raising relation between `y_n` and `y_{n+1}` of `seq`.
pub fn raise_residual(family: &FamilySpec, n: usize, seq: &PolySeq) -> Result<Poly> {
    if n + 1 > seq.n_max() {
        return Err(degree_error(family, n + 1, format!("sequence stops at degree {}", seq.n_max())));
    }
    let y = &seq.polys[n];
    let constant = family.lambda_slope(2 * n) * family.recurrence(n)?.alpha;
    let rhs = &(&family.drift(n) * y) - &(&family.sigma * &raise_difference(family, y));
    Ok(&seq.polys[n + 1].scale(&constant) - &rhs)
}

/// Residual of the lowering relation between `y_n` and `y_{n-1}` of `seq`.
pub fn lower_residual(family: &FamilySpec, n: usize, seq: &PolySeq) -> Result<Poly> {
    if n == 0 || n > seq.n_max() {
        return Err(degree_error(family, n, format!("sequence stops at degree {}", seq.n_max())));
    }
    let y = &seq.polys[n];
    let constant = family.lambda_slope(2 * n) * family.recurrence(n)?.gamma;
    let rhs = &(&lower_weight(family) * &lower_difference(family, y)) + &(&lower_drift(family, n)? * y);
    Ok(&seq.polys[n - 1].scale(&constant) - &rhs)
}

/// Builds the sequence from the three-term recurrence alone.
pub fn polys_from_recurrence(family: &FamilySpec, n_max: usize) -> Result<Vec<Poly>> {
    family.check_degree(n_max)?;
    let mut polys = vec![Poly::one()];
    for n in 0..n_max {
        let rec = family.recurrence(n)?;
        let mut next = &(&Poly::var() * &polys[n]) - &polys[n].scale(&rec.beta);
        if n > 0 {
            next = &next - &polys[n - 1].scale(&rec.gamma);
        }
        polys.push(next.scale(&(BigRational::one() / rec.alpha)));
    }
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::families::Family;

    fn spec(name: &str) -> FamilySpec {
        FamilySpec::desk(name).unwrap()
    }

    fn hermite_by_hand(n_max: usize) -> Vec<Poly> {
        // H_{n+1} = 2s H_n - 2n H_{n-1}
        let mut out = vec![Poly::one(), Poly::from_ints(&[0, 2])];
        for n in 1..n_max {
            let next = &(&Poly::from_ints(&[0, 2]) * &out[n]) - &out[n - 1].scale(&int(2 * n as i64));
            out.push(next);
        }
        out.truncate(n_max + 1);
        out
    }

    #[test]
    fn seeds_are_one() {
        for family in FamilySpec::all_desk() {
            assert_eq!(seed_polynomial(&family).unwrap(), Poly::one(), "{family}");
        }
    }

    #[test]
    fn raising_examples() {
        let hermite = spec("hermite");
        assert_eq!(raise_poly(&hermite, 1, &Poly::from_ints(&[0, 2])).unwrap(), Poly::from_ints(&[-2, 0, 4]));
        let h3 = hermite_by_hand(3)[3].clone();
        let direct = &(&Poly::from_ints(&[0, 2]) * &h3) - &h3.derivative();
        assert_eq!(raise_poly(&hermite, 3, &h3).unwrap(), direct);
        let mu = rat(1, 2);
        let charlier = FamilySpec::new(Family::Charlier { mu: mu.clone() }).unwrap();
        // (mu - x) / mu
        let c1 = Poly::linear(-(int(1) / &mu), int(1));
        assert_eq!(raise_poly(&charlier, 0, &Poly::one()).unwrap(), c1);
    }

    #[test]
    fn lowering_examples() {
        let hermite = spec("hermite");
        assert_eq!(lower_poly(&hermite, 1, &Poly::from_ints(&[0, 2])).unwrap(), Poly::one());
        let legendre = spec("legendre");
        let p2 = Poly::new(vec![rat(-1, 2), int(0), rat(3, 2)]);
        assert_eq!(lower_poly(&legendre, 2, &p2).unwrap(), Poly::var());
        let charlier = spec("charlier");
        let c1 = Poly::linear(int(-2), int(1));
        assert_eq!(lower_poly(&charlier, 1, &c1).unwrap(), Poly::one());
        assert!(matches!(lower_poly(&hermite, 0, &Poly::one()), Err(Error::Degree { .. })));
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_family_polys(&spec("hermite"), 2).unwrap().polys, hermite_by_hand(2));
        let legendre = build_family_polys(&spec("legendre"), 2).unwrap();
        assert_eq!(legendre.polys[2], Poly::new(vec![rat(-1, 2), int(0), rat(3, 2)]));
        let kravchuk = FamilySpec::new(Family::Kravchuk { p: rat(1, 2), size: 4 }).unwrap();
        assert!(matches!(build_family_polys(&kravchuk, 5), Err(Error::Degree { .. })));
        assert_eq!(build_family_polys(&spec("hermite"), 10).unwrap().polys, hermite_by_hand(10));
    }

    #[test]
    fn ode_examples() {
        let hermite = spec("hermite");
        assert!(verify_ode(&hermite, 2, &Poly::from_ints(&[-2, 0, 4])).is_zero());
        assert!(!verify_ode(&hermite, 2, &Poly::from_ints(&[0, 0, 1])).is_zero());
        let charlier = spec("charlier");
        assert!(verify_ode(&charlier, 1, &Poly::linear(int(-2), int(1))).is_zero());
    }

    #[test]
    fn recurrence_examples() {
        let seq = build_family_polys(&spec("hermite"), 2).unwrap();
        assert!(verify_recurrence(&seq.family, 1, &seq).unwrap().is_zero());
        let legendre = build_family_polys(&spec("legendre"), 2).unwrap();
        assert!(verify_recurrence(&legendre.family, 1, &legendre).unwrap().is_zero());
        let mut perturbed = legendre.clone();
        perturbed.polys[2] = &perturbed.polys[2] + &Poly::one();
        assert!(!verify_recurrence(&perturbed.family, 1, &perturbed).unwrap().is_zero());
    }

    fn top(family: &FamilySpec) -> usize {
        family.max_degree().map_or(12, |m| m.min(12))
    }

    #[test]
    fn every_family_satisfies_its_equations() {
        for family in FamilySpec::all_desk() {
            let seq = build_family_polys(&family, top(&family)).unwrap();
            for (n, y) in seq.polys.iter().enumerate() {
                assert_eq!(y.degree(), Some(n));
                assert!(verify_ode(&family, n, y).is_zero(), "{family} n={n}");
                if n < seq.n_max() {
                    assert!(verify_recurrence(&family, n, &seq).unwrap().is_zero(), "{family} n={n}");
                    assert!(raise_residual(&family, n, &seq).unwrap().is_zero(), "{family} n={n}");
                    let ratio = seq.polys[n + 1].leading() / y.leading();
                    assert_eq!(ratio, int(1) / family.recurrence(n).unwrap().alpha, "{family} n={n}");
                }
                if n > 0 {
                    assert!(lower_residual(&family, n, &seq).unwrap().is_zero(), "{family} n={n}");
                }
            }
        }
    }

    #[test]
    fn raising_agrees_with_recurrence_construction() {
        for family in FamilySpec::all_desk() {
            let n_max = top(&family);
            let seq = build_family_polys(&family, n_max).unwrap();
            assert_eq!(seq.polys, polys_from_recurrence(&family, n_max).unwrap(), "{family}");
        }
    }

    #[test]
    fn lower_undoes_raise() {
        for family in FamilySpec::all_desk() {
            let seq = build_family_polys(&family, top(&family)).unwrap();
            for n in 0..seq.n_max() {
                let up = raise_poly(&family, n, &seq.polys[n]).unwrap();
                assert_eq!(lower_poly(&family, n + 1, &up).unwrap(), seq.polys[n], "{family} n={n}");
            }
        }
    }
}
