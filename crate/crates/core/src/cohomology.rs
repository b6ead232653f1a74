//! Rational Poincaré polynomials through the Weyl-invariant model
//! `H*(Hom(pi, G)) = H*(G/T x T^n x Hom(A, T))^W`.
//!
//! `H*(G/T)` carries the coinvariant character of `w`, obtained from the
//! degrees and `det(1 - t^2 w)`; each circle factor of `T^n` contributes the
//! exterior character `det(1 + t w)`; the finite set `Hom(A, T)` contributes
//! its fixed-point count.

use num::{BigInt, BigRational, One};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{enumerate_weyl, GroupSpec, WeylElement};
use crate::poly::{IntPoly, RationalPoly};
use crate::torsion::{HomElement, HomSpace, OrbitTable, PiSpec};

/// Graded character of `w` on the coinvariant algebra, with topological grading.
pub fn coinvariant_character(w: &WeylElement, g: &GroupSpec) -> Result<RationalPoly> {
    let numerator = g
        .degrees()
        .iter()
        .fold(RationalPoly::one(), |acc, &d| &acc * &one_minus_t_pow(2 * d));
    let det = w.reflection_det_factors(g).det_one_minus(1, 2)?;
    numerator.exact_div(&det)
}

/// `det(1 + t w)`, the graded character of `w` on `H*(T)`.
pub fn torus_character(w: &WeylElement, g: &GroupSpec) -> Result<RationalPoly> {
    w.reflection_det_factors(g).det_one_plus_x()
}

fn one_minus_t_pow(k: usize) -> RationalPoly {
    &RationalPoly::one() - &RationalPoly::monomial(BigRational::one(), k)
}

/// Characters of every Weyl element, in [`enumerate_weyl`] order.
#[derive(Clone, Debug)]
pub struct WeylCharacters {
    coinvariant: Vec<RationalPoly>,
    torus: Vec<RationalPoly>,
}

impl WeylCharacters {
    pub fn new(g: &GroupSpec, weyl: &[WeylElement]) -> Result<Self> {
        let pairs: Result<Vec<_>> = weyl
            .par_iter()
            .map(|w| Ok((coinvariant_character(w, g)?, torus_character(w, g)?)))
            .collect();
        let (coinvariant, torus) = pairs?.into_iter().unzip();
        Ok(Self { coinvariant, torus })
    }

    /// `(1/|S|) sum_{w in S} weight(w) C_w(t) det(1 + t w)^n` over the given indices.
    fn average(&self, indices: &[usize], weights: impl Fn(usize) -> u64 + Sync, n: usize) -> RationalPoly {
        let terms: Vec<RationalPoly> = indices
            .par_iter()
            .map(|&i| {
                let weight = weights(i);
                if weight == 0 {
                    return RationalPoly::zero();
                }
                let term = &self.coinvariant[i] * &self.torus[i].pow(n as u32);
                term.scalar_mul(&BigRational::from_integer(BigInt::from(weight)))
            })
            .collect();
        let sum = terms.iter().fold(RationalPoly::zero(), |acc, t| &acc + t);
        sum.scalar_mul(&BigRational::new(BigInt::one(), BigInt::from(indices.len())))
    }
}

pub fn poincare_total(g: &GroupSpec, pi: &PiSpec, cap: u64) -> Result<IntPoly> {
    let space = HomSpace::new(g, &pi.torsion(), cap)?;
    let chars = WeylCharacters::new(g, space.weyl())?;
    poincare_total_with(&space, &chars, pi.free_rank())
}

fn poincare_total_with(space: &HomSpace, chars: &WeylCharacters, n: usize) -> Result<IntPoly> {
    let fix = space.fix_counts();
    let all: Vec<usize> = (0..fix.len()).collect();
    chars.average(&all, |i| fix[i], n).assert_integer_coeffs()
}

fn check_subgroup(stabilizer: &[WeylElement]) -> Result<()> {
    if !stabilizer.iter().any(WeylElement::is_identity) {
        return Err(Error::NotASubgroup("identity missing".into()));
    }
    for a in stabilizer {
        for b in stabilizer {
            if !stabilizer.contains(&a.compose(b)) {
                return Err(Error::NotASubgroup(format!("{} elements not closed under composition", stabilizer.len())));
            }
        }
    }
    Ok(())
}

fn component_checked(p: RationalPoly) -> Result<IntPoly> {
    let ints = p.assert_integer_coeffs()?;
    if ints.first() != Some(&1) {
        return Err(Error::NonIntegralResult(format!("component polynomial {p} has constant term other than 1")));
    }
    Ok(ints)
}

/// Poincaré polynomial of the component through a point with Weyl stabilizer `stabilizer`.
pub fn poincare_component(g: &GroupSpec, n: usize, stabilizer: &[WeylElement]) -> Result<IntPoly> {
    check_subgroup(stabilizer)?;
    let chars = WeylCharacters::new(g, stabilizer)?;
    let all: Vec<usize> = (0..stabilizer.len()).collect();
    component_checked(chars.average(&all, |_| 1, n))
}

/// Betti number `b_1`.
pub fn h1_rank(p: &[u64]) -> u64 {
    p.get(1).copied().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCohomology {
    pub representative: HomElement,
    pub poincare: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub total_poincare: IntPoly,
    pub per_component: Vec<ComponentCohomology>,
    pub component_count: u64,
}

/// Total and per-component Poincaré polynomials for `Z^n + A`, reusing an
/// orbit table of `space`.
pub fn cohomology_report(space: &HomSpace, table: &OrbitTable, n: usize) -> Result<CohomologyReport> {
    let chars = WeylCharacters::new(space.group(), space.weyl())?;
    let total_poincare = poincare_total_with(space, &chars, n)?;
    let per_component = table
        .rows
        .iter()
        .map(|row| {
            Ok(ComponentCohomology {
                representative: row.representative.clone(),
                poincare: component_checked(chars.average(&row.stabilizer, |_| 1, n))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summed = per_component
        .iter()
        .fold(RationalPoly::zero(), |acc, c| &acc + &RationalPoly::from_int_poly(&c.poincare));
    if summed != RationalPoly::from_int_poly(&total_poincare) {
        return Err(Error::Internal("component polynomials do not sum to the total".into()));
    }
    let component_count = total_poincare.first().copied().unwrap_or(0);
    if component_count != table.len() as u64 {
        return Err(Error::Internal(format!(
            "b_0 = {component_count} but there are {} orbits",
            table.len()
        )));
    }
    Ok(CohomologyReport { total_poincare, per_component, component_count })
}

/// `(1/|W|) sum_w 1/det(1 - x w)` truncated after `x^precision`.
pub fn molien_series(g: &GroupSpec, precision: usize, cap: u64) -> Result<RationalPoly> {
    let weyl = enumerate_weyl(g, cap)?;
    let terms: Result<Vec<RationalPoly>> = weyl
        .par_iter()
        .map(|w| w.reflection_det_factors(g).det_one_minus_x()?.series_inverse(precision))
        .collect();
    let sum = terms?.iter().fold(RationalPoly::zero(), |acc, t| &acc + t);
    Ok(sum.scalar_mul(&BigRational::new(BigInt::one(), BigInt::from(weyl.len()))))
}

/// `prod_i 1/(1 - x^{d_i})` truncated after `x^precision`.
pub fn invariant_series(g: &GroupSpec, precision: usize) -> Result<RationalPoly> {
    g.degrees()
        .iter()
        .try_fold(RationalPoly::one(), |acc, &d| {
            Ok(&acc * &one_minus_t_pow(d).series_inverse(precision)?)
        })
        .map(|p| p.truncate(precision))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 10_000_000;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_ints(c)
    }

    #[test]
    fn coinvariant_examples() {
        let su2 = g("SU(2)");
        let w = enumerate_weyl(&su2, CAP).unwrap();
        assert_eq!(coinvariant_character(&w[0], &su2).unwrap(), p(&[1, 0, 1]));
        assert_eq!(coinvariant_character(&w[1], &su2).unwrap(), p(&[1, 0, -1]));
        let u2 = g("U(2)");
        assert_eq!(coinvariant_character(&WeylElement::identity(&u2), &u2).unwrap(), p(&[1, 0, 1]));
    }

    #[test]
    fn identity_character_is_flag_manifold() {
        // H*(U(3)/T): 1 + 2t^2 + 2t^4 + t^6
        let u3 = g("U(3)");
        assert_eq!(coinvariant_character(&WeylElement::identity(&u3), &u3).unwrap(), p(&[1, 0, 2, 0, 2, 0, 1]));
        // H*(Sp(1)/T) = H*(S^2)
        let sp1 = g("Sp(1)");
        assert_eq!(coinvariant_character(&WeylElement::identity(&sp1), &sp1).unwrap(), p(&[1, 0, 1]));
    }

    #[test]
    fn total_examples() {
        let su2 = g("SU(2)");
        assert_eq!(poincare_total(&su2, &PiSpec::free(1), CAP).unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(poincare_total(&su2, &PiSpec::free(2), CAP).unwrap(), vec![1, 0, 1, 2]);
        assert_eq!(
            poincare_total(&su2, &PiSpec::new(vec![0, 0, 2, 3]), CAP).unwrap(),
            vec![4, 4, 6, 8, 2]
        );
        for n in 0..5 {
            let expected: Vec<u64> = (0..=n).map(|k| binomial(n, k)).collect();
            assert_eq!(poincare_total(&g("U(1)"), &PiSpec::free(n as usize), CAP).unwrap(), expected);
        }
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn finite_pi_only_has_points_and_flag_manifolds() {
        // Hom(Z/3, SU(2)) = point + S^2
        assert_eq!(poincare_total(&g("SU(2)"), &PiSpec::new(vec![3]), CAP).unwrap(), vec![2, 0, 1]);
        assert_eq!(poincare_total(&g("SU(2)"), &PiSpec::new(vec![2, 2]), CAP).unwrap(), vec![4]);
    }

    #[test]
    fn component_examples() {
        let su2 = g("SU(2)");
        let w = enumerate_weyl(&su2, CAP).unwrap();
        assert_eq!(poincare_component(&su2, 2, &w).unwrap(), vec![1, 0, 1, 2]);
        assert_eq!(poincare_component(&su2, 2, &w[..1]).unwrap(), vec![1, 2, 2, 2, 1]);
        assert_eq!(poincare_component(&su2, 0, &w).unwrap(), vec![1]);
        assert_eq!(poincare_component(&su2, 0, &w[..1]).unwrap(), vec![1, 0, 1]);
        assert!(matches!(poincare_component(&su2, 1, &w[1..]), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_rank(&[1, 0, 1, 2]), 0);
        assert_eq!(h1_rank(&[1, 2, 1]), 2);
        assert_eq!(h1_rank(&[1, 2, 2, 2, 1]), 2);
        assert_eq!(h1_rank(&[1]), 0);
    }

    #[test]
    fn report_is_consistent() {
        let grp = g("Sp(2)");
        let space = HomSpace::new(&grp, &[2, 4], CAP).unwrap();
        let table = space.orbits();
        let r = cohomology_report(&space, &table, 1).unwrap();
        assert_eq!(r.component_count, table.len() as u64);
        assert!(r.per_component.iter().all(|c| c.poincare[0] == 1));
    }

    #[test]
    fn representative_choice_is_immaterial() {
        let grp = g("SU(3)");
        let space = HomSpace::new(&grp, &[3, 2], CAP).unwrap();
        let table = space.orbits();
        for row in &table.rows {
            let rep_stab: Vec<_> = row.stabilizer.iter().map(|&i| space.weyl()[i].clone()).collect();
            let expected = poincare_component(&grp, 2, &rep_stab).unwrap();
            let other = space
                .weyl()
                .iter()
                .map(|w| crate::torsion::act(w, &row.representative))
                .find(|f| *f != row.representative)
                .unwrap_or_else(|| row.representative.clone());
            let stab: Vec<_> = space.stabilizer(&other).into_iter().map(|i| space.weyl()[i].clone()).collect();
            assert_eq!(poincare_component(&grp, 2, &stab).unwrap(), expected);
        }
    }

    #[test]
    fn molien_matches_degree_product() {
        for s in ["SU(2)", "SU(3)", "U(2)", "Sp(1)", "Sp(2)", "SU(2)xSU(2)", "SU(4)", "Sp(3)", "U(3)xSp(1)"] {
            let grp = g(s);
            assert_eq!(molien_series(&grp, 10, CAP).unwrap(), invariant_series(&grp, 10).unwrap(), "{s}");
        }
    }
}
