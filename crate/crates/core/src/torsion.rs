//! Torsion points of the maximal torus and the Weyl group action on them.
//!
//! For a finite abelian group `A = Z/q_1 + ... + Z/q_m`, a homomorphism
//! `A -> T` is a tuple of torus points `t_j` with `t_j^{q_j} = 1`. Every
//! coordinate is stored as a residue `a` meaning `a/e` in `Q/Z`, where `e` is
//! the lcm of the `q_j`, so all arithmetic stays in integers mod `e`.

use std::fmt;

use num::integer::lcm;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{enumerate_weyl, FactorKind, GroupSpec, WeylElement};

/// A finitely generated abelian group `Z/(q_1) + ... + Z/(q_m)` with `Z/(0) = Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiSpec {
    presentation: Vec<u64>,
}

impl PiSpec {
    pub fn new(presentation: Vec<u64>) -> Self {
        Self { presentation }
    }

    /// `Z^n`.
    pub fn free(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// `Z^n + A` with `A` given by its cyclic orders.
    pub fn with_torsion(n: usize, torsion: &[u64]) -> Self {
        let mut p = vec![0; n];
        p.extend_from_slice(torsion);
        Self::new(p)
    }

    pub fn presentation(&self) -> &[u64] {
        &self.presentation
    }

    pub fn free_rank(&self) -> usize {
        self.presentation.iter().filter(|&&q| q == 0).count()
    }

    /// Orders of the cyclic torsion summands, in presentation order.
    pub fn torsion(&self) -> Vec<u64> {
        self.presentation.iter().copied().filter(|&q| q != 0).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }
}

impl fmt::Display for PiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.presentation.is_empty() {
            return write!(f, "0");
        }
        let n = self.free_rank();
        let mut parts = Vec::new();
        match n {
            0 => {}
            1 => parts.push("Z".to_string()),
            _ => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion().iter().map(|q| format!("Z/{q}")));
        write!(f, "{}", parts.join("+"))
    }
}

/// A homomorphism `A -> T`: one torus point (flat residue vector over all
/// factor coordinates) per torsion generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomElement {
    denominator: u32,
    points: Vec<Vec<u32>>,
}

impl HomElement {
    pub fn new(denominator: u32, points: Vec<Vec<u32>>) -> Self {
        Self { denominator, points }
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn is_trivial(&self) -> bool {
        self.points.iter().all(|p| p.iter().all(|&a| a == 0))
    }

    /// Residues nested as generator, then factor, then coordinate.
    pub fn nested(&self, g: &GroupSpec) -> Vec<Vec<Vec<u32>>> {
        self.points
            .iter()
            .map(|p| {
                let mut off = 0;
                g.factors()
                    .iter()
                    .map(|f| {
                        let block = p[off..off + f.coords()].to_vec();
                        off += f.coords();
                        block
                    })
                    .collect()
            })
            .collect()
    }

    /// Joint residue column of coordinate `i` across all generators.
    pub fn column(&self, i: usize) -> Vec<u32> {
        self.points.iter().map(|p| p[i]).collect()
    }

    /// Checks shape, the `q_j`-torsion condition, and the `SU` sum condition.
    pub fn validate(&self, g: &GroupSpec, torsion: &[u64]) -> Result<()> {
        let e = u64::from(self.denominator);
        if self.points.len() != torsion.len() {
            return Err(Error::validation("hom", "one torus point per torsion generator expected"));
        }
        for (p, &q) in self.points.iter().zip(torsion) {
            if p.len() != g.coords() {
                return Err(Error::validation("hom", "coordinate count mismatch"));
            }
            if p.iter().any(|&a| u64::from(a) >= e || (u64::from(a) * q) % e != 0) {
                return Err(Error::validation("hom", format!("point {p:?} is not {q}-torsion over {e}")));
            }
            for (f, off) in g.factors().iter().zip(g.offsets()) {
                if f.kind == FactorKind::Su {
                    let s: u64 = p[off..off + f.coords()].iter().map(|&a| u64::from(a)).sum();
                    if !s.is_multiple_of(e) {
                        return Err(Error::validation("hom", format!("{f} coordinates of {p:?} do not sum to 0")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Applies a Weyl element to every torus point of `f`.
pub fn act(w: &WeylElement, f: &HomElement) -> HomElement {
    let points = f
        .points
        .iter()
        .map(|p| {
            let mut out = vec![0; p.len()];
            w.act_residues(p, f.denominator, &mut out);
            out
        })
        .collect();
    HomElement { denominator: f.denominator, points }
}

/// `Hom(A, T)` together with the Weyl group of `G`, indexed so that index
/// order equals lexicographic order of elements.
#[derive(Clone, Debug)]
pub struct HomSpace {
    group: GroupSpec,
    torsion: Vec<u64>,
    denominator: u32,
    /// Whether each flat coordinate is a free digit (the last `SU` coordinate is not).
    free: Vec<bool>,
    /// Flat coordinate index of the last coordinate of each `SU` block.
    su_blocks: Vec<(usize, usize)>,
    count: u64,
    weyl: Vec<WeylElement>,
}

impl HomSpace {
    /// Prepares enumeration, failing if `|W| * |Hom(A,T)|` exceeds `cap`.
    pub fn new(g: &GroupSpec, torsion: &[u64], cap: u64) -> Result<Self> {
        let rank = g.rank() as u32;
        let count = torsion
            .iter()
            .fold(1u128, |acc, &q| acc.saturating_mul(u128::from(q).saturating_pow(rank)));
        let work = count.saturating_mul(g.weyl_order());
        if work > u128::from(cap) {
            return Err(Error::CapExceeded { needed: work, cap });
        }
        let e = torsion.iter().fold(1u64, |acc, &q| lcm(acc, q));
        let denominator = u32::try_from(e).map_err(|_| Error::CapExceeded { needed: u128::from(e), cap })?;
        let mut free = Vec::with_capacity(g.coords());
        let mut su_blocks = Vec::new();
        for (f, off) in g.factors().iter().zip(g.offsets()) {
            for i in 0..f.coords() {
                free.push(!(f.kind == FactorKind::Su && i + 1 == f.coords()));
            }
            if f.kind == FactorKind::Su {
                su_blocks.push((off, off + f.coords() - 1));
            }
        }
        Ok(Self {
            group: g.clone(),
            torsion: torsion.to_vec(),
            denominator,
            free,
            su_blocks,
            count: count as u64,
            weyl: enumerate_weyl(g, cap)?,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn element(&self, mut index: u64) -> HomElement {
        let n = self.free.len();
        let mut points = vec![vec![0u32; n]; self.torsion.len()];
        for (j, &q) in self.torsion.iter().enumerate().rev() {
            let step = self.denominator / q as u32;
            for i in (0..n).rev() {
                if self.free[i] {
                    points[j][i] = (index % q) as u32 * step;
                    index /= q;
                }
            }
            for &(start, last) in &self.su_blocks {
                let s: u64 = points[j][start..last].iter().map(|&a| u64::from(a)).sum();
                let e = u64::from(self.denominator);
                points[j][last] = ((e - s % e) % e) as u32;
            }
        }
        HomElement { denominator: self.denominator, points }
    }

    pub fn index_of(&self, f: &HomElement) -> u64 {
        let mut index = 0u64;
        for (p, &q) in f.points.iter().zip(&self.torsion) {
            let step = self.denominator / q as u32;
            for (i, &a) in p.iter().enumerate() {
                if self.free[i] {
                    index = index * q + u64::from(a / step);
                }
            }
        }
        index
    }

    pub fn elements(&self) -> impl Iterator<Item = HomElement> + '_ {
        (0..self.count).map(|i| self.element(i))
    }

    pub fn fix_count(&self, w: &WeylElement) -> u64 {
        (0..self.count)
            .into_par_iter()
            .filter(|&i| {
                let f = self.element(i);
                act(w, &f) == f
            })
            .count() as u64
    }

    /// Fixed-point counts for every Weyl element, in enumeration order.
    pub fn fix_counts(&self) -> Vec<u64> {
        self.weyl.iter().map(|w| self.fix_count(w)).collect()
    }

    pub fn burnside_count(&self) -> Result<u64> {
        let total: u128 = self.fix_counts().iter().map(|&c| u128::from(c)).sum();
        let order = self.group.weyl_order();
        if !total.is_multiple_of(order) {
            return Err(Error::Internal(format!("Burnside sum {total} not divisible by |W| = {order}")));
        }
        Ok((total / order) as u64)
    }

    /// Indices of the Weyl elements fixing `f`.
    pub fn stabilizer(&self, f: &HomElement) -> Vec<usize> {
        self.weyl
            .iter()
            .enumerate()
            .filter(|(_, w)| act(w, f) == *f)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn orbits(&self) -> OrbitTable {
        let mut visited = vec![false; self.count as usize];
        let mut starts = Vec::new();
        for i in 0..self.count {
            if visited[i as usize] {
                continue;
            }
            let f = self.element(i);
            for w in &self.weyl {
                visited[self.index_of(&act(w, &f)) as usize] = true;
            }
            starts.push(f);
        }
        let order = self.weyl.len() as u64;
        let rows = starts
            .into_par_iter()
            .map(|f| {
                let stabilizer = self.stabilizer(&f);
                let stabilizer_order = stabilizer.len() as u64;
                OrbitRow {
                    representative: f,
                    orbit_size: order / stabilizer_order,
                    stabilizer,
                    stabilizer_order,
                }
            })
            .collect();
        OrbitTable {
            denominator: self.denominator,
            hom_count: self.count,
            weyl_order: order,
            rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRow {
    pub representative: HomElement,
    pub orbit_size: u64,
    /// Indices into the [`enumerate_weyl`] order.
    pub stabilizer: Vec<usize>,
    pub stabilizer_order: u64,
}

/// W-orbits on `Hom(A, T)`, sorted by their lexicographically minimal representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub denominator: u32,
    pub hom_count: u64,
    pub weyl_order: u64,
    pub rows: Vec<OrbitRow>,
}

impl OrbitTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn enumerate_hom(torsion: &[u64], g: &GroupSpec, cap: u64) -> Result<Vec<HomElement>> {
    let space = HomSpace::new(g, torsion, cap)?;
    Ok(space.elements().collect())
}

pub fn orbits(g: &GroupSpec, torsion: &[u64], cap: u64) -> Result<OrbitTable> {
    Ok(HomSpace::new(g, torsion, cap)?.orbits())
}

pub fn burnside_count(g: &GroupSpec, torsion: &[u64], cap: u64) -> Result<u64> {
    HomSpace::new(g, torsion, cap)?.burnside_count()
}

pub fn fix_count(w: &WeylElement, torsion: &[u64], g: &GroupSpec, cap: u64) -> Result<u64> {
    Ok(HomSpace::new(g, torsion, cap)?.fix_count(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ClassicalFactor;

    const CAP: u64 = 10_000_000;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn pi_spec_normalization() {
        let pi = PiSpec::new(vec![0, 2, 0, 3]);
        assert_eq!(pi.free_rank(), 2);
        assert_eq!(pi.torsion(), vec![2, 3]);
        assert_eq!(pi.to_string(), "Z^2+Z/2+Z/3");
        assert_eq!(PiSpec::new(vec![]).to_string(), "0");
    }

    #[test]
    fn enumerate_examples() {
        let su2 = g("SU(2)");
        let h = enumerate_hom(&[2], &su2, CAP).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].points(), &[vec![0, 0]]);
        assert_eq!(h[1].points(), &[vec![1, 1]]);
        assert_eq!(enumerate_hom(&[2, 3], &su2, CAP).unwrap().len(), 6);
        let trivial = enumerate_hom(&[], &g("Sp(3)xU(2)"), CAP).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].points().is_empty());
    }

    #[test]
    fn enumeration_is_sorted_valid_and_indexed() {
        for (s, a) in [("SU(3)", vec![3, 2]), ("Sp(2)", vec![4]), ("U(2)xSU(2)", vec![2, 2])] {
            let grp = g(s);
            let space = HomSpace::new(&grp, &a, CAP).unwrap();
            let all: Vec<_> = space.elements().collect();
            let expected: u64 = a.iter().map(|q| q.pow(grp.rank() as u32)).product();
            assert_eq!(all.len() as u64, expected);
            for (i, f) in all.iter().enumerate() {
                f.validate(&grp, &a).unwrap();
                assert_eq!(space.index_of(f), i as u64);
            }
            assert!(all.windows(2).all(|p| p[0] < p[1]), "{s}");
        }
    }

    #[test]
    fn action_examples() {
        let su2 = g("SU(2)");
        let w = enumerate_weyl(&su2, CAP).unwrap();
        let f = HomElement::new(3, vec![vec![1, 2]]);
        assert_eq!(act(&w[0], &f), f);
        assert_eq!(act(&w[1], &f), HomElement::new(3, vec![vec![2, 1]]));

        let sp1 = g("Sp(1)");
        let w = enumerate_weyl(&sp1, CAP).unwrap();
        let f = HomElement::new(4, vec![vec![1]]);
        assert_eq!(act(&w[1], &f), HomElement::new(4, vec![vec![3]]));
    }

    #[test]
    fn orbit_examples() {
        let su2 = g("SU(2)");
        let t = orbits(&su2, &[3], CAP).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t.rows[0].orbit_size, t.rows[0].stabilizer_order), (1, 2));
        assert_eq!((t.rows[1].orbit_size, t.rows[1].stabilizer_order), (2, 1));
        assert_eq!(t.rows[1].representative.points(), &[vec![1, 2]]);

        let t = orbits(&su2, &[2, 3], CAP).unwrap();
        let mut sizes: Vec<_> = t.rows.iter().map(|r| r.orbit_size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2]);

        let t = orbits(&su2, &[2], CAP).unwrap();
        assert!(t.rows.iter().all(|r| r.stabilizer_order == 2));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn burnside_and_fix_examples() {
        let su2 = g("SU(2)");
        let w = enumerate_weyl(&su2, CAP).unwrap();
        assert_eq!(burnside_count(&su2, &[3], CAP).unwrap(), 2);
        assert_eq!(burnside_count(&su2, &[2, 3], CAP).unwrap(), 4);
        assert_eq!(burnside_count(&g("Sp(2)xU(1)"), &[], CAP).unwrap(), 1);
        assert_eq!(fix_count(&w[0], &[2, 3], &su2, CAP).unwrap(), 6);
        assert_eq!(fix_count(&w[1], &[3], &su2, CAP).unwrap(), 1);
        assert_eq!(fix_count(&w[1], &[2], &su2, CAP).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            HomSpace::new(&g("SU(4)"), &[5, 5], 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn product_count_identity() {
        let a = [2u64, 3];
        let g1 = g("SU(3)");
        let g2 = g("Sp(1)");
        let both = GroupSpec::new(vec![ClassicalFactor::su(3), ClassicalFactor::sp(1)]);
        let n = |grp: &GroupSpec| HomSpace::new(grp, &a, CAP).unwrap().len();
        assert_eq!(n(&both), n(&g1) * n(&g2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn group_strategy() -> impl Strategy<Value = GroupSpec> {
            prop_oneof![
                Just("SU(2)"), Just("SU(3)"), Just("U(2)"), Just("Sp(1)"),
                Just("Sp(2)"), Just("SU(2)xSU(2)"), Just("U(1)xSp(1)"), Just("SU(4)"),
            ]
            .prop_map(|s| s.parse().unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn burnside_matches_orbits(grp in group_strategy(), a in proptest::collection::vec(2u64..6, 0..3)) {
                let space = HomSpace::new(&grp, &a, CAP).unwrap();
                let table = space.orbits();
                prop_assert_eq!(space.burnside_count().unwrap(), table.len() as u64);
                let total: u64 = table.rows.iter().map(|r| r.orbit_size).sum();
                prop_assert_eq!(total, space.len());
                for row in &table.rows {
                    prop_assert_eq!(row.orbit_size * row.stabilizer_order, table.weyl_order);
                    // representative is the minimum of its orbit
                    for w in space.weyl() {
                        prop_assert!(row.representative <= act(w, &row.representative));
                    }
                }
                prop_assert!(table.rows.windows(2).all(|p| p[0].representative < p[1].representative));
            }

            #[test]
            fn action_is_a_group_action(grp in group_strategy(), a in proptest::collection::vec(2u64..5, 1..3), seed in 0u64..1000) {
                let space = HomSpace::new(&grp, &a, CAP).unwrap();
                let f = space.element(seed % space.len());
                let w = space.weyl();
                let (x, y) = (&w[seed as usize % w.len()], &w[(seed as usize * 7 + 3) % w.len()]);
                prop_assert_eq!(act(x, &act(y, &f)), act(&x.compose(y), &f));
                prop_assert_eq!(act(&x.inverse(), &act(x, &f)), f);
            }
        }
    }
}
