//! Centralizers `G_f` of torsion homomorphisms `f: A -> T`.
//!
//! Coordinates with equal joint values across all generators span a common
//! unitary block. In `Sp(k)` a coordinate `v` and one carrying `-v` are
//! exchanged by a signed transposition, so they share a block; coordinates
//! with `v = -v` span symplectic blocks, one per distinct value.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FactorKind, GroupSpec};
use crate::torsion::HomElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorCentralizer {
    /// `S(U(m_1) x ... x U(m_s))` inside `SU(r)`.
    Su(Vec<usize>),
    /// `U(m_1) x ... x U(m_s)` inside `U(q)`.
    U(Vec<usize>),
    /// `Sp(a_1) x ... x U(m_1) x ...` inside `Sp(k)`.
    Sp { sp_parts: Vec<usize>, u_parts: Vec<usize> },
}

impl FactorCentralizer {
    pub fn weyl_order(&self) -> u128 {
        let fact = |m: usize| (1..=m as u128).product::<u128>();
        match self {
            FactorCentralizer::Su(p) | FactorCentralizer::U(p) => p.iter().map(|&m| fact(m)).product(),
            FactorCentralizer::Sp { sp_parts, u_parts } => {
                let sp: u128 = sp_parts.iter().map(|&m| (1u128 << m) * fact(m)).product();
                sp * u_parts.iter().map(|&m| fact(m)).product::<u128>()
            }
        }
    }

    pub fn pi1_rank(&self) -> usize {
        match self {
            FactorCentralizer::Su(p) => p.len() - 1,
            FactorCentralizer::U(p) => p.len(),
            FactorCentralizer::Sp { u_parts, .. } => u_parts.len(),
        }
    }
}

impl fmt::Display for FactorCentralizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unitary = |p: &[usize]| p.iter().map(|m| format!("U({m})")).collect::<Vec<_>>();
        match self {
            FactorCentralizer::Su(p) if p.len() == 1 => write!(f, "SU({})", p[0]),
            FactorCentralizer::Su(p) => write!(f, "S({})", unitary(p).join("x")),
            FactorCentralizer::U(p) => write!(f, "{}", unitary(p).join("x")),
            FactorCentralizer::Sp { sp_parts, u_parts } => {
                let mut blocks: Vec<String> = sp_parts.iter().map(|m| format!("Sp({m})")).collect();
                blocks.extend(unitary(u_parts));
                write!(f, "{}", blocks.join("x"))
            }
        }
    }
}

/// Block structure of `G_f`, one entry per factor of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralizerType {
    pub factors: Vec<FactorCentralizer>,
}

impl CentralizerType {
    pub fn block_names(&self) -> Vec<String> {
        self.factors.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for CentralizerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.block_names().join(" x "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralizerInvariants {
    pub weyl_order: u128,
    pub pi1_rank: usize,
    /// Rank of `R(G_f)` as a free `R(G)`-module.
    pub representation_rank: u128,
}

/// Groups `items` by key, returning block sizes in order of first appearance.
fn block_sizes<K: PartialEq>(keys: impl IntoIterator<Item = K>) -> Vec<usize> {
    let mut seen: Vec<(K, usize)> = Vec::new();
    for k in keys {
        match seen.iter_mut().find(|(s, _)| *s == k) {
            Some((_, n)) => *n += 1,
            None => seen.push((k, 1)),
        }
    }
    seen.into_iter().map(|(_, n)| n).collect()
}

pub fn centralizer_type(f: &HomElement, g: &GroupSpec) -> CentralizerType {
    let e = f.denominator();
    let negate = |v: &[u32]| v.iter().map(|&a| (e - a) % e).collect::<Vec<_>>();
    let factors = g
        .factors()
        .iter()
        .zip(g.offsets())
        .map(|(factor, off)| {
            let columns: Vec<Vec<u32>> = (off..off + factor.coords()).map(|i| f.column(i)).collect();
            match factor.kind {
                FactorKind::Su => FactorCentralizer::Su(block_sizes(columns)),
                FactorKind::U => FactorCentralizer::U(block_sizes(columns)),
                FactorKind::Sp => {
                    let (self_inverse, paired): (Vec<_>, Vec<_>) =
                        columns.into_iter().partition(|v| negate(v) == *v);
                    let pair_key = |v: Vec<u32>| {
                        let w = negate(&v);
                        if v <= w { (v, w) } else { (w, v) }
                    };
                    FactorCentralizer::Sp {
                        sp_parts: block_sizes(self_inverse),
                        u_parts: block_sizes(paired.into_iter().map(pair_key)),
                    }
                }
            }
        })
        .collect();
    CentralizerType { factors }
}

pub fn centralizer_invariants(c: &CentralizerType, g: &GroupSpec) -> Result<CentralizerInvariants> {
    let weyl_order: u128 = c.factors.iter().map(FactorCentralizer::weyl_order).product();
    let order = g.weyl_order();
    if !order.is_multiple_of(weyl_order) {
        return Err(Error::Internal(format!("|W(G_f)| = {weyl_order} does not divide |W| = {order}")));
    }
    Ok(CentralizerInvariants {
        weyl_order,
        pi1_rank: c.factors.iter().map(FactorCentralizer::pi1_rank).sum(),
        representation_rank: order / weyl_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::HomSpace;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let u3 = g("U(3)");
        let f = HomElement::new(2, vec![vec![0, 0, 1]]);
        let c = centralizer_type(&f, &u3);
        assert_eq!(c.factors, vec![FactorCentralizer::U(vec![2, 1])]);
        let inv = centralizer_invariants(&c, &u3).unwrap();
        assert_eq!((inv.weyl_order, inv.pi1_rank, inv.representation_rank), (2, 2, 3));

        let su2 = g("SU(2)");
        let c = centralizer_type(&HomElement::new(2, vec![vec![1, 1]]), &su2);
        assert_eq!(c.to_string(), "SU(2)");
        let inv = centralizer_invariants(&c, &su2).unwrap();
        assert_eq!((inv.weyl_order, inv.pi1_rank, inv.representation_rank), (2, 0, 1));

        let c = centralizer_type(&HomElement::new(3, vec![vec![1, 2]]), &su2);
        assert_eq!(c.to_string(), "S(U(1)xU(1))");
        let inv = centralizer_invariants(&c, &su2).unwrap();
        assert_eq!((inv.weyl_order, inv.pi1_rank, inv.representation_rank), (1, 1, 2));

        let sp2 = g("Sp(2)");
        let c = centralizer_type(&HomElement::new(4, vec![vec![0, 1]]), &sp2);
        assert_eq!(c.to_string(), "Sp(1)xU(1)");
    }

    #[test]
    fn distinct_self_inverse_values_split_symplectic_blocks() {
        let sp2 = g("Sp(2)");
        let f = HomElement::new(2, vec![vec![0, 1]]);
        let c = centralizer_type(&f, &sp2);
        assert_eq!(c.to_string(), "Sp(1)xSp(1)");
        let space = HomSpace::new(&sp2, &[2], 1000).unwrap();
        assert_eq!(space.stabilizer(&f).len() as u128, centralizer_invariants(&c, &sp2).unwrap().weyl_order);
    }

    #[test]
    fn conjugate_pairs_merge() {
        let sp3 = g("Sp(3)");
        let f = HomElement::new(5, vec![vec![1, 4, 2]]);
        assert_eq!(centralizer_type(&f, &sp3).to_string(), "U(2)xU(1)");
    }

    #[test]
    fn trivial_f_gives_whole_group() {
        let grp = g("SU(3)xU(2)xSp(2)");
        let space = HomSpace::new(&grp, &[2, 3], 10_000_000).unwrap();
        let f = space.element(0);
        assert!(f.is_trivial());
        let inv = centralizer_invariants(&centralizer_type(&f, &grp), &grp).unwrap();
        assert_eq!(inv.weyl_order, grp.weyl_order());
        assert_eq!(inv.pi1_rank, grp.pi1_rank());
    }

    #[test]
    fn weyl_order_matches_stabilizer_everywhere() {
        for (s, a) in [
            ("SU(3)", vec![2, 3]),
            ("Sp(2)", vec![4, 2]),
            ("U(3)", vec![3]),
            ("Sp(3)", vec![6]),
            ("SU(4)", vec![2, 2]),
        ] {
            let grp = g(s);
            let space = HomSpace::new(&grp, &a, 10_000_000).unwrap();
            let table = space.orbits();
            let mut pittie_sum = 0u128;
            for f in space.elements() {
                let c = centralizer_type(&f, &grp);
                let inv = centralizer_invariants(&c, &grp).unwrap();
                let stab = space.stabilizer(&f);
                assert_eq!(inv.weyl_order, stab.len() as u128, "{s} {f:?}");
                let fixed_dim: i64 = stab.iter().map(|&i| space.weyl()[i].trace(&grp)).sum::<i64>()
                    / stab.len() as i64;
                assert_eq!(inv.pi1_rank as i64, fixed_dim, "{s} {f:?}");
            }
            for row in &table.rows {
                let c = centralizer_type(&row.representative, &grp);
                pittie_sum += centralizer_invariants(&c, &grp).unwrap().representation_rank;
            }
            assert_eq!(pittie_sum, u128::from(space.len()));
        }
    }
}
