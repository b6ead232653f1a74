//! Stable wedge decomposition of `Hom(pi, G)` indexed by nonempty subsets of
//! the generators of `pi`.
//!
//! After one suspension `Hom(pi, G)` splits as a wedge over subsets `m` of
//! `Hom(P_m(pi), G) / S_1(P_m(pi), G)`, where `P_m(pi)` keeps the cyclic
//! summands in `m` and `S_1` is the subspace with some coordinate trivial.
//! Rationally each factor is obtained from Poincaré polynomials by
//! inclusion–exclusion over `m`. For `G = SU(2)` each factor also has an
//! explicit homotopy type: spheres, disjoint unions of 2-spheres and Thom
//! spaces of multiples of the tautological line bundle over `RP^2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::cohomology::poincare_total;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::poly::{IntPoly, RationalPoly};
use crate::torsion::{HomSpace, PiSpec};

/// Maximum number of generators for which all subsets are enumerated.
pub const MAX_GENERATORS: usize = 20;

/// Strictly increasing, zero-based positions into a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex(Vec<usize>);

impl SubsetIndex {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.is_empty() || positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::validation("subset", format!("{positions:?} is not a nonempty increasing list")));
        }
        Ok(Self(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    /// `P_m(pi)`.
    pub fn quotient(&self, pi: &PiSpec) -> Result<PiSpec> {
        let p = pi.presentation();
        self.0
            .iter()
            .map(|&i| {
                p.get(i)
                    .copied()
                    .ok_or_else(|| Error::validation("subset", format!("position {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PiSpec::new)
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", one_based.join(","))
    }
}

/// All nonempty subsets with their quotient groups, ordered by size then lexicographically.
pub fn enumerate_factors(pi: &PiSpec) -> Result<Vec<(SubsetIndex, PiSpec)>> {
    let m = pi.presentation().len();
    if m > MAX_GENERATORS {
        return Err(Error::CapExceeded {
            needed: 1u128 << m,
            cap: 1u64 << MAX_GENERATORS,
        });
    }
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << m))
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .map(|s| {
            let idx = SubsetIndex(s);
            let q = idx.quotient(pi)?;
            Ok((idx, q))
        })
        .collect()
}

fn sorted_key(presentation: &[u64]) -> Vec<u64> {
    let mut k = presentation.to_vec();
    k.sort_unstable();
    k
}

fn sub_keys(key: &[u64]) -> impl Iterator<Item = (usize, Vec<u64>)> + '_ {
    (0u32..(1 << key.len())).map(move |mask| {
        let sub: Vec<u64> = (0..key.len()).filter(|&i| mask >> i & 1 == 1).map(|i| key[i]).collect();
        (key.len() - sub.len(), sorted_key(&sub))
    })
}

/// Memoized Poincaré polynomials keyed by sorted presentation (the isomorphism type of `pi`).
struct PoincareTable {
    totals: HashMap<Vec<u64>, RationalPoly>,
}

impl PoincareTable {
    fn build(g: &GroupSpec, keys: impl IntoIterator<Item = Vec<u64>>, cap: u64) -> Result<Self> {
        let mut distinct: Vec<Vec<u64>> = keys.into_iter().flat_map(|k| sub_keys(&k).map(|(_, s)| s).collect::<Vec<_>>()).collect();
        distinct.sort();
        distinct.dedup();
        let totals = distinct
            .into_par_iter()
            .map(|k| {
                let p = poincare_total(g, &PiSpec::new(k.clone()), cap)?;
                Ok((k, RationalPoly::from_int_poly(&p)))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(Self { totals })
    }

    fn reduced(&self, key: &[u64]) -> Result<IntPoly> {
        let mut acc = RationalPoly::zero();
        for (missing, sub) in sub_keys(key) {
            let term = &self.totals[&sub];
            acc = if missing % 2 == 0 { &acc + term } else { &acc - term };
        }
        acc.assert_integer_coeffs()
    }
}

/// Reduced Poincaré polynomial of the stable factor indexed by `m`.
pub fn reduced_poincare_factor(g: &GroupSpec, pi: &PiSpec, m: &SubsetIndex, cap: u64) -> Result<IntPoly> {
    let key = sorted_key(m.quotient(pi)?.presentation());
    PoincareTable::build(g, [key.clone()], cap)?.reduced(&key)
}

/// Formal wedge inventory of `SU(2)` stable factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StableFactorDescriptor {
    /// Dimension to number of sphere summands.
    pub spheres: BTreeMap<usize, u64>,
    /// `k` to number of Thom pieces `(RP^2)^{k lambda}/s_k(RP^2)`, `k >= 2`.
    pub thom_pieces: BTreeMap<usize, u64>,
    /// Dimension to number of unreduced sphere components (`S^j` with a disjoint basepoint).
    pub plus_spheres: BTreeMap<usize, u64>,
    pub s0_count: u64,
}

fn bump(map: &mut BTreeMap<usize, u64>, key: usize, by: u64) {
    if by > 0 {
        *map.entry(key).or_insert(0) += by;
    }
}

impl StableFactorDescriptor {
    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty() && self.thom_pieces.is_empty() && self.plus_spheres.is_empty() && self.s0_count == 0
    }

    fn add_thom(&mut self, k: usize, count: u64) {
        // The k = 1 piece is RP^3/RP^2 = S^3.
        if k == 1 {
            bump(&mut self.spheres, 3, count);
        } else {
            bump(&mut self.thom_pieces, k, count);
        }
    }

    pub fn merge(&mut self, other: &Self) {
        for (&k, &v) in &other.spheres {
            bump(&mut self.spheres, k, v);
        }
        for (&k, &v) in &other.thom_pieces {
            bump(&mut self.thom_pieces, k, v);
        }
        for (&k, &v) in &other.plus_spheres {
            bump(&mut self.plus_spheres, k, v);
        }
        self.s0_count += other.s0_count;
    }
}

fn serialize_desc_map<S: Serializer>(map: &BTreeMap<usize, u64>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = serializer.serialize_map(Some(map.len()))?;
    for (k, v) in map.iter().rev() {
        m.serialize_entry(&k.to_string(), v)?;
    }
    m.end()
}

struct DescMap<'a>(&'a BTreeMap<usize, u64>);

impl Serialize for DescMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_desc_map(self.0, serializer)
    }
}

impl Serialize for StableFactorDescriptor {
    /// Maps are written with dimensions as string keys in decreasing order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StableFactorDescriptor", 4)?;
        s.serialize_field("thom", &DescMap(&self.thom_pieces))?;
        s.serialize_field("spheres", &DescMap(&self.spheres))?;
        s.serialize_field("plus_spheres", &DescMap(&self.plus_spheres))?;
        s.serialize_field("s0", &self.s0_count)?;
        s.end()
    }
}

impl fmt::Display for StableFactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mult = |c: u64| if c == 1 { String::new() } else { format!("{c}*") };
        for (k, &c) in self.thom_pieces.iter().rev() {
            parts.push(format!("{}Thom({k})", mult(c)));
        }
        for (d, &c) in self.spheres.iter().rev() {
            parts.push(format!("{}S^{d}", mult(c)));
        }
        for (d, &c) in self.plus_spheres.iter().rev() {
            parts.push(format!("{}S^{d}_+", mult(c)));
        }
        if self.s0_count > 0 {
            parts.push(format!("{}S^0", mult(self.s0_count)));
        }
        if parts.is_empty() {
            write!(f, "*")
        } else {
            write!(f, "{}", parts.join(" v "))
        }
    }
}

/// Explicit stable type of `Hom(Q, SU(2)) / S_1(Q, SU(2))` for a quotient `Q = P_m(pi)`.
pub fn su2_factor_type(g: &GroupSpec, quotient: &PiSpec) -> Result<StableFactorDescriptor> {
    if !g.is_su2() {
        return Err(Error::UnsupportedGroup(g.to_string()));
    }
    let k = quotient.free_rank();
    let torsion = quotient.torsion();
    let mut d = StableFactorDescriptor::default();
    let prod: u64 = torsion.iter().map(|q| q - 1).product();
    let some_odd = torsion.iter().any(|q| q % 2 == 1);

    match (k, torsion.is_empty()) {
        (0, true) => {}
        (0, false) if some_odd => bump(&mut d.plus_spheres, 2, prod / 2),
        (0, false) => {
            bump(&mut d.plus_spheres, 2, (prod - 1) / 2);
            d.s0_count = 1;
        }
        (1, true) => bump(&mut d.spheres, 3, 1),
        (_, true) => d.add_thom(k, 1),
        (_, false) => {
            let a = if some_odd {
                prod / 2
            } else {
                d.add_thom(k, 1);
                (prod - 1) / 2
            };
            bump(&mut d.spheres, k + 2, a);
            bump(&mut d.spheres, k, a);
        }
    }
    Ok(d)
}

/// Reduced rational Poincaré polynomial of a descriptor.
pub fn descriptor_poincare(d: &StableFactorDescriptor) -> RationalPoly {
    let int = |c: u64| BigRational::from_integer(BigInt::from(c));
    let t = |c: u64, j: usize| RationalPoly::monomial(int(c), j);
    let mut acc = RationalPoly::constant(int(d.s0_count));
    for (&j, &c) in &d.spheres {
        acc = &acc + &t(c, j);
    }
    for (&j, &c) in &d.plus_spheres {
        acc = &acc + &(&t(c, 0) + &t(c, j));
    }
    for (&k, &c) in &d.thom_pieces {
        acc = &acc + &t(c, if k % 2 == 0 { k } else { k + 2 });
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingRow {
    pub subset: SubsetIndex,
    pub quotient: PiSpec,
    pub reduced_poincare: IntPoly,
    pub su2_descriptor: Option<StableFactorDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub rows: Vec<SplittingRow>,
    /// Aggregated inventory; present only for `G = SU(2)`.
    pub totals: Option<StableFactorDescriptor>,
    /// `1 + sum of reduced polynomials == P(Hom(pi, G))` and, for `SU(2)`,
    /// every descriptor matches its reduced polynomial.
    pub consistency: bool,
}

pub fn splitting_report(g: &GroupSpec, pi: &PiSpec, cap: u64) -> Result<SplittingReport> {
    let factors = enumerate_factors(pi)?;
    let full_key = sorted_key(pi.presentation());
    let table = PoincareTable::build(g, [full_key.clone()], cap)?;
    let su2 = g.is_su2();

    let mut reduced_cache: HashMap<Vec<u64>, IntPoly> = HashMap::new();
    let mut rows = Vec::with_capacity(factors.len());
    for (subset, quotient) in factors {
        let key = sorted_key(quotient.presentation());
        let reduced_poincare = match reduced_cache.get(&key) {
            Some(p) => p.clone(),
            None => {
                let p = table.reduced(&key)?;
                reduced_cache.insert(key, p.clone());
                p
            }
        };
        let su2_descriptor = if su2 { Some(su2_factor_type(g, &quotient)?) } else { None };
        rows.push(SplittingRow { subset, quotient, reduced_poincare, su2_descriptor });
    }

    let total = table.totals[&full_key].clone();
    let summed = rows
        .iter()
        .fold(RationalPoly::one(), |acc, r| &acc + &RationalPoly::from_int_poly(&r.reduced_poincare));
    let descriptors_agree = rows.iter().all(|r| {
        r.su2_descriptor
            .as_ref()
            .is_none_or(|d| descriptor_poincare(d) == RationalPoly::from_int_poly(&r.reduced_poincare))
    });
    let totals = su2.then(|| {
        rows.iter().fold(StableFactorDescriptor::default(), |mut acc, r| {
            if let Some(d) = &r.su2_descriptor {
                acc.merge(d);
            }
            acc
        })
    });
    Ok(SplittingReport {
        rows,
        totals,
        consistency: summed == total && descriptors_agree,
    })
}

/// Symbolic stable type of `Hom(Z + A, G)` when `W` acts freely on the
/// nontrivial elements of `Hom(A, T)`: after one suspension it is
/// `(v_k T) v (v_k G/T ^ T) v G v (u_k G/T)_+` with `k` orbits of nontrivial elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOneWedge {
    pub k: u64,
}

impl RankOneWedge {
    /// `(piece, multiplicity)` pairs; pieces with multiplicity zero are omitted.
    pub fn pieces(&self) -> Vec<(&'static str, u64)> {
        [("T", self.k), ("G/T^T", self.k), ("G", 1), ("(G/T)_+", self.k)]
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    /// Unreduced Poincaré polynomial implied by the wedge.
    pub fn poincare(&self, g: &GroupSpec) -> RationalPoly {
        let one = RationalPoly::one();
        let degrees = g.degrees();
        let torus = RationalPoly::from_ints(&[1, 1]).pow(g.rank() as u32);
        let flag = degrees.iter().fold(one.clone(), |acc, &d| {
            let num = &one - &RationalPoly::monomial(BigRational::one(), 2 * d);
            &acc * &num.exact_div(&RationalPoly::from_ints(&[1, 0, -1])).expect("1 - t^2 divides 1 - t^2d")
        });
        let group = degrees
            .iter()
            .fold(one.clone(), |acc, &d| &acc * &(&one + &RationalPoly::monomial(BigRational::one(), 2 * d - 1)));
        let k = RationalPoly::constant(BigRational::from_integer(BigInt::from(self.k)));
        let reduced_torus = &torus - &one;
        let smash = &(&flag - &one) * &reduced_torus;
        // G contributes its reduced polynomial; the base point adds 1 back.
        &(&k * &(&(&reduced_torus + &smash) + &flag)) + &group
    }
}

impl fmt::Display for RankOneWedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k;
        if k == 0 {
            return write!(f, "S(G)");
        }
        write!(f, "S(v_{k} T) v S(v_{k} G/T^T) v S(G) v (u_{k} G/T)_+")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneOutcome {
    pub wedge: Option<RankOneWedge>,
    pub note: String,
}

pub fn rank1_general_descriptor(g: &GroupSpec, pi: &PiSpec, cap: u64) -> Result<RankOneOutcome> {
    if pi.free_rank() != 1 {
        return Err(Error::validation("pi", "the rank-one wedge needs exactly one free generator"));
    }
    let torsion = pi.torsion();
    let space = HomSpace::new(g, &torsion, cap)?;
    let table = space.orbits();
    if let Some(row) = table
        .rows
        .iter()
        .find(|r| !r.representative.is_trivial() && r.stabilizer_order != 1)
    {
        return Ok(RankOneOutcome {
            wedge: None,
            note: format!(
                "W does not act freely on Hom(A,T) minus the trivial element: {:?} has stabilizer of order {}",
                row.representative.nested(g),
                row.stabilizer_order
            ),
        });
    }
    let order = table.weyl_order;
    let nontrivial = space.len() - 1;
    if nontrivial % order != 0 {
        return Err(Error::Internal(format!("|W| = {order} does not divide |Hom(A,T)| - 1 = {nontrivial}")));
    }
    let k = nontrivial / order;
    Ok(RankOneOutcome {
        wedge: Some(RankOneWedge { k }),
        note: format!("W acts freely on the {nontrivial} nontrivial elements, giving {k} free orbits"),
    })
}
