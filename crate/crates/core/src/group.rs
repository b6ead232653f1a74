//! Products of classical compact groups and their Weyl groups.
//!
//! Every factor's maximal torus is modelled by a block of coordinates in
//! `Q/Z`: `r` coordinates summing to zero for `SU(r)`, `q` free coordinates
//! for `U(q)`, and `k` coordinates for `Sp(k)`. Weyl groups act by (signed)
//! permutations of those coordinates.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::poly::RationalPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Su,
    U,
    Sp,
}

impl FactorKind {
    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Su => "SU",
            FactorKind::U => "U",
            FactorKind::Sp => "Sp",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "SU" => Some(FactorKind::Su),
            "U" => Some(FactorKind::U),
            "Sp" => Some(FactorKind::Sp),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalFactor {
    pub kind: FactorKind,
    pub size: usize,
}

impl ClassicalFactor {
    pub fn new(kind: FactorKind, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::validation("size", format!("{}(0) is not a group", kind.name())));
        }
        Ok(Self { kind, size })
    }

    pub fn su(r: usize) -> Self {
        Self::new(FactorKind::Su, r).expect("SU size must be positive")
    }

    pub fn u(q: usize) -> Self {
        Self::new(FactorKind::U, q).expect("U size must be positive")
    }

    pub fn sp(k: usize) -> Self {
        Self::new(FactorKind::Sp, k).expect("Sp size must be positive")
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            FactorKind::Su => self.size - 1,
            FactorKind::U | FactorKind::Sp => self.size,
        }
    }

    /// Number of torus coordinates used to model this factor.
    pub fn coords(&self) -> usize {
        self.size
    }

    /// Order of the Weyl group, saturating at `u128::MAX`.
    pub fn weyl_order(&self) -> u128 {
        let fact = (1..=self.size as u128).fold(1u128, |a, b| a.saturating_mul(b));
        match self.kind {
            FactorKind::Su | FactorKind::U => fact,
            FactorKind::Sp => fact.saturating_mul(1u128.checked_shl(self.size as u32).unwrap_or(u128::MAX)),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        match self.kind {
            FactorKind::Su => (2..=self.size).collect(),
            FactorKind::U => (1..=self.size).collect(),
            FactorKind::Sp => (1..=self.size).map(|i| 2 * i).collect(),
        }
    }

    pub fn is_signed(&self) -> bool {
        self.kind == FactorKind::Sp
    }

    /// Lists the factor's Weyl group: permutations in lexicographic order of
    /// their one-line word, each followed by its sign vectors (`+` before `-`).
    fn weyl_elements(&self) -> Vec<SignedPerm> {
        let n = self.size;
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if self.is_signed() {
                for mask in 0u64..(1u64 << n) {
                    let flip = (0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect();
                    out.push(SignedPerm { perm: perm.clone(), flip });
                }
            } else {
                out.push(SignedPerm { perm: perm.clone(), flip: vec![false; n] });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }
}

impl fmt::Display for ClassicalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.name(), self.size)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A compact Lie group given as an ordered product of classical factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<ClassicalFactor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<ClassicalFactor>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[ClassicalFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(ClassicalFactor::rank).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.weyl_order()))
    }

    /// Invariant degrees, factor by factor.
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().flat_map(ClassicalFactor::degrees).collect()
    }

    pub fn simply_connected(&self) -> bool {
        self.factors.iter().all(|f| f.kind != FactorKind::U)
    }

    /// Rank of the free abelian group `pi_1(G)`.
    pub fn pi1_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.kind == FactorKind::U).count()
    }

    /// Total number of torus coordinates.
    pub fn coords(&self) -> usize {
        self.factors.iter().map(ClassicalFactor::coords).sum()
    }

    /// Real dimension of the flag manifold `G/T`.
    pub fn flag_dimension(&self) -> usize {
        2 * self.degrees().iter().map(|d| d - 1).sum::<usize>()
    }

    pub fn is_su2(&self) -> bool {
        self.factors == [ClassicalFactor::su(2)]
    }

    /// First coordinate of each factor in the flat coordinate layout.
    pub fn offsets(&self) -> Vec<usize> {
        self.factors
            .iter()
            .scan(0, |acc, f| {
                let start = *acc;
                *acc += f.coords();
                Some(start)
            })
            .collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses products such as `SU(2)xU(1)xSp(3)`; `×` and `*` also separate factors.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for raw in s.split(['x', '×', '*']) {
            let part = raw.trim();
            let bad = || Error::validation("group", format!("cannot parse factor `{part}`"));
            let open = part.find('(').ok_or_else(bad)?;
            let inner = part[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let kind = FactorKind::from_name(part[..open].trim()).ok_or_else(|| {
                Error::validation("group", format!("`{}` is not one of SU, U, Sp", &part[..open]))
            })?;
            let size = inner.trim().parse::<usize>().map_err(|_| bad())?;
            factors.push(ClassicalFactor::new(kind, size)?);
        }
        if factors.is_empty() {
            return Err(Error::validation("group", "empty product"));
        }
        Ok(Self::new(factors))
    }
}

/// A signed permutation of a coordinate block: coordinate `i` is sent to
/// `perm[i]`, negated when `flip[i]` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), flip: vec![false; n] }
    }

    pub fn new(perm: Vec<usize>, flip: Vec<bool>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::validation("perm", format!("{perm:?} is not a permutation")));
            }
        }
        if flip.len() != n {
            return Err(Error::validation("flip", "sign vector length mismatch"));
        }
        Ok(Self { perm, flip })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flip(&self) -> &[bool] {
        &self.flip
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let flip = other
            .perm
            .iter()
            .zip(&other.flip)
            .map(|(&j, &f)| f ^ self.flip[j])
            .collect();
        Self { perm, flip }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            flip[self.perm[i]] = self.flip[i];
        }
        Self { perm, flip }
    }

    /// Signed cycles as `(length, sign)` pairs, in order of their smallest coordinate.
    pub fn signed_cycles(&self) -> Vec<(usize, i8)> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut len, mut negative, mut i) = (0, false, start);
            while !seen[i] {
                seen[i] = true;
                negative ^= self.flip[i];
                i = self.perm[i];
                len += 1;
            }
            out.push((len, if negative { -1 } else { 1 }));
        }
        out
    }
}

/// An element of the Weyl group of a [`GroupSpec`], one signed permutation per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    blocks: Vec<SignedPerm>,
}

impl WeylElement {
    pub fn identity(g: &GroupSpec) -> Self {
        Self {
            blocks: g.factors.iter().map(|f| SignedPerm::identity(f.coords())).collect(),
        }
    }

    /// Builds an element from per-factor blocks, checking shapes and that
    /// only `Sp` factors carry sign flips.
    pub fn from_blocks(g: &GroupSpec, blocks: Vec<SignedPerm>) -> Result<Self> {
        if blocks.len() != g.factors.len() {
            return Err(Error::validation("weyl", "block count differs from factor count"));
        }
        for (f, b) in g.factors.iter().zip(&blocks) {
            if b.len() != f.coords() {
                return Err(Error::validation("weyl", format!("block of size {} for {f}", b.len())));
            }
            if !f.is_signed() && b.flip.iter().any(|&x| x) {
                return Err(Error::validation("weyl", format!("sign flip in {f}")));
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[SignedPerm] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.perm.iter().enumerate().all(|(i, &p)| i == p) && b.flip.iter().all(|&x| !x))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.compose(b)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { blocks: self.blocks.iter().map(SignedPerm::inverse).collect() }
    }

    /// Applies the element to a flat vector of residues modulo `modulus`.
    pub fn act_residues(&self, x: &[u32], modulus: u32, out: &mut [u32]) {
        let mut offset = 0;
        for b in &self.blocks {
            for i in 0..b.perm.len() {
                let v = x[offset + i];
                out[offset + b.perm[i]] = if b.flip[i] && v != 0 { modulus - v } else { v };
            }
            offset += b.perm.len();
        }
    }

    pub fn reflection_det_factors(&self, g: &GroupSpec) -> CycleData {
        CycleData {
            factors: g
                .factors
                .iter()
                .zip(&self.blocks)
                .map(|(f, b)| (f.kind, b.signed_cycles()))
                .collect(),
        }
    }

    /// Trace on the reflection representation.
    pub fn trace(&self, g: &GroupSpec) -> i64 {
        g.factors
            .iter()
            .zip(&self.blocks)
            .map(|(f, b)| {
                let fixed: i64 = (0..b.perm.len())
                    .filter(|&i| b.perm[i] == i)
                    .map(|i| if b.flip[i] { -1 } else { 1 })
                    .sum();
                match f.kind {
                    FactorKind::Su => fixed - 1,
                    _ => fixed,
                }
            })
            .sum()
    }
}

/// Signed cycle type of a Weyl element, factor by factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleData {
    pub factors: Vec<(FactorKind, Vec<(usize, i8)>)>,
}

impl CycleData {
    /// `det(1 - c * y^power * w)` on the reflection representation, as a
    /// polynomial in `y`, for `c = ±1`.
    pub fn det_one_minus(&self, c: i64, power: usize) -> Result<RationalPoly> {
        let c = BigRational::from_integer(c.into());
        let mut acc = RationalPoly::one();
        for (kind, cycles) in &self.factors {
            let mut block = RationalPoly::one();
            for &(len, sign) in cycles {
                // 1 - sign * (c y^power)^len
                let lead = BigRational::from_integer(i64::from(sign).into()) * pow(&c, len);
                let term = &RationalPoly::one() - &RationalPoly::monomial(lead, power * len);
                block = &block * &term;
            }
            if *kind == FactorKind::Su {
                let trivial = &RationalPoly::one() - &RationalPoly::monomial(c.clone(), power);
                block = block.exact_div(&trivial).map_err(|e| {
                    Error::Internal(format!("SU reflection determinant: {e}"))
                })?;
            }
            acc = &acc * &block;
        }
        Ok(acc)
    }

    /// `det(1 - x w)`.
    pub fn det_one_minus_x(&self) -> Result<RationalPoly> {
        self.det_one_minus(1, 1)
    }

    /// `det(1 + x w)`.
    pub fn det_one_plus_x(&self) -> Result<RationalPoly> {
        self.det_one_minus(-1, 1)
    }
}

fn pow(c: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * c)
}

/// Lists the Weyl group: identity first, factor-wise lexicographic order with
/// the first factor most significant.
pub fn enumerate_weyl(g: &GroupSpec, cap: u64) -> Result<Vec<WeylElement>> {
    let order = g.weyl_order();
    if order > u128::from(cap) {
        return Err(Error::CapExceeded { needed: order, cap });
    }
    let per_factor: Vec<Vec<SignedPerm>> = g.factors.iter().map(ClassicalFactor::weyl_elements).collect();
    let mut out = vec![WeylElement { blocks: Vec::with_capacity(g.factors.len()) }];
    for elems in &per_factor {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |e| {
                    let mut w = prefix.clone();
                    w.blocks.push(e.clone());
                    w
                })
            })
            .collect();
    }
    Ok(out)
}
