//! Equivariant K-theory ranks and fundamental groups of components.

use serde::Serialize;

use crate::centralizer::{centralizer_invariants, centralizer_type};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::torsion::{HomElement, OrbitTable, PiSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KTheoryCase {
    FiniteFree,
    RankOneFree,
    RationalOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Freeness {
    FreeOverRG,
    FreeOverRGRational,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryReport {
    pub case: KTheoryCase,
    pub rank: u128,
    pub freeness: Freeness,
    /// `|W|/|W_f|` per orbit; only filled for finite `pi`.
    pub per_orbit_ranks: Vec<u128>,
    pub notes: String,
}

const TORSION_REMARK: &str = "integral freeness can fail outside rank <= 1: \
K*_SU(2)(Hom(Z^2, SU(2))) contains torsion as an R(SU(2))-module";

/// Rank and freeness of `K*_G(Hom(pi, G))` over `R(G)`. `table` must be the
/// orbit table of `Hom(A, T)` for the torsion part of `pi`.
pub fn ktheory_report(g: &GroupSpec, pi: &PiSpec, table: &OrbitTable) -> Result<KTheoryReport> {
    let n = pi.free_rank();
    let hom = u128::from(table.hom_count);
    let rational_rank = 1u128
        .checked_shl((n * g.rank()) as u32)
        .and_then(|p| p.checked_mul(hom))
        .ok_or_else(|| Error::Internal("K-theory rank overflows 128 bits".into()))?;

    if n == 0 {
        let per_orbit_ranks = table
            .rows
            .iter()
            .map(|row| Ok(centralizer_invariants(&centralizer_type(&row.representative, g), g)?.representation_rank))
            .collect::<Result<Vec<_>>>()?;
        let sum: u128 = per_orbit_ranks.iter().sum();
        if sum != hom {
            return Err(Error::Internal(format!("orbit ranks sum to {sum}, expected |Hom(pi,T)| = {hom}")));
        }
        return Ok(KTheoryReport {
            case: KTheoryCase::FiniteFree,
            rank: hom,
            freeness: Freeness::FreeOverRG,
            per_orbit_ranks,
            notes: "K^0_G is a free R(G)-module, one summand R(G_f) per orbit; K^1_G = 0".into(),
        });
    }
    if n == 1 && g.simply_connected() {
        return Ok(KTheoryReport {
            case: KTheoryCase::RankOneFree,
            rank: rational_rank,
            freeness: Freeness::FreeOverRG,
            per_orbit_ranks: Vec::new(),
            notes: "K*_G is a free R(G)-module of rank 2^r |Hom(A,T)|".into(),
        });
    }
    let mut notes = String::from("K*_G tensor Q is free over R(G) tensor Q; ");
    if n == 1 {
        notes.push_str("G is not simply connected, so integral freeness is not established; ");
    }
    notes.push_str(TORSION_REMARK);
    Ok(KTheoryReport {
        case: KTheoryCase::RationalOnly,
        rank: rational_rank,
        freeness: Freeness::FreeOverRGRational,
        per_orbit_ranks: Vec::new(),
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Row {
    pub representative: HomElement,
    /// `pi_1` of the component is free abelian of this rank.
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Report {
    pub rows: Vec<Pi1Row>,
}

/// `pi_1` of the component through `(1, f)` is `pi_1(G_f)^n`.
pub fn pi1_report(g: &GroupSpec, pi: &PiSpec, table: &OrbitTable) -> Pi1Report {
    let n = pi.free_rank() as u64;
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let c = centralizer_type(&row.representative, g);
            let b: u64 = c.factors.iter().map(|f| f.pi1_rank() as u64).sum();
            Pi1Row { representative: row.representative.clone(), rank: n * b }
        })
        .collect();
    Pi1Report { rows }
}
