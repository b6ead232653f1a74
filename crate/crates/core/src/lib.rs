//! Exact invariants of spaces of commuting elements.
//!
//! For a compact Lie group `G` built from `SU(r)`, `U(q)` and `Sp(k)` factors
//! and a finitely generated abelian group `pi = Z^n + A`, this crate computes
//! the components of `Hom(pi, G)`, their rational cohomology, equivariant
//! K-theory ranks, fundamental groups and stable splittings. Everything is
//! exact: polynomials have rational coefficients and results are checked to be
//! nonnegative integers before they are returned.
//!
//! ```
//! use commvar_core::{poincare_total, GroupSpec, PiSpec};
//!
//! let g: GroupSpec = "SU(2)".parse().unwrap();
//! let p = poincare_total(&g, &PiSpec::free(2), 1_000_000).unwrap();
//! assert_eq!(p, vec![1, 0, 1, 2]);
//! ```

pub mod centralizer;
pub mod cohomology;
pub mod config;
pub mod error;
pub mod group;
pub mod poly;
pub mod report;
pub mod reports;
pub mod splitting;
pub mod torsion;

pub use centralizer::{centralizer_invariants, centralizer_type, CentralizerInvariants, CentralizerType, FactorCentralizer};
pub use cohomology::{cohomology_report, poincare_component, poincare_total, CohomologyReport, ComponentCohomology};
pub use config::{parse_config, Format, JobConfig, Options, Section, Threads};
pub use error::{Error, Result};
pub use group::{enumerate_weyl, ClassicalFactor, FactorKind, GroupSpec, SignedPerm, WeylElement};
pub use poly::{IntPoly, RationalPoly};
pub use report::{analyze, emit_report, run, Analysis};
pub use reports::{ktheory_report, pi1_report, Freeness, KTheoryCase, KTheoryReport, Pi1Report};
pub use splitting::{
    descriptor_poincare, enumerate_factors, rank1_general_descriptor, reduced_poincare_factor, splitting_report,
    su2_factor_type, RankOneOutcome, RankOneWedge, SplittingReport, StableFactorDescriptor, SubsetIndex,
};
pub use torsion::{burnside_count, enumerate_hom, orbits, HomElement, HomSpace, OrbitRow, OrbitTable, PiSpec};
