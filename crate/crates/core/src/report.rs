//! Runs a [`JobConfig`] and renders the result as JSON or text.
//!
//! JSON keys appear in a fixed order (`group`, `pi`, `components`, `orbits`,
//! `cohomology`, `ktheory`, `pi1`, `splitting`, `meta`); unrequested sections
//! are omitted. Output bytes do not depend on the thread count, and with
//! `reproducible` set the timing field is left out entirely.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::centralizer::{centralizer_invariants, centralizer_type, CentralizerType};
use crate::cohomology::{cohomology_report, CohomologyReport};
use crate::config::{Format, JobConfig, Section, Threads};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::poly::format_int_poly;
use crate::reports::{ktheory_report, pi1_report, KTheoryReport, Pi1Report};
use crate::splitting::{rank1_general_descriptor, splitting_report, RankOneOutcome, SplittingReport};
use crate::torsion::{HomElement, HomSpace, OrbitTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything computed for one job.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub config: JobConfig,
    pub orbits: OrbitTable,
    pub centralizers: Vec<CentralizerType>,
    pub pi1_ranks: Vec<usize>,
    pub cohomology: Option<CohomologyReport>,
    pub ktheory: Option<KTheoryReport>,
    pub pi1: Option<Pi1Report>,
    pub splitting: Option<SplittingReport>,
    pub rank_one: Option<RankOneOutcome>,
    pub elapsed_ms: u128,
}

/// Runs every requested section on a thread pool sized from `config.options.threads`.
pub fn analyze(config: &JobConfig) -> Result<Analysis> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Threads::Count(n) = config.options.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| analyze_in_pool(config))
}

fn analyze_in_pool(config: &JobConfig) -> Result<Analysis> {
    let start = Instant::now();
    let (g, pi, cap) = (&config.group, &config.pi, config.options.max_states);
    let space = HomSpace::new(g, &pi.torsion(), cap)?;
    let orbits = space.orbits();
    let centralizers: Vec<CentralizerType> = orbits
        .rows
        .iter()
        .map(|r| centralizer_type(&r.representative, g))
        .collect();
    let pi1_ranks = centralizers
        .iter()
        .map(|c| Ok(centralizer_invariants(c, g)?.pi1_rank))
        .collect::<Result<Vec<_>>>()?;

    let cohomology = config
        .wants(Section::Cohomology)
        .then(|| cohomology_report(&space, &orbits, pi.free_rank()))
        .transpose()?;
    let ktheory = config
        .wants(Section::Ktheory)
        .then(|| ktheory_report(g, pi, &orbits))
        .transpose()?;
    let pi1 = config.wants(Section::Pi1).then(|| pi1_report(g, pi, &orbits));
    let splitting = config
        .wants(Section::Splitting)
        .then(|| splitting_report(g, pi, cap))
        .transpose()?;
    let rank_one = (config.wants(Section::Splitting) && pi.free_rank() == 1)
        .then(|| rank1_general_descriptor(g, pi, cap))
        .transpose()?;

    Ok(Analysis {
        config: config.clone(),
        orbits,
        centralizers,
        pi1_ranks,
        cohomology,
        ktheory,
        pi1,
        splitting,
        rank_one,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Analyzes `config` and renders it in the configured format.
pub fn run(config: &JobConfig, reproducible: bool) -> Result<Vec<u8>> {
    let analysis = analyze(config)?;
    emit_report(&analysis, reproducible)
}

pub fn emit_report(analysis: &Analysis, reproducible: bool) -> Result<Vec<u8>> {
    match analysis.config.options.format {
        Format::Json => emit_json(analysis, reproducible),
        Format::Text => Ok(render_text(analysis, reproducible).into_bytes()),
    }
}

type Nested = Vec<Vec<Vec<u32>>>;

#[derive(Serialize)]
struct JsonFactor {
    kind: &'static str,
    size: usize,
}

#[derive(Serialize)]
struct JsonPi<'a> {
    presentation: &'a [u64],
}

#[derive(Serialize)]
struct JsonOrbitRow {
    representative: Nested,
    orbit_size: u64,
    stabilizer_order: u64,
    stabilizer: Vec<usize>,
    centralizer: Vec<String>,
    pi1_rank: usize,
}

#[derive(Serialize)]
struct JsonOrbits {
    denominator: u32,
    hom_count: u64,
    weyl_order: u64,
    rows: Vec<JsonOrbitRow>,
}

#[derive(Serialize)]
struct JsonComponent<'a> {
    representative: Nested,
    poincare: &'a [u64],
}

#[derive(Serialize)]
struct JsonCohomology<'a> {
    total: &'a [u64],
    components: Vec<JsonComponent<'a>>,
}

#[derive(Serialize)]
struct JsonKTheory<'a> {
    case: crate::reports::KTheoryCase,
    rank: u128,
    freeness: crate::reports::Freeness,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_orbit_ranks: Option<&'a [u128]>,
    notes: &'a str,
}

#[derive(Serialize)]
struct JsonPi1Row {
    representative: Nested,
    rank: u64,
}

#[derive(Serialize)]
struct JsonPi1 {
    rows: Vec<JsonPi1Row>,
}

#[derive(Serialize)]
struct JsonSplitRow<'a> {
    subset: Vec<usize>,
    quotient: &'a [u64],
    reduced_poincare: &'a [u64],
    su2_descriptor: Option<&'a crate::splitting::StableFactorDescriptor>,
}

#[derive(Serialize)]
struct JsonRankOne<'a> {
    applies: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pieces: Option<Vec<(&'static str, u64)>>,
    note: &'a str,
}

#[derive(Serialize)]
struct JsonSplitting<'a> {
    rows: Vec<JsonSplitRow<'a>>,
    totals: Option<&'a crate::splitting::StableFactorDescriptor>,
    consistency: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_one: Option<JsonRankOne<'a>>,
}

#[derive(Serialize)]
struct JsonMeta {
    version: &'static str,
    cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    group: Vec<JsonFactor>,
    pi: JsonPi<'a>,
    components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbits: Option<JsonOrbits>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohomology: Option<JsonCohomology<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ktheory: Option<JsonKTheory<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi1: Option<JsonPi1>,
    #[serde(skip_serializing_if = "Option::is_none")]
    splitting: Option<JsonSplitting<'a>>,
    meta: JsonMeta,
}

fn nested(f: &HomElement, g: &GroupSpec) -> Nested {
    f.nested(g)
}

fn emit_json(a: &Analysis, reproducible: bool) -> Result<Vec<u8>> {
    let cfg = &a.config;
    let g = &cfg.group;
    let report = JsonReport {
        group: g
            .factors()
            .iter()
            .map(|f| JsonFactor { kind: f.kind.name(), size: f.size })
            .collect(),
        pi: JsonPi { presentation: cfg.pi.presentation() },
        components: a.orbits.len(),
        orbits: cfg.wants(Section::Orbits).then(|| JsonOrbits {
            denominator: a.orbits.denominator,
            hom_count: a.orbits.hom_count,
            weyl_order: a.orbits.weyl_order,
            rows: a
                .orbits
                .rows
                .iter()
                .zip(&a.centralizers)
                .zip(&a.pi1_ranks)
                .map(|((r, c), &b)| JsonOrbitRow {
                    representative: nested(&r.representative, g),
                    orbit_size: r.orbit_size,
                    stabilizer_order: r.stabilizer_order,
                    stabilizer: r.stabilizer.clone(),
                    centralizer: c.block_names(),
                    pi1_rank: b,
                })
                .collect(),
        }),
        cohomology: a.cohomology.as_ref().map(|c| JsonCohomology {
            total: &c.total_poincare,
            components: c
                .per_component
                .iter()
                .map(|pc| JsonComponent { representative: nested(&pc.representative, g), poincare: &pc.poincare })
                .collect(),
        }),
        ktheory: a.ktheory.as_ref().map(|k| JsonKTheory {
            case: k.case,
            rank: k.rank,
            freeness: k.freeness,
            per_orbit_ranks: (!k.per_orbit_ranks.is_empty() || cfg.pi.is_finite()).then_some(&k.per_orbit_ranks[..]),
            notes: &k.notes,
        }),
        pi1: a.pi1.as_ref().map(|p| JsonPi1 {
            rows: p
                .rows
                .iter()
                .map(|r| JsonPi1Row { representative: nested(&r.representative, g), rank: r.rank })
                .collect(),
        }),
        splitting: a.splitting.as_ref().map(|s| JsonSplitting {
            rows: s
                .rows
                .iter()
                .map(|r| JsonSplitRow {
                    subset: r.subset.positions().iter().map(|i| i + 1).collect(),
                    quotient: r.quotient.presentation(),
                    reduced_poincare: &r.reduced_poincare,
                    su2_descriptor: r.su2_descriptor.as_ref(),
                })
                .collect(),
            totals: s.totals.as_ref(),
            consistency: s.consistency,
            rank_one: a.rank_one.as_ref().map(|o| JsonRankOne {
                applies: o.wedge.is_some(),
                k: o.wedge.map(|w| w.k),
                pieces: o.wedge.map(|w| w.pieces()),
                note: &o.note,
            }),
        }),
        meta: JsonMeta {
            version: VERSION,
            cap: cfg.options.max_states,
            timing_ms: (!reproducible).then_some(a.elapsed_ms),
        },
    };
    let mut out = serde_json::to_vec_pretty(&report).map_err(|e| Error::Internal(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn show(f: &HomElement, g: &GroupSpec) -> String {
    if f.points().is_empty() {
        return "trivial".into();
    }
    let e = f.denominator();
    let gens: Vec<String> = f
        .nested(g)
        .iter()
        .map(|factors| {
            let blocks: Vec<String> = factors
                .iter()
                .map(|b| {
                    let xs: Vec<String> = b.iter().map(|a| a.to_string()).collect();
                    format!("({})", xs.join(","))
                })
                .collect();
            blocks.join("")
        })
        .collect();
    format!("[{}]/{e}", gens.join("; "))
}

fn render_text(a: &Analysis, reproducible: bool) -> String {
    let cfg = &a.config;
    let g = &cfg.group;
    let mut s = String::new();
    let _ = writeln!(s, "Hom({}, {})", cfg.pi, g);
    let _ = writeln!(s, "components: {}", a.orbits.len());

    if cfg.wants(Section::Orbits) {
        let _ = writeln!(
            s,
            "\norbits: |Hom(A,T)| = {}, |W| = {}, residues over {}",
            a.orbits.hom_count, a.orbits.weyl_order, a.orbits.denominator
        );
        for ((r, c), b) in a.orbits.rows.iter().zip(&a.centralizers).zip(&a.pi1_ranks) {
            let _ = writeln!(
                s,
                "  {}  orbit {}  stabilizer {} {:?}  G_f = {}  pi1 rank {}",
                show(&r.representative, g),
                r.orbit_size,
                r.stabilizer_order,
                r.stabilizer,
                c,
                b
            );
        }
    }
    if let Some(c) = &a.cohomology {
        let _ = writeln!(s, "\ncohomology: P(t) = {}", format_int_poly(&c.total_poincare));
        for pc in &c.per_component {
            let _ = writeln!(s, "  {}  {}", show(&pc.representative, g), format_int_poly(&pc.poincare));
        }
    }
    if let Some(k) = &a.ktheory {
        let _ = writeln!(s, "\nktheory: {:?}, rank {}, {:?}", k.case, k.rank, k.freeness);
        if !k.per_orbit_ranks.is_empty() {
            let _ = writeln!(s, "  per-orbit ranks {:?}", k.per_orbit_ranks);
        }
        let _ = writeln!(s, "  {}", k.notes);
    }
    if let Some(p) = &a.pi1 {
        let _ = writeln!(s, "\npi1:");
        for r in &p.rows {
            let group = if r.rank == 0 { "trivial".to_string() } else { format!("Z^{}", r.rank) };
            let _ = writeln!(s, "  {}  {}", show(&r.representative, g), group);
        }
    }
    if let Some(sp) = &a.splitting {
        let _ = writeln!(s, "\nsplitting: consistency {}", sp.consistency);
        for r in &sp.rows {
            let _ = write!(s, "  {}  {}  {}", r.subset, r.quotient, format_int_poly(&r.reduced_poincare));
            if let Some(d) = &r.su2_descriptor {
                let _ = write!(s, "  {d}");
            }
            let _ = writeln!(s);
        }
        if let Some(t) = &sp.totals {
            let _ = writeln!(s, "  total: {t}");
        }
        if let Some(o) = &a.rank_one {
            match o.wedge {
                Some(w) => {
                    let _ = writeln!(s, "  rank one: {w} (k = {})", w.k);
                }
                None => {
                    let _ = writeln!(s, "  rank one: not applicable");
                }
            }
            let _ = writeln!(s, "  {}", o.note);
        }
    }
    let _ = writeln!(s, "\nversion {}, cap {}", VERSION, cfg.options.max_states);
    if !reproducible {
        let _ = writeln!(s, "time {} ms", a.elapsed_ms);
    }
    s
}
