//! Campaign runner: enumerate or sample graphs, filter class members, check
//! the chromatic bound and the structural claims, and track extremal
//! instances.
//!
//! Work is split into contiguous shards of the edge-mask (or sample-index)
//! range. Shard summaries merge associatively in shard order, so the
//! parallel and sequential paths produce identical output.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::codec::graph6_encode;
use crate::error::Error;
use crate::generate::{self, pair_count, GeneratorSpec};
use crate::graph::Graph;
use crate::invariants::{chromatic_number_bb, clique_number, invariant_report};
use crate::recognition::{classify_membership, verify_witness, Witness};
use crate::structure::{
    check_structure, clique_cover_bound, lemma1_partition, proof_decomposition,
};

/// Masks per shard in exhaustive mode; fixed so that thread count never
/// changes the shard boundaries.
const SHARD_SIZE: u64 = 1 << 14;

/// The chromatic bound record for one member.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCheck {
    pub omega: usize,
    pub chi: usize,
    /// floor(3*omega/2)
    pub bound_floor: usize,
    /// ceil((Delta + omega + 1) / 2)
    pub reed_value: usize,
    pub bound_ok: bool,
    pub reed_ok: bool,
    pub tight: bool,
}

/// Check chi <= floor(3 omega / 2) and the Reed-style step on a member.
pub fn check_bound(g: &Graph) -> Result<BoundCheck, Error> {
    let verdict = classify_membership(g);
    if !verdict.member {
        return Err(Error::NotMember(format!("witness {:?}", verdict.witness)));
    }
    let report = invariant_report(g)?;
    Ok(bound_from_invariants(report.omega, report.chi, report.max_degree))
}

fn bound_from_invariants(omega: usize, chi: usize, max_degree: usize) -> BoundCheck {
    let bound_floor = 3 * omega / 2;
    let reed_value = (max_degree + omega + 2) / 2; // ceil((Delta+omega+1)/2)
    BoundCheck {
        omega,
        chi,
        bound_floor,
        reed_value,
        bound_ok: chi <= bound_floor,
        reed_ok: chi <= reed_value,
        tight: chi == bound_floor,
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CampaignMode {
    /// Every labeled graph on each n in `min_n..=max_n`.
    Exhaustive { min_n: usize, max_n: usize },
    /// `count` G(n, p) samples from independent seeded streams.
    Random { n: usize, count: u64, p: f64, seed: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    #[serde(flatten)]
    pub mode: CampaignMode,
    pub check_bound: bool,
    pub check_structure: bool,
    pub check_clique_cover: bool,
}

impl CampaignConfig {
    pub fn exhaustive(min_n: usize, max_n: usize) -> Self {
        CampaignConfig {
            mode: CampaignMode::Exhaustive { min_n, max_n },
            check_bound: true,
            check_structure: true,
            check_clique_cover: true,
        }
    }

    pub fn random(n: usize, count: u64, p: f64, seed: u64) -> Self {
        CampaignConfig {
            mode: CampaignMode::Random { n, count, p, seed },
            check_bound: true,
            check_structure: true,
            check_clique_cover: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    /// Replayable certificate.
    pub graph6: String,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub graph6: String,
    pub n: usize,
    pub omega: usize,
    pub chi: usize,
    pub bound_floor: usize,
    /// chi / bound_floor
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignReport {
    pub graphs_scanned: u64,
    pub members_found: u64,
    pub tight_members: u64,
    pub violations: Vec<Violation>,
    /// Failure count per structure claim id.
    pub claim_failures: BTreeMap<String, u64>,
    pub extremal: Option<ExtremalRecord>,
}

impl CampaignReport {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    pub fn has_internal_failure(&self) -> bool {
        self.violations.iter().any(|v| v.kind == "engine_disagreement")
    }
}

#[derive(Debug, Default)]
struct ShardSummary {
    scanned: u64,
    members: u64,
    tight: u64,
    violations: Vec<Violation>,
    claim_failures: BTreeMap<String, u64>,
    extremal: Option<ExtremalRecord>,
}

/// ratio(a) > ratio(b) as exact rationals; records with bound_floor 0 never win.
fn extremal_improves(candidate: &ExtremalRecord, incumbent: &Option<ExtremalRecord>) -> bool {
    if candidate.bound_floor == 0 {
        return false;
    }
    match incumbent {
        None => true,
        Some(b) => candidate.chi * b.bound_floor > b.chi * candidate.bound_floor,
    }
}

fn check_one(g: &Graph, cfg: &CampaignConfig, acc: &mut ShardSummary) {
    acc.scanned += 1;
    if !classify_membership(g).member {
        return;
    }
    acc.members += 1;
    let g6 = graph6_encode(g);
    let report = match invariant_report(g) {
        Ok(r) => r,
        Err(e @ Error::EngineDisagreement { .. }) => {
            acc.violations.push(Violation {
                kind: "engine_disagreement".into(),
                graph6: g6,
                detail: serde_json::json!({ "error": e.to_string() }),
            });
            return;
        }
        Err(e) => {
            acc.violations.push(Violation {
                kind: "solver_error".into(),
                graph6: g6,
                detail: serde_json::json!({ "error": e.to_string() }),
            });
            return;
        }
    };
    if cfg.check_bound {
        let bc = bound_from_invariants(report.omega, report.chi, report.max_degree);
        if !bc.bound_ok {
            acc.violations.push(Violation {
                kind: "bound".into(),
                graph6: g6.clone(),
                detail: serde_json::to_value(&bc).expect("serializable"),
            });
        }
        if !bc.reed_ok {
            acc.violations.push(Violation {
                kind: "reed".into(),
                graph6: g6.clone(),
                detail: serde_json::to_value(&bc).expect("serializable"),
            });
        }
        if bc.tight {
            acc.tight += 1;
        }
        let candidate = ExtremalRecord {
            graph6: g6.clone(),
            n: report.n,
            omega: report.omega,
            chi: report.chi,
            bound_floor: bc.bound_floor,
            ratio: if bc.bound_floor == 0 {
                0.0
            } else {
                report.chi as f64 / bc.bound_floor as f64
            },
        };
        if extremal_improves(&candidate, &acc.extremal) {
            acc.extremal = Some(candidate);
        }
    }
    if cfg.check_structure && g.n() > 0 {
        match lemma1_partition(g) {
            Ok(p) => {
                if !p.is_valid_for(g) || !lemma1_size_bounds_ok(g, report.omega) {
                    acc.violations.push(Violation {
                        kind: "partition".into(),
                        graph6: g6.clone(),
                        detail: serde_json::to_value(&p).expect("serializable"),
                    });
                }
            }
            Err(e) => acc.violations.push(Violation {
                kind: "partition".into(),
                graph6: g6.clone(),
                detail: serde_json::json!({ "error": e.to_string() }),
            }),
        }
        if !g.is_complete() {
            match proof_decomposition(g).and_then(|d| check_structure(g, &d)) {
                Ok(sr) => {
                    for id in sr.failing_ids() {
                        *acc.claim_failures.entry(id.clone()).or_insert(0) += 1;
                        acc.violations.push(Violation {
                            kind: format!("claim:{id}"),
                            graph6: g6.clone(),
                            detail: serde_json::to_value(&sr.claims[&id])
                                .expect("serializable"),
                        });
                    }
                }
                Err(e) => acc.violations.push(Violation {
                    kind: "structure_error".into(),
                    graph6: g6.clone(),
                    detail: serde_json::json!({ "error": e.to_string() }),
                }),
            }
        }
    }
    if cfg.check_clique_cover && g.n() > 0 {
        match clique_cover_bound(g) {
            Ok(j) if j <= 4 => {}
            Ok(j) => acc.violations.push(Violation {
                kind: "clique_cover".into(),
                graph6: g6.clone(),
                detail: serde_json::json!({ "parts": j }),
            }),
            Err(e) => acc.violations.push(Violation {
                kind: "clique_cover".into(),
                graph6: g6,
                detail: serde_json::json!({ "error": e.to_string() }),
            }),
        }
    }
}

/// Slot-wise Lemma-1 size bounds: |M1|, |M2| <= omega and |M3|, |M4| <= omega - 1.
pub fn lemma1_size_bounds_ok(g: &Graph, omega: usize) -> bool {
    let Ok((v, w)) = default_lemma1_anchor(g) else {
        // complete graph: single part of size n = omega
        return g.n() <= omega;
    };
    lemma1_size_bounds_ok_at(g, v, w, omega)
}

/// Size bounds for the partition anchored at an explicit non-adjacent pair.
pub fn lemma1_size_bounds_ok_at(g: &Graph, v: usize, w: usize, omega: usize) -> bool {
    let a = g.neighbors(v) & g.neighbors(w);
    let b = g.neighbors(v) & !g.neighbors(w) & !(1 << w);
    let c = g.neighbors(w) & !g.neighbors(v) & !(1 << v);
    let mut a1 = 0u64;
    let mut cand = a;
    while cand != 0 {
        let x = cand.trailing_zeros() as usize;
        a1 |= 1 << x;
        cand &= g.neighbors(x);
    }
    let a2 = a & !a1;
    let size = |s: u64| s.count_ones() as usize;
    // |M1| = |A1|+1, |M2| = |A2|+1 before empty parts are dropped
    #[allow(clippy::int_plus_one)]
    let ok = size(a1) + 1 <= omega
        && size(a2) + 1 <= omega
        && size(b) <= omega.saturating_sub(1)
        && size(c) <= omega.saturating_sub(1);
    ok
}

fn default_lemma1_anchor(g: &Graph) -> Result<(usize, usize), Error> {
    for v in 0..g.n() {
        let missing = g.vertex_mask() & !g.closed_neighbors(v) & !crate::graph::mask_lo(v + 1);
        if missing != 0 {
            return Ok((v, missing.trailing_zeros() as usize));
        }
    }
    Err(Error::CompleteGraph)
}

#[derive(Debug, Clone, Copy)]
enum Shard {
    Masks { n: usize, start: u64, end: u64 },
    Samples { n: usize, p_bits: u64, seed: u64, start: u64, end: u64 },
}

fn build_shards(cfg: &CampaignConfig) -> Vec<Shard> {
    let mut shards = Vec::new();
    match cfg.mode {
        CampaignMode::Exhaustive { min_n, max_n } => {
            for n in min_n..=max_n {
                let total = 1u64 << pair_count(n);
                let mut start = 0;
                while start < total {
                    let end = (start + SHARD_SIZE).min(total);
                    shards.push(Shard::Masks { n, start, end });
                    start = end;
                }
            }
        }
        CampaignMode::Random { n, count, p, seed } => {
            let p_bits = p.to_bits();
            let mut start = 0;
            while start < count {
                let end = (start + SHARD_SIZE).min(count);
                shards.push(Shard::Samples { n, p_bits, seed, start, end });
                start = end;
            }
        }
    }
    shards
}

fn process_shard(shard: &Shard, cfg: &CampaignConfig) -> ShardSummary {
    let mut acc = ShardSummary::default();
    match *shard {
        Shard::Masks { n, start, end } => {
            for mask in start..end {
                let g = generate::graph_from_mask(n, mask);
                check_one(&g, cfg, &mut acc);
            }
        }
        Shard::Samples { n, p_bits, seed, start, end } => {
            use rand::SeedableRng;
            let p = f64::from_bits(p_bits);
            for i in start..end {
                // one independent stream per sample index
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let g = generate::random_graph(n, p, &mut rng).expect("n validated");
                check_one(&g, cfg, &mut acc);
            }
        }
    }
    acc
}

#[cfg(feature = "parallel")]
fn process_all(shards: &[Shard], cfg: &CampaignConfig) -> Vec<ShardSummary> {
    shards.par_iter().map(|s| process_shard(s, cfg)).collect()
}

#[cfg(not(feature = "parallel"))]
fn process_all(shards: &[Shard], cfg: &CampaignConfig) -> Vec<ShardSummary> {
    process_all_sequential(shards, cfg)
}

fn process_all_sequential(shards: &[Shard], cfg: &CampaignConfig) -> Vec<ShardSummary> {
    shards.iter().map(|s| process_shard(s, cfg)).collect()
}

fn merge(
    summaries: Vec<ShardSummary>,
    mut sink: Option<&mut dyn Write>,
) -> Result<CampaignReport, Error> {
    let mut report = CampaignReport {
        graphs_scanned: 0,
        members_found: 0,
        tight_members: 0,
        violations: Vec::new(),
        claim_failures: BTreeMap::new(),
        extremal: None,
    };
    for s in summaries {
        report.graphs_scanned += s.scanned;
        report.members_found += s.members;
        report.tight_members += s.tight;
        for (id, count) in s.claim_failures {
            *report.claim_failures.entry(id).or_insert(0) += count;
        }
        for v in s.violations {
            if let Some(w) = sink.as_deref_mut() {
                let mut line = serde_json::json!({ "type": "violation" });
                merge_json(&mut line, serde_json::to_value(&v).expect("serializable"));
                writeln!(w, "{line}")?;
            }
            report.violations.push(v);
        }
        if let Some(e) = s.extremal {
            if extremal_improves(&e, &report.extremal) {
                if let Some(w) = sink.as_deref_mut() {
                    let mut line = serde_json::json!({ "type": "extremal" });
                    merge_json(&mut line, serde_json::to_value(&e).expect("serializable"));
                    writeln!(w, "{line}")?;
                }
                report.extremal = Some(e);
            }
        }
    }
    if let Some(w) = sink {
        let mut line = serde_json::json!({ "type": "summary" });
        merge_json(&mut line, serde_json::to_value(&report).expect("serializable"));
        writeln!(w, "{line}")?;
    }
    Ok(report)
}

fn merge_json(target: &mut serde_json::Value, extra: serde_json::Value) {
    if let (Some(t), Some(e)) = (target.as_object_mut(), extra.as_object()) {
        for (k, v) in e {
            t.insert(k.clone(), v.clone());
        }
    }
}

/// Run a campaign; JSONL records go to `sink` when provided.
pub fn run_campaign(
    cfg: &CampaignConfig,
    sink: Option<&mut dyn Write>,
) -> Result<CampaignReport, Error> {
    validate_config(cfg)?;
    let shards = build_shards(cfg);
    merge(process_all(&shards, cfg), sink)
}

/// Sequential campaign, bypassing the parallel path. Output is identical to
/// `run_campaign` by construction (same shards, same merge order).
pub fn run_campaign_sequential(
    cfg: &CampaignConfig,
    sink: Option<&mut dyn Write>,
) -> Result<CampaignReport, Error> {
    validate_config(cfg)?;
    let shards = build_shards(cfg);
    merge(process_all_sequential(&shards, cfg), sink)
}

fn validate_config(cfg: &CampaignConfig) -> Result<(), Error> {
    match cfg.mode {
        CampaignMode::Exhaustive { min_n, max_n } => {
            if max_n > generate::ENUMERATION_CAP {
                return Err(Error::EnumerationCap {
                    n: max_n,
                    cap: generate::ENUMERATION_CAP,
                });
            }
            if min_n > max_n {
                return Err(Error::InvalidGenerator(format!(
                    "empty range {min_n}..={max_n}"
                )));
            }
        }
        CampaignMode::Random { n, p, .. } => {
            if n > crate::graph::MAX_VERTICES {
                return Err(Error::TooManyVertices {
                    n,
                    max: crate::graph::MAX_VERTICES,
                });
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidGenerator(format!("p={p} not in [0,1]")));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Remark adjudication
// ---------------------------------------------------------------------------

/// One row of the remark experiment: a join power of a base graph with the
/// recognizer's verdict and exact invariants. Nothing is asserted about the
/// source material's claims; the row reports what the solvers find.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RemarkRow {
    pub family: String,
    pub copies: usize,
    pub n: usize,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub omega: usize,
    pub chi: usize,
    pub bound_floor: usize,
    pub tight: bool,
}

/// Join powers of C5 plus both wheel readings (hub+C5 and hub+C6),
/// for 1..=k_max copies each.
pub fn remark_experiment(k_max: usize) -> Result<Vec<RemarkRow>, Error> {
    if k_max < 1 {
        return Err(Error::InvalidGenerator("k_max must be at least 1".into()));
    }
    let families: [(&str, GeneratorSpec); 3] = [
        ("c5_join", GeneratorSpec::Cycle { len: 5 }),
        ("wheel5_join", GeneratorSpec::Wheel { rim: 5 }),
        ("wheel6_join", GeneratorSpec::Wheel { rim: 6 }),
    ];
    let mut rows = Vec::new();
    for (family, base_spec) in families {
        let base = generate::generate(&base_spec)?;
        for m in 1..=k_max {
            let g = generate::join_power(&base, m)?;
            let verdict = classify_membership(&g);
            if let Some(w) = &verdict.witness {
                debug_assert!(verify_witness(&g, w));
            }
            let (omega, _) = clique_number(&g)?;
            let (chi, _) = chromatic_number_bb(&g)?;
            let bound_floor = 3 * omega / 2;
            rows.push(RemarkRow {
                family: family.into(),
                copies: m,
                n: g.n(),
                member: verdict.member,
                witness: verdict.witness,
                omega,
                chi,
                bound_floor,
                tight: chi == bound_floor,
            });
        }
    }
    Ok(rows)
}
