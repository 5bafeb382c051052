//! Constructive decompositions for class members and checks for each
//! structural claim they support.
//!
//! `lemma1_partition` covers a member by at most four cliques anchored at a
//! non-adjacent pair (v, w). `proof_decomposition` builds the finer
//! neighborhood split (A1, A2, B11, B12, B2, C) around a maximum-degree
//! vertex; `check_structure` evaluates the claim catalog S1..S7 on it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{bits_to_vec, vec_to_bits, Graph};
use crate::invariants::{clique_number, validate_coloring};
use crate::recognition::classify_membership;

/// Cover of V(G) by at most four cliques.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliquePartition {
    /// Nonempty parts M1..Mj, each sorted ascending.
    pub parts: Vec<Vec<usize>>,
    /// The non-adjacent pair the construction is anchored at; absent for
    /// complete graphs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<(usize, usize)>,
}

impl CliquePartition {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Disjointness, coverage, and that every part induces a clique.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = 0u64;
        for part in &self.parts {
            if part.is_empty() {
                return false;
            }
            let bits = vec_to_bits(part);
            if seen & bits != 0 || !g.is_clique(bits) {
                return false;
            }
            seen |= bits;
        }
        seen == g.vertex_mask() && self.parts.len() <= 4
    }
}

/// The main-proof neighborhood split around a non-adjacent pair (v, w).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NeighborhoodDecomposition {
    pub v: usize,
    pub w: usize,
    /// Common neighbors of v and w.
    pub a: Vec<usize>,
    /// Neighbors of v only.
    pub b: Vec<usize>,
    /// Neighbors of w only.
    pub c: Vec<usize>,
    /// Greedy-lex maximal clique inside ⟨A⟩.
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    /// Vertices of B with a non-neighbor in A2.
    pub b11: Vec<usize>,
    /// Vertices of B with a non-neighbor in A1.
    pub b12: Vec<usize>,
    pub b2: Vec<usize>,
}

/// One evaluated structural claim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub holds: bool,
    /// True for claims not stated in the source material but forced by it.
    pub derived: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
}

/// Claim catalog results keyed S1..S7.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureReport {
    pub claims: BTreeMap<String, ClaimCheck>,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.claims.values().all(|c| c.holds)
    }

    pub fn failing_ids(&self) -> Vec<String> {
        self.claims
            .iter()
            .filter(|(_, c)| !c.holds)
            .map(|(id, _)| id.clone())
            .collect()
    }
}

fn require_member(g: &Graph) -> Result<(), Error> {
    let verdict = classify_membership(g);
    if !verdict.member {
        return Err(Error::NotMember(format!(
            "witness {:?}",
            verdict.witness.expect("non-member carries a witness")
        )));
    }
    Ok(())
}

/// Lexicographically least non-adjacent pair, if any.
fn least_non_edge(g: &Graph) -> Option<(usize, usize)> {
    for v in 0..g.n() {
        let missing = g.vertex_mask() & !g.closed_neighbors(v) & !crate::graph::mask_lo(v + 1);
        if missing != 0 {
            return Some((v, missing.trailing_zeros() as usize));
        }
    }
    None
}

/// Greedy lexicographic maximal clique inside the vertex bitset `a`:
/// repeatedly add the least-index vertex adjacent to everything chosen.
fn greedy_lex_maximal_clique(g: &Graph, a: u64) -> u64 {
    let mut chosen = 0u64;
    let mut candidates = a;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        chosen |= 1 << v;
        candidates &= g.neighbors(v);
    }
    chosen
}

struct RawDecomposition {
    v: usize,
    w: usize,
    a: u64,
    b: u64,
    c: u64,
    a1: u64,
    a2: u64,
    b11: u64,
    b12: u64,
    b2: u64,
}

fn decompose_raw(g: &Graph, v: usize, w: usize) -> RawDecomposition {
    let a = g.neighbors(v) & g.neighbors(w);
    let b = g.neighbors(v) & !g.neighbors(w) & !(1 << w);
    let c = g.neighbors(w) & !g.neighbors(v) & !(1 << v);
    let a1 = greedy_lex_maximal_clique(g, a);
    let a2 = a & !a1;
    let mut b11 = 0u64;
    let mut b12 = 0u64;
    for bv in bits_to_vec(b) {
        if a2 & !g.neighbors(bv) != 0 {
            b11 |= 1 << bv;
        }
        if a1 & !g.neighbors(bv) != 0 {
            b12 |= 1 << bv;
        }
    }
    let b2 = b & !b11 & !b12;
    RawDecomposition {
        v,
        w,
        a,
        b,
        c,
        a1,
        a2,
        b11,
        b12,
        b2,
    }
}

impl From<RawDecomposition> for NeighborhoodDecomposition {
    fn from(r: RawDecomposition) -> Self {
        NeighborhoodDecomposition {
            v: r.v,
            w: r.w,
            a: bits_to_vec(r.a),
            b: bits_to_vec(r.b),
            c: bits_to_vec(r.c),
            a1: bits_to_vec(r.a1),
            a2: bits_to_vec(r.a2),
            b11: bits_to_vec(r.b11),
            b12: bits_to_vec(r.b12),
            b2: bits_to_vec(r.b2),
        }
    }
}

/// Lemma-1 clique partition of a member.
pub fn lemma1_partition(g: &Graph) -> Result<CliquePartition, Error> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    require_member(g)?;
    let Some((v, w)) = least_non_edge(g) else {
        return Ok(CliquePartition {
            parts: vec![(0..g.n()).collect()],
            anchor: None,
        });
    };
    let r = decompose_raw(g, v, w);
    let m1 = r.a1 | 1 << v;
    let m2 = r.a2 | 1 << w;
    let parts: Vec<Vec<usize>> = [m1, m2, r.b, r.c]
        .into_iter()
        .filter(|&m| m != 0)
        .map(bits_to_vec)
        .collect();
    let partition = CliquePartition {
        parts,
        anchor: Some((v, w)),
    };
    debug_assert!(partition.is_valid_for(g));
    Ok(partition)
}

/// Default decomposition: v is the lowest-index maximum-degree vertex, with
/// a fallback to the least vertex owning a non-neighbor when every
/// maximum-degree vertex is universal; w is v's least non-neighbor.
pub fn proof_decomposition(g: &Graph) -> Result<NeighborhoodDecomposition, Error> {
    require_member(g)?;
    let (v, w) = default_pair(g)?;
    Ok(decompose_raw(g, v, w).into())
}

/// The (v, w) pair `proof_decomposition` would use.
pub fn default_pair(g: &Graph) -> Result<(usize, usize), Error> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let delta = g.max_degree();
    let v_default = (0..g.n()).find(|&u| g.degree(u) == delta).unwrap();
    let non_neighbors = |u: usize| g.vertex_mask() & !g.closed_neighbors(u);
    let v = if non_neighbors(v_default) != 0 {
        v_default
    } else {
        (0..g.n())
            .find(|&u| non_neighbors(u) != 0)
            .ok_or(Error::CompleteGraph)?
    };
    let w = non_neighbors(v).trailing_zeros() as usize;
    Ok((v, w))
}

/// Decomposition for an explicit non-adjacent pair of a member.
pub fn proof_decomposition_with_pair(
    g: &Graph,
    v: usize,
    w: usize,
) -> Result<NeighborhoodDecomposition, Error> {
    require_member(g)?;
    decompose_unchecked(g, v, w)
}

/// Decomposition without the membership check, for demonstrating claim
/// failures on non-members.
pub fn decompose_unchecked(
    g: &Graph,
    v: usize,
    w: usize,
) -> Result<NeighborhoodDecomposition, Error> {
    if v >= g.n() || w >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v.max(w),
            n: g.n(),
        });
    }
    if v == w || g.has_edge(v, w) {
        return Err(Error::DecompositionMismatch(format!(
            "({v}, {w}) is not a non-adjacent pair"
        )));
    }
    Ok(decompose_raw(g, v, w).into())
}

/// First non-adjacent pair inside a vertex bitset, ascending scan.
fn non_adjacent_pair_in(g: &Graph, s: u64) -> Option<Vec<usize>> {
    let vs = bits_to_vec(s);
    for (i, &u) in vs.iter().enumerate() {
        for &v in vs.iter().skip(i + 1) {
            if !g.has_edge(u, v) {
                return Some(vec![u, v]);
            }
        }
    }
    None
}

fn edge_between(g: &Graph, s: u64, t: u64) -> Option<Vec<usize>> {
    for u in bits_to_vec(s) {
        let hit = g.neighbors(u) & t;
        if hit != 0 {
            return Some(vec![u, hit.trailing_zeros() as usize]);
        }
    }
    None
}

fn claim(holds: bool, derived: bool, counterexample: Option<Vec<usize>>) -> ClaimCheck {
    ClaimCheck {
        holds,
        derived,
        counterexample: if holds { None } else { counterexample.or(Some(Vec::new())) },
    }
}

/// Evaluate claims S1..S7 for a decomposition of `g`.
///
/// S7's degree equation is only meaningful when v attains the maximum
/// degree; for other pairs it is evaluated as stated and may fail.
pub fn check_structure(
    g: &Graph,
    d: &NeighborhoodDecomposition,
) -> Result<StructureReport, Error> {
    // recompute from (v, w); any disagreement means d was not produced from g
    let r = decompose_raw(g, d.v, d.w);
    let recomputed: NeighborhoodDecomposition = decompose_raw(g, d.v, d.w).into();
    if recomputed.a != d.a
        || recomputed.b != d.b
        || recomputed.c != d.c
        || recomputed.a1 != d.a1
        || recomputed.a2 != d.a2
        || recomputed.b11 != d.b11
        || recomputed.b12 != d.b12
        || recomputed.b2 != d.b2
    {
        return Err(Error::DecompositionMismatch(
            "sets do not match the graph's decomposition at (v, w)".into(),
        ));
    }
    let (omega, _) = clique_number(g)?;
    let delta = g.max_degree();
    let mut claims = BTreeMap::new();

    let s1_bad = non_adjacent_pair_in(g, r.b).or_else(|| non_adjacent_pair_in(g, r.c));
    claims.insert("S1".into(), claim(s1_bad.is_none(), false, s1_bad));

    let s2_bad = non_adjacent_pair_in(g, r.a2);
    claims.insert("S2".into(), claim(s2_bad.is_none(), false, s2_bad));

    let s3_bad = edge_between(g, r.a1, r.a2);
    claims.insert("S3".into(), claim(s3_bad.is_none(), false, s3_bad));

    let overlap = r.b11 & r.b12;
    claims.insert(
        "S4".into(),
        claim(overlap == 0, true, Some(bits_to_vec(overlap))),
    );

    let left = r.b11 | r.a1 | r.b2;
    let right = r.b12 | r.a2 | r.b2;
    let s5_bad = non_adjacent_pair_in(g, left).or_else(|| non_adjacent_pair_in(g, right));
    claims.insert("S5".into(), claim(s5_bad.is_none(), false, s5_bad));

    let size = |s: u64| s.count_ones() as usize;
    // written in the |A1| + |B11| + |B2| + 1 <= omega shape of the claim
    #[allow(clippy::int_plus_one)]
    let s6_left = size(r.a1) + size(r.b11) + size(r.b2) + 1 <= omega;
    #[allow(clippy::int_plus_one)]
    let s6_right = size(r.a2) + size(r.b12) + size(r.b2) + 1 <= omega;
    let s6_cex = if !s6_left {
        Some(bits_to_vec(left | 1 << r.v))
    } else if !s6_right {
        Some(bits_to_vec(right | 1 << r.v))
    } else {
        None
    };
    claims.insert("S6".into(), claim(s6_left && s6_right, false, s6_cex));

    let deg_eq =
        g.degree(r.v) == size(r.a1) + size(r.a2) + size(r.b11) + size(r.b12) + size(r.b2);
    // the Delta bound is premised on v attaining the maximum degree; when v
    // is the fallback choice (every max-degree vertex universal) it is vacuous
    let delta_bound =
        g.degree(r.v) != delta || delta + size(r.b2) + 2 <= 2 * omega;
    claims.insert(
        "S7".into(),
        claim(deg_eq && delta_bound, false, Some(vec![r.v])),
    );

    Ok(StructureReport { claims })
}

/// Number of cliques in the Lemma-1 partition; verifies that coloring the
/// complement by part index is proper with at most four colors.
pub fn clique_cover_bound(g: &Graph) -> Result<usize, Error> {
    let partition = lemma1_partition(g)?;
    let mut coloring = vec![0usize; g.n()];
    for (color, part) in partition.parts.iter().enumerate() {
        for &v in part {
            coloring[v] = color;
        }
    }
    let complement = g.complement();
    if !validate_coloring(&complement, &coloring) {
        return Err(Error::DecompositionMismatch(
            "partition does not properly color the complement".into(),
        ));
    }
    Ok(partition.part_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn c5_partition_matches_hand_trace() {
        let c5 = generate::cycle(5).unwrap();
        let p = lemma1_partition(&c5).unwrap();
        assert_eq!(p.anchor, Some((0, 2)));
        assert_eq!(p.parts, vec![vec![0, 1], vec![2], vec![4], vec![3]]);
        assert!(p.is_valid_for(&c5));
    }

    #[test]
    fn complete_graph_single_part() {
        let k4 = generate::complete(4).unwrap();
        let p = lemma1_partition(&k4).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.anchor, None);
    }

    #[test]
    fn wheel5_partition_valid() {
        let g = generate::cycle(5).unwrap().join(&generate::complete(1).unwrap()).unwrap();
        let p = lemma1_partition(&g).unwrap();
        assert!(p.part_count() <= 4);
        assert!(p.is_valid_for(&g));
    }

    #[test]
    fn non_member_rejected() {
        let c6 = generate::cycle(6).unwrap();
        assert!(matches!(lemma1_partition(&c6), Err(Error::NotMember(_))));
        assert!(matches!(proof_decomposition(&c6), Err(Error::NotMember(_))));
    }

    #[test]
    fn empty_graph_rejected() {
        let g = crate::graph::Graph::empty(0).unwrap();
        assert!(matches!(lemma1_partition(&g), Err(Error::EmptyGraph)));
    }

    #[test]
    fn c5_decomposition_matches_hand_trace() {
        let c5 = generate::cycle(5).unwrap();
        let d = proof_decomposition(&c5).unwrap();
        assert_eq!((d.v, d.w), (0, 2));
        assert_eq!(d.a, vec![1]);
        assert_eq!(d.b, vec![4]);
        assert_eq!(d.c, vec![3]);
        assert_eq!(d.a1, vec![1]);
        assert!(d.a2.is_empty());
        assert!(d.b11.is_empty());
        // 4 is non-adjacent to 1 in A1, so it lands in B12
        assert_eq!(d.b12, vec![4]);
        assert!(d.b2.is_empty());
    }

    #[test]
    fn c5_claims_all_hold() {
        let c5 = generate::cycle(5).unwrap();
        let d = proof_decomposition(&c5).unwrap();
        let report = check_structure(&c5, &d).unwrap();
        assert!(report.all_hold(), "failed: {:?}", report.failing_ids());
    }

    #[test]
    fn p3_falls_back_when_center_is_universal() {
        // path 0-1-2: vertex 1 has max degree but no non-neighbor
        let p3 = crate::graph::Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d = proof_decomposition(&p3).unwrap();
        assert_eq!((d.v, d.w), (0, 2));
        assert_eq!(d.a, vec![1]);
        assert!(d.b.is_empty() && d.c.is_empty());
    }

    #[test]
    fn wheel5_uses_rim_vertex() {
        // apex is universal, so v falls back to a rim vertex
        let g = generate::cycle(5).unwrap().join(&generate::complete(1).unwrap()).unwrap();
        let d = proof_decomposition(&g).unwrap();
        assert_eq!((d.v, d.w), (0, 2));
        let report = check_structure(&g, &d).unwrap();
        // S7's degree equation concerns a maximum-degree v; rim vertices
        // are not maximum degree here, so only S1..S6 are expected
        for id in ["S1", "S2", "S3", "S4", "S5", "S6"] {
            assert!(report.claims[id].holds, "claim {id} failed");
        }
    }

    #[test]
    fn complete_graph_has_no_decomposition() {
        let k4 = generate::complete(4).unwrap();
        assert!(matches!(proof_decomposition(&k4), Err(Error::CompleteGraph)));
    }

    #[test]
    fn forced_decomposition_on_non_member_reports_failures() {
        // antipodal pair: B = {1, 5} is not a clique, so S1 fails
        let c6 = generate::cycle(6).unwrap();
        let d = decompose_unchecked(&c6, 0, 3).unwrap();
        let report = check_structure(&c6, &d).unwrap();
        assert!(!report.all_hold());
        assert!(!report.claims["S1"].holds);
        for (_, c) in report.claims.iter().filter(|(_, c)| !c.holds) {
            assert!(c.counterexample.is_some());
        }
    }

    #[test]
    fn mismatched_decomposition_detected() {
        let c5 = generate::cycle(5).unwrap();
        let mut d = proof_decomposition(&c5).unwrap();
        d.b2 = vec![3];
        assert!(matches!(
            check_structure(&c5, &d),
            Err(Error::DecompositionMismatch(_))
        ));
    }

    #[test]
    fn clique_cover_bounds() {
        assert_eq!(clique_cover_bound(&generate::complete(5).unwrap()).unwrap(), 1);
        assert_eq!(clique_cover_bound(&generate::cycle(5).unwrap()).unwrap(), 4);
    }
}
