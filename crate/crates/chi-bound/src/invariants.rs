//! Exact invariants: clique number, independence number, maximum degree,
//! and chromatic number via two independent engines.
//!
//! Engine one is saturation-ordered branch and bound. Engine two exploits
//! the class structure: in a 3K1-free graph every color class has at most
//! two vertices, so an optimal coloring corresponds to a maximum matching
//! of the complement and chi = n - mu(complement). Whenever both engines
//! apply they are cross-checked; disagreement is reported as an error,
//! never as a wrong answer.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{bits_to_vec, solver_cap, Graph};
use crate::matching::{maximum_matching, Matching};
use crate::recognition::{find_3k1, Witness};

/// A proper vertex coloring; `colors[v]` is the 0-based color of `v`.
pub type Coloring = Vec<usize>;

/// Aggregate invariant record with certificates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub alpha: usize,
    pub omega: usize,
    pub chi: usize,
    /// A maximum clique, ascending.
    pub clique: Vec<usize>,
    /// An optimal proper coloring, one color index per vertex.
    pub coloring: Coloring,
}

fn check_cap(g: &Graph) -> Result<(), Error> {
    let cap = solver_cap();
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Maximum clique, branch and bound with greedy-coloring bound
// ---------------------------------------------------------------------------

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: u64,
    best_size: usize,
}

impl<'a> CliqueSearch<'a> {
    /// Greedy-color the candidate set; returns vertices ordered by color
    /// class, with the color number (1-based) per position as the bound.
    fn color_sort(&self, cand: u64) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut uncolored = cand;
        let mut color = 0usize;
        while uncolored != 0 {
            color += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= avail - 1;
                order.push(v);
                bounds.push(color);
                uncolored &= !(1 << v);
                avail &= !self.g.neighbors(v);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, current: u64, cand: u64) {
        if cand == 0 {
            if current.count_ones() as usize > self.best_size {
                self.best_size = current.count_ones() as usize;
                self.best = current;
            }
            return;
        }
        let size = current.count_ones() as usize;
        let (order, bounds) = self.color_sort(cand);
        let mut cand = cand;
        for i in (0..order.len()).rev() {
            if size + bounds[i] <= self.best_size {
                return;
            }
            let v = order[i];
            self.expand(current | 1 << v, cand & self.g.neighbors(v));
            cand &= !(1 << v);
        }
    }
}

/// Exact maximum clique with a witness.
pub fn clique_number(g: &Graph) -> Result<(usize, Vec<usize>), Error> {
    check_cap(g)?;
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let mut search = CliqueSearch {
        g,
        best: 0,
        best_size: 0,
    };
    search.expand(0, g.vertex_mask());
    Ok((search.best_size, bits_to_vec(search.best)))
}

/// alpha(g) = omega(complement(g)); witness independent set.
pub fn independence_number(g: &Graph) -> Result<(usize, Vec<usize>), Error> {
    clique_number(&g.complement())
}

// ---------------------------------------------------------------------------
// Chromatic number, DSATUR branch and bound
// ---------------------------------------------------------------------------

struct ColorSearch<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    best: usize,
    best_coloring: Coloring,
    lower: usize,
    done: bool,
}

const UNCOLORED: usize = usize::MAX;

impl<'a> ColorSearch<'a> {
    /// Next vertex: max saturation, then max degree, then least index.
    fn pick(&self) -> Option<usize> {
        let mut pick = None;
        let mut key = (0usize, 0usize);
        for v in 0..self.g.n() {
            if self.colors[v] != UNCOLORED {
                continue;
            }
            let mut seen = 0u64;
            for u in bits_to_vec(self.g.neighbors(v)) {
                if self.colors[u] != UNCOLORED {
                    seen |= 1 << self.colors[u];
                }
            }
            let cand = (seen.count_ones() as usize, self.g.degree(v));
            if pick.is_none() || cand > key {
                pick = Some(v);
                key = cand;
            }
        }
        pick
    }

    fn branch(&mut self, used: usize) {
        if self.done || used >= self.best {
            return;
        }
        let Some(v) = self.pick() else {
            // complete coloring with `used` colors
            self.best = used;
            self.best_coloring = self.colors.clone();
            if self.best == self.lower {
                self.done = true;
            }
            return;
        };
        let mut forbidden = 0u64;
        for u in bits_to_vec(self.g.neighbors(v)) {
            if self.colors[u] != UNCOLORED {
                forbidden |= 1 << self.colors[u];
            }
        }
        for c in 0..=used.min(63) {
            let new_color = c == used;
            if new_color && used + 1 >= self.best {
                break;
            }
            if !new_color && forbidden >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = c;
            self.branch(used + new_color as usize);
            self.colors[v] = UNCOLORED;
            if self.done {
                return;
            }
        }
    }
}

/// Greedy DSATUR coloring for the initial upper bound.
fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![UNCOLORED; n];
    for _ in 0..n {
        let mut pick = None;
        let mut key = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != UNCOLORED {
                continue;
            }
            let mut seen = 0u64;
            for u in bits_to_vec(g.neighbors(v)) {
                if colors[u] != UNCOLORED {
                    seen |= 1 << colors[u];
                }
            }
            let cand = (seen.count_ones() as usize, g.degree(v));
            if pick.is_none() || cand > key {
                pick = Some(v);
                key = cand;
            }
        }
        let v = pick.unwrap();
        let mut forbidden = 0u64;
        for u in bits_to_vec(g.neighbors(v)) {
            if colors[u] != UNCOLORED {
                forbidden |= 1 << colors[u];
            }
        }
        colors[v] = (!forbidden).trailing_zeros() as usize;
    }
    colors
}

fn color_count(c: &Coloring) -> usize {
    c.iter().map(|&x| x + 1).max().unwrap_or(0)
}

/// Exact chromatic number via branch and bound; returns an optimal coloring.
pub fn chromatic_number_bb(g: &Graph) -> Result<(usize, Coloring), Error> {
    check_cap(g)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let (omega, _) = clique_number(g)?;
    let greedy = dsatur_greedy(g);
    let ub = color_count(&greedy);
    if ub == omega {
        return Ok((ub, greedy));
    }
    let mut search = ColorSearch {
        g,
        colors: vec![UNCOLORED; n],
        best: ub,
        best_coloring: greedy,
        lower: omega,
        done: false,
    };
    search.branch(0);
    Ok((search.best, search.best_coloring))
}

/// Chromatic number through the complement matching. Requires alpha <= 2,
/// i.e. the graph is 3K1-free; violations error out with the witness.
pub fn chromatic_number_via_matching(g: &Graph) -> Result<(usize, Coloring), Error> {
    if let Some(Witness::ThreeK1(t)) = find_3k1(g) {
        return Err(Error::HasThreeK1(t));
    }
    let n = g.n();
    let comp = g.complement();
    let matching = maximum_matching(&comp);
    let chi = n - matching.len();
    // one color per matched non-adjacent pair, one per unmatched vertex
    let mut mate = vec![UNCOLORED; n];
    for &(u, v) in &matching.edges {
        mate[u] = v;
        mate[v] = u;
    }
    let mut colors = vec![UNCOLORED; n];
    let mut next = 0usize;
    for v in 0..n {
        if colors[v] != UNCOLORED {
            continue;
        }
        colors[v] = next;
        if mate[v] != UNCOLORED {
            colors[mate[v]] = next;
        }
        next += 1;
    }
    debug_assert_eq!(next, chi);
    Ok((chi, colors))
}

/// Maximum matching re-exported at the invariant surface.
pub fn matching(g: &Graph) -> Matching {
    maximum_matching(g)
}

/// True iff the coloring is total and no edge is monochromatic.
pub fn validate_coloring(g: &Graph, coloring: &Coloring) -> bool {
    if coloring.len() != g.n() {
        return false;
    }
    g.edges()
        .iter()
        .all(|&(u, v)| coloring[u] != coloring[v])
}

/// Full invariant record. When alpha <= 2 the chromatic number is computed
/// by both engines and they must agree.
pub fn invariant_report(g: &Graph) -> Result<InvariantReport, Error> {
    check_cap(g)?;
    let (omega, clique) = clique_number(g)?;
    let (alpha, _) = independence_number(g)?;
    let (chi, coloring) = chromatic_number_bb(g)?;
    if alpha <= 2 {
        let (chi_m, coloring_m) = chromatic_number_via_matching(g)?;
        if chi_m != chi {
            return Err(Error::EngineDisagreement {
                bb: chi,
                matching: chi_m,
            });
        }
        debug_assert!(validate_coloring(g, &coloring_m));
    }
    Ok(InvariantReport {
        n: g.n(),
        m: g.edge_count(),
        max_degree: g.max_degree(),
        alpha,
        omega,
        chi,
        clique,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::Graph;

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap()
    }

    /// Brute-force maximum clique by subset scan.
    fn brute_omega(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&s| g.is_clique(s))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Brute-force chromatic number: least k admitting a proper k-coloring.
    fn brute_chi(g: &Graph) -> usize {
        fn has_proper(edges: &[(usize, usize)], n: usize, k: usize) -> bool {
            let mut assign = vec![0usize; n];
            loop {
                if edges.iter().all(|&(u, v)| assign[u] != assign[v]) {
                    return true;
                }
                // odometer increment
                let mut i = 0;
                loop {
                    if i == n {
                        return false;
                    }
                    assign[i] += 1;
                    if assign[i] < k {
                        break;
                    }
                    assign[i] = 0;
                    i += 1;
                }
            }
        }
        let n = g.n();
        let edges = g.edges();
        (1..=n).find(|&k| has_proper(&edges, n, k)).unwrap_or(0)
    }

    #[test]
    fn clique_known_values() {
        assert_eq!(clique_number(&generate::complete(5).unwrap()).unwrap().0, 5);
        assert_eq!(clique_number(&generate::cycle(5).unwrap()).unwrap().0, 2);
        let g = generate::join_power(&generate::cycle(5).unwrap(), 2).unwrap();
        assert_eq!(clique_number(&g).unwrap().0, 4);
        assert_eq!(brute_omega(&g), 4);
    }

    #[test]
    fn clique_witness_is_clique() {
        let g = petersen();
        let (omega, w) = clique_number(&g).unwrap();
        assert_eq!(omega, 2);
        assert_eq!(w.len(), 2);
        assert!(g.has_edge(w[0], w[1]));
    }

    #[test]
    fn independence_known_values() {
        assert_eq!(independence_number(&generate::cycle(5).unwrap()).unwrap().0, 2);
        assert_eq!(independence_number(&Graph::empty(6).unwrap()).unwrap().0, 6);
        assert_eq!(independence_number(&petersen()).unwrap().0, 4);
    }

    #[test]
    fn chromatic_known_values() {
        assert_eq!(chromatic_number_bb(&generate::cycle(5).unwrap()).unwrap().0, 3);
        for n in 1..=6 {
            assert_eq!(chromatic_number_bb(&generate::complete(n).unwrap()).unwrap().0, n);
        }
        assert_eq!(chromatic_number_bb(&petersen()).unwrap().0, 3);
    }

    #[test]
    fn chromatic_via_matching_known_values() {
        let (chi, col) = chromatic_number_via_matching(&generate::cycle(5).unwrap()).unwrap();
        assert_eq!(chi, 3);
        assert!(validate_coloring(&generate::cycle(5).unwrap(), &col));
        let (chi, _) = chromatic_number_via_matching(&generate::complete(6).unwrap()).unwrap();
        assert_eq!(chi, 6);
        assert!(matches!(
            chromatic_number_via_matching(&generate::cycle(6).unwrap()),
            Err(Error::HasThreeK1([0, 2, 4]))
        ));
    }

    #[test]
    fn engines_agree_exhaustively_small() {
        for n in 0..=5 {
            for g in generate::enumerate_labeled(n).unwrap() {
                let (chi, col) = chromatic_number_bb(&g).unwrap();
                assert!(validate_coloring(&g, &col));
                assert_eq!(chi, brute_chi(&g), "graph {:?}", g);
                if independence_number(&g).unwrap().0 <= 2 {
                    assert_eq!(chromatic_number_via_matching(&g).unwrap().0, chi);
                }
            }
        }
    }

    #[test]
    fn validate_coloring_cases() {
        let c5 = generate::cycle(5).unwrap();
        let (_, col) = chromatic_number_bb(&c5).unwrap();
        assert!(validate_coloring(&c5, &col));
        let k3 = generate::complete(3).unwrap();
        assert!(!validate_coloring(&k3, &vec![0, 0, 0]));
        assert!(!validate_coloring(&k3, &vec![0, 1]));
    }

    #[test]
    fn report_c5() {
        let r = invariant_report(&generate::cycle(5).unwrap()).unwrap();
        assert_eq!((r.n, r.m, r.max_degree, r.alpha, r.omega, r.chi), (5, 5, 2, 2, 2, 3));
    }

    #[test]
    fn report_k4() {
        let r = invariant_report(&generate::complete(4).unwrap()).unwrap();
        assert_eq!((r.n, r.m, r.max_degree, r.alpha, r.omega, r.chi), (4, 6, 3, 1, 4, 4));
    }

    #[test]
    fn report_wheel5() {
        let g = generate::cycle(5).unwrap().join(&generate::complete(1).unwrap()).unwrap();
        let r = invariant_report(&g).unwrap();
        assert_eq!((r.n, r.max_degree, r.omega, r.chi), (6, 5, 3, 4));
    }

    #[test]
    fn join_additivity_spot_checks() {
        let pairs = [
            (generate::cycle(5).unwrap(), generate::complete(3).unwrap()),
            (generate::cycle(5).unwrap(), generate::cycle(5).unwrap()),
            (generate::complete(2).unwrap(), generate::cycle(7).unwrap()),
        ];
        for (a, b) in pairs {
            let j = a.join(&b).unwrap();
            let (ca, cb, cj) = (
                chromatic_number_bb(&a).unwrap().0,
                chromatic_number_bb(&b).unwrap().0,
                chromatic_number_bb(&j).unwrap().0,
            );
            assert_eq!(cj, ca + cb);
            let (oa, ob, oj) = (
                clique_number(&a).unwrap().0,
                clique_number(&b).unwrap().0,
                clique_number(&j).unwrap().0,
            );
            assert_eq!(oj, oa + ob);
        }
    }

}
