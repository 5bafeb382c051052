//! Graph constructors, labeled enumeration, and rejection sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Graph, MAX_VERTICES};
use crate::recognition;

/// Default cap for exhaustive labeled enumeration.
pub const ENUMERATION_CAP: usize = 7;

/// Declarative description of a constructed graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Cycle { len: usize },
    Complete { size: usize },
    /// Hub joined to a cycle of `rim` vertices.
    Wheel { rim: usize },
    /// `copies`-fold join of the base graph with itself.
    JoinPower { base: Box<GeneratorSpec>, copies: usize },
    Random { n: usize, p: f64, seed: u64 },
}

/// Build the graph a spec describes.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, Error> {
    match spec {
        GeneratorSpec::Cycle { len } => cycle(*len),
        GeneratorSpec::Complete { size } => complete(*size),
        GeneratorSpec::Wheel { rim } => wheel(*rim),
        GeneratorSpec::JoinPower { base, copies } => {
            let g = generate(base)?;
            join_power(&g, *copies)
        }
        GeneratorSpec::Random { n, p, seed } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidGenerator(format!("p={p} not in [0,1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            random_graph(*n, *p, &mut rng)
        }
    }
}

pub fn cycle(len: usize) -> Result<Graph, Error> {
    if len < 3 {
        return Err(Error::InvalidGenerator(format!("cycle length {len} < 3")));
    }
    let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    Graph::from_edges(len, &edges)
}

pub fn complete(size: usize) -> Result<Graph, Error> {
    let mut edges = Vec::new();
    for u in 0..size {
        for v in u + 1..size {
            edges.push((u, v));
        }
    }
    Graph::from_edges(size, &edges)
}

/// `join(K1, C_rim)`: vertex 0..rim-1 is the cycle, vertex `rim` the hub.
pub fn wheel(rim: usize) -> Result<Graph, Error> {
    if rim < 3 {
        return Err(Error::InvalidGenerator(format!("wheel rim {rim} < 3")));
    }
    cycle(rim)?.join(&complete(1)?)
}

/// k-fold join of `g` with itself.
pub fn join_power(g: &Graph, copies: usize) -> Result<Graph, Error> {
    if copies < 1 {
        return Err(Error::InvalidGenerator(format!("copy count {copies} < 1")));
    }
    let mut acc = g.clone();
    for _ in 1..copies {
        acc = acc.join(g)?;
    }
    Ok(acc)
}

/// Erdős–Rényi G(n, p) sample.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph, Error> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    // pair order matches the edge-mask / graph6 column-major order
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Number of vertex pairs, i.e. edge-mask bit width for `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Graph for a single edge mask. Bit `t` of the mask is the `t`-th pair in
/// column-major upper-triangle order: (0,1), (0,2), (1,2), (0,3), ...
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut t = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> t & 1 == 1 {
                edges.push((u, v));
            }
            t += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask pairs are in range")
}

/// All `2^C(n,2)` labeled graphs on `n` vertices in edge-mask counter order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>, Error> {
    enumerate_labeled_capped(n, ENUMERATION_CAP)
}

pub fn enumerate_labeled_capped(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = Graph>, Error> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let total = 1u64 << pair_count(n);
    Ok((0..total).map(move |mask| graph_from_mask(n, mask)))
}

/// Rejection-sample G(n, p) graphs until one is a class member.
/// Deterministic for a fixed seed.
pub fn random_member(
    n: usize,
    p: f64,
    seed: u64,
    max_tries: u64,
) -> Result<Graph, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidGenerator(format!("p={p} not in [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        let g = random_graph(n, p, &mut rng)?;
        if recognition::classify_membership(&g).member {
            return Ok(g);
        }
    }
    Err(Error::SamplingExhausted { tries: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants;

    #[test]
    fn cycle_basics() {
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(invariants::clique_number(&c5).unwrap().0, 2);
    }

    #[test]
    fn cycle_too_short() {
        assert!(cycle(2).is_err());
    }

    #[test]
    fn join_power_cross_edges() {
        let c5 = cycle(5).unwrap();
        let g = join_power(&c5, 2).unwrap();
        assert_eq!(g.n(), 10);
        for u in 0..5 {
            for v in 5..10 {
                assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn join_power_clique_number_doubles() {
        let c5 = cycle(5).unwrap();
        for k in 1..=3 {
            let g = join_power(&c5, k).unwrap();
            assert_eq!(invariants::clique_number(&g).unwrap().0, 2 * k);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled(4).unwrap().count(), 64);
        assert!(enumerate_labeled(8).is_err());
    }

    #[test]
    fn enumeration_distinct() {
        let all: Vec<Graph> = enumerate_labeled(4).unwrap().collect();
        for (i, a) in all.iter().enumerate() {
            for b in all.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn random_member_deterministic() {
        let a = random_member(5, 0.5, 1, 1000);
        let b = random_member(5, 0.5, 1, 1000);
        match (a, b) {
            (Ok(x), Ok(y)) => assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            _ => panic!("same seed gave different outcomes"),
        }
    }

    #[test]
    fn random_member_single_vertex() {
        let g = random_member(1, 0.3, 7, 10).unwrap();
        assert_eq!(g.n(), 1);
    }

    #[test]
    fn random_member_sparse_fails() {
        // sparse graphs at n=40 contain 3K1 essentially always
        assert!(matches!(
            random_member(40, 0.05, 123, 50),
            Err(Error::SamplingExhausted { .. })
        ));
    }
}
