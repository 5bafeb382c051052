//! Compact undirected graph on at most 64 vertices.
//!
//! Adjacency is one `u64` bitset row per vertex, so neighborhood queries,
//! common-neighbor intersections and degree counts are single word ops.

use std::fmt;

use crate::error::Error;

/// Hard representation limit: one bitset word per adjacency row.
pub const MAX_VERTICES: usize = 64;

/// Environment variable that lowers the solver size cap below 64.
pub const CAP_ENV_VAR: &str = "CHI_BOUND_MAX_N";

/// Effective size cap for the exact solvers. Defaults to [`MAX_VERTICES`];
/// the env var can only lower it.
pub fn solver_cap() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .map(|v| v.min(MAX_VERTICES))
        .unwrap_or(MAX_VERTICES)
}

/// Immutable simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, Error> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<(), Error> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood N(u) as a bitset.
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    /// Closed neighborhood N(u) plus u itself.
    pub fn closed_neighbors(&self, u: usize) -> u64 {
        self.adj[u] | 1 << u
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Bitset with all `n` vertex bits set.
    pub fn vertex_mask(&self) -> u64 {
        mask_lo(self.n)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut rest = self.adj[u] & !mask_lo(u + 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                out.push((u, v));
                rest &= rest - 1;
            }
        }
        out
    }

    /// Complement: edge iff absent in `self`, never a self-loop.
    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let adj = (0..self.n)
            .map(|u| all & !self.adj[u] & !(1 << u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Join: disjoint copies of both graphs plus every cross edge.
    pub fn join(&self, other: &Graph) -> Result<Graph, Error> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let other_mask = mask_lo(n) & !mask_lo(self.n);
        let self_mask = mask_lo(self.n);
        let mut adj = Vec::with_capacity(n);
        for u in 0..self.n {
            adj.push(self.adj[u] | other_mask);
        }
        for u in 0..other.n {
            adj.push(other.adj[u] << self.n | self_mask);
        }
        Ok(Graph { n, adj })
    }

    /// Induced subgraph on `s`, relabeled `0..|s|` in ascending original order.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph, Error> {
        let mut verts: Vec<usize> = s.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// True iff every pair of vertices in the bitset `s` is adjacent.
    pub fn is_clique(&self, s: u64) -> bool {
        let mut rest = s;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if s & !self.closed_neighbors(u) != 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Bitset of the `k` lowest bits.
pub fn mask_lo(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Vertices of a bitset in ascending order.
pub fn bits_to_vec(mut s: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

/// Bitset from a vertex slice.
pub fn vec_to_bits(s: &[usize]) -> u64 {
    s.iter().fold(0u64, |acc, &v| acc | 1 << v)
}
