//! Maximum-cardinality matching in general graphs.
//!
//! Augmenting-path search with blossom (odd cycle) contraction, O(n^3).
//! Deterministic: roots and neighbors are scanned in ascending order.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{bits_to_vec, Graph};

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    /// Edges as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Check disjointness and that every edge is present in `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = 0u64;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return false;
            }
            let pair = 1u64 << u | 1u64 << v;
            if seen & pair != 0 {
                return false;
            }
            seen |= pair;
        }
        true
    }
}

struct Search<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
}

impl<'a> Search<'a> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, blossom_base: usize, mut child: usize, flag: &mut [bool]) {
        while self.base[v] != blossom_base {
            flag[self.base[v]] = true;
            flag[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS from `root`; returns the exposed endpoint of an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.in_tree.iter_mut().for_each(|t| *t = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for to in bits_to_vec(self.g.neighbors(v)) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract the blossom
                    let blossom_base = self.lca(v, to);
                    let mut flag = vec![false; n];
                    self.mark_path(v, blossom_base, to, &mut flag);
                    self.mark_path(to, blossom_base, v, &mut flag);
                    for i in 0..n {
                        if flag[self.base[i]] {
                            self.base[i] = blossom_base;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.in_tree[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Maximum matching of `g`.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut search = Search {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        in_tree: vec![false; n],
    };
    for root in 0..n {
        if search.mate[root] != NONE {
            continue;
        }
        if let Some(mut v) = search.find_path(root) {
            // flip matched/unmatched edges along the path
            while v != NONE {
                let pv = search.parent[v];
                let next = search.mate[pv];
                search.mate[v] = pv;
                search.mate[pv] = v;
                v = next;
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = (0..n)
        .filter(|&u| search.mate[u] != NONE && u < search.mate[u])
        .map(|u| (u, search.mate[u]))
        .collect();
    edges.sort_unstable();
    Matching { edges }
}
