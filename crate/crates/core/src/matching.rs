//! Maximum cardinality matching with blossom contraction, plus an
//! exhaustive Tutte–Berge oracle used to cross-check it.
//!
//! When a graph has no perfect matching, [`maximum_matching`] also returns a
//! Tutte witness `S` taken from the Gallai–Edmonds decomposition:
//! `D` is the set of vertices missed by at least one maximum matching and
//! `S = N(D) \ D`. That set attains `o(G - S) - |S| = n - 2ν(G)`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{tutte_deficiency, Graph, VertexSet};

const NONE: usize = usize::MAX;

/// Largest order the exhaustive oracle accepts (it visits all `2^n` subsets).
pub const ORACLE_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    /// Matching number ν(G).
    pub size: usize,
    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Present iff the matching is not perfect; `o(G - S) - |S| >= 1`.
    pub witness: Option<VertexSet>,
}

impl MatchingResult {
    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.size == n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TutteBerge {
    /// `max_S (o(G - S) - |S|)`, including `S = ∅`.
    pub deficiency: i64,
    /// First maximizer in (size, mask) order.
    pub witness: VertexSet,
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    active: Vec<bool>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Self {
            adj,
            active: vec![true; n],
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from the exposed vertex `root`;
    /// returns its other endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if !self.active[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, end: usize) {
        let mut v = end;
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn solve(&mut self) {
        let n = self.adj.len();
        // greedy warm start
        for u in 0..n {
            if self.mate[u] == NONE {
                if let Some(&v) = self.adj[u].iter().find(|&&v| self.mate[v] == NONE) {
                    self.mate[u] = v;
                    self.mate[v] = u;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
    }

    /// Vertices missed by some maximum matching. Requires `solve` first.
    fn missable(&mut self) -> Vec<bool> {
        let n = self.adj.len();
        let mut out = vec![false; n];
        let saved = self.mate.clone();
        for v in 0..n {
            let u = saved[v];
            if u == NONE {
                out[v] = true;
                continue;
            }
            // v is missable iff G - v has an augmenting path from its old mate
            self.mate.copy_from_slice(&saved);
            self.mate[u] = NONE;
            self.mate[v] = NONE;
            self.active[v] = false;
            out[v] = self.find_path(u).is_some();
            self.active[v] = true;
        }
        self.mate = saved;
        out
    }
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|u| g.neighbors(u).collect()).collect()
}

fn matched_pairs(mate: &[usize]) -> Vec<(usize, usize)> {
    mate.iter()
        .enumerate()
        .filter(|&(u, &v)| v != NONE && u < v)
        .map(|(u, &v)| (u, v))
        .collect()
}

/// Matching number only; skips the witness computation.
pub fn matching_number(g: &Graph) -> usize {
    let adj = adjacency_lists(g);
    let mut b = Blossom::new(&adj);
    b.solve();
    matched_pairs(&b.mate).len()
}

pub fn maximum_matching(g: &Graph) -> MatchingResult {
    let adj = adjacency_lists(g);
    let mut b = Blossom::new(&adj);
    b.solve();
    let edges = matched_pairs(&b.mate);
    let size = edges.len();
    let witness = (2 * size < g.order()).then(|| {
        let in_d = b.missable();
        let s: VertexSet = (0..g.order())
            .filter(|&v| !in_d[v] && adj[v].iter().any(|&u| in_d[u]))
            .collect();
        debug_assert_eq!(
            tutte_deficiency(g, &s).ok(),
            Some(g.order() as i64 - 2 * size as i64)
        );
        s
    });
    MatchingResult {
        size,
        edges,
        witness,
    }
}

/// True iff `2ν(G) = n`; always false for odd `n`.
pub fn has_perfect_matching(g: &Graph) -> bool {
    g.order().is_multiple_of(2) && 2 * matching_number(g) == g.order()
}

/// Exhaustive `max_S (o(G - S) - |S|)` over every `S ⊆ V`, by increasing
/// `|S|` and then increasing bitmask.
pub fn tutte_berge_oracle(g: &Graph) -> Result<TutteBerge> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::Capacity(format!(
            "exhaustive Tutte-Berge search needs n <= {ORACLE_MAX_ORDER}, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).fold(0u32, |m, v| m | 1 << v))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    let odd_after_removal = |s: u32| -> i64 {
        let mut left = full & !s;
        let mut odd = 0;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj[v] & left & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            odd += (comp.count_ones() % 2) as i64;
        }
        odd
    };

    let mut best = (odd_after_removal(0), 0u32);
    for size in 1..=n {
        // Gosper's hack: all masks with `size` bits in increasing order
        let mut s: u32 = (1u32 << size) - 1;
        while s <= full {
            let d = odd_after_removal(s) - size as i64;
            if d > best.0 {
                best = (d, s);
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            if r == 0 || c == 0 {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    Ok(TutteBerge {
        deficiency: best.0,
        witness: VertexSet::from_mask(best.1 as u64),
    })
}

/// Checks that `edges` is a matching of `g`: pairwise disjoint and every
/// pair an edge.
pub fn is_valid_matching(g: &Graph, edges: &[(usize, usize)]) -> bool {
    let mut used = vec![false; g.order()];
    edges.iter().all(|&(u, v)| {
        g.has_edge(u, v)
            && !std::mem::replace(&mut used[u], true)
            && !std::mem::replace(&mut used[v], true)
    })
}
