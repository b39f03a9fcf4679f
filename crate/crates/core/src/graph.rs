//! Immutable simple undirected graphs and the named families used by the harness.
//!
//! Adjacency is a dense bitset, one row of `u64` words per vertex. Every
//! structural operation returns a new graph with vertices relabeled to
//! `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Largest order accepted by the constructors.
pub const MAX_ORDER: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) are collapsed.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, edges.iter().copied())
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_ORDER {
            return input(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            ));
        }
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Whether every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return input("connectivity is undefined for the empty graph");
        }
        Ok(self.components().len() == 1)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Number of connected components with an odd number of vertices.
    pub fn odd_components(&self) -> usize {
        self.components()
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count()
    }

    /// Subgraph induced by `keep`, relabeled in the order given.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Self::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// `G - S`: removes `s` and every incident edge; survivors keep their
    /// relative order.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Self> {
        s.check_within(self.n)?;
        let keep: Vec<usize> = (0..self.n).filter(|v| !s.contains(*v)).collect();
        Ok(self.induced(&keep))
    }

    /// Vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.n;
        let mut g = Self::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + shift, v + shift);
        }
        g
    }

    /// `G1 ∨ G2`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Self {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.insert(u, self.n + v);
            }
        }
        g
    }

    /// Spanning subgraph keeping only the edges for which `keep` is true.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            if keep(u, v) {
                g.insert(u, v);
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return input("permutation length differs from graph order");
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return input("not a permutation");
            }
        }
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Sorted, duplicate-free set of vertex labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    /// Members of a bitmask over vertices `0..64`.
    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => input(format!("vertex {v} is not in 0..{n}")),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// `o(G - S) - |S|`, the Tutte deficiency of a single set.
pub fn tutte_deficiency(g: &Graph, s: &VertexSet) -> Result<i64> {
    Ok(g.delete_vertices(s)?.odd_components() as i64 - s.len() as i64)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.insert(u, v);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 1..n {
        g.insert(u - 1, u);
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return input("a cycle needs at least 3 vertices");
    }
    let mut g = path(n);
    g.insert(n - 1, 0);
    Ok(g)
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for v in 1..=leaves {
        g.insert(0, v);
    }
    g
}

pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.insert(i, (i + 1) % 5);
        g.insert(i, i + 5);
        g.insert(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// `K_a ∨ K̄_b`: clique on `0..a`, independent set on `a..a+b`.
pub fn clique_join_independent(a: usize, b: usize) -> Graph {
    complete(a).join(&Graph::empty(b))
}

/// `K_s ∨ (K_{n1} ∪ … ∪ K_{nk})`: the clique `S` occupies `0..s`, then
/// each part in the order given.
pub fn proof_graph(s: usize, parts: &[usize]) -> Result<Graph> {
    if s == 0 {
        return input("the separator S must be nonempty");
    }
    if parts.is_empty() {
        return input("at least one component is required");
    }
    if parts.contains(&0) {
        return input("component orders must be positive");
    }
    let total = s + parts.iter().sum::<usize>();
    if total > MAX_ORDER {
        return input(format!(
            "order {total} exceeds the supported maximum {MAX_ORDER}"
        ));
    }
    let rest = parts
        .iter()
        .fold(Graph::empty(0), |acc, &p| acc.disjoint_union(&complete(p)));
    Ok(complete(s).join(&rest))
}

/// `K1 ∨ (K_{n-3} ∪ K̄2)`: hub 0, clique `1..=n-3`, pendants `n-2`, `n-1`.
///
/// This is the chain-join reading fixed by the 3-class quotient matrix
/// `[[2n-7, 1, 0], [n-3, n-1, 2], [0, 1, 1]]`: no edges between the clique
/// and the two pendants.
pub fn extremal_h(n: usize) -> Result<Graph> {
    if n < 4 {
        return input(format!("extremal_h needs n >= 4, got {n}"));
    }
    proof_graph(1, &[n - 3, 1, 1])
}
