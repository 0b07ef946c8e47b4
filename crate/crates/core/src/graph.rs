//! Labeled simple graphs on vertices `1..=n` and the surgeries used on them.
//!
//! Vertices are plain 1-based `usize` labels. Adjacency is kept as one bitmask
//! per vertex, which caps graphs at [`MAX_VERTICES`] vertices; everything here
//! is desk scale.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(usize, usize),
    #[error("edge {{{0}, {1}}} is already present")]
    EdgePresent(usize, usize),
    #[error("vertex {0} is not a free vertex")]
    NotFree(usize),
    #[error("graph has {0} vertices, limit is {1}")]
    TooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A set of vertex labels stored as a bitmask (bit `v - 1` for vertex `v`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `1..=n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= 64 && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest label in the set.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v + 1)
    }
}

/// A simple undirected graph on `1..=n`.
///
/// Edges are stored as sorted pairs `(i, j)` with `i < j`, so two graphs are
/// equal exactly when they have the same labeled edge set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, collapsing duplicate pairs in either orientation.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n, MAX_VERTICES));
        }
        let mut adj = vec![0u64; n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for i in 0..n {
            let mut higher = adj[i] >> (i + 1);
            while higher != 0 {
                let d = higher.trailing_zeros() as usize;
                edges.push((i + 1, i + 2 + d));
                higher &= higher - 1;
            }
        }
        Graph { n, edges, adj }
    }

    /// Rebuilds the adjacency cache after deserialization.
    pub fn rebuild(self) -> Result<Self, GraphError> {
        Graph::new(self.n, &self.edges)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![0; n])
    }

    pub fn complete(n: usize) -> Self {
        let full = VertexSet::full(n).0;
        Self::from_adjacency((0..n).map(|i| full & !(1 << i)).collect())
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).expect("path edges are valid")
    }

    /// Cycle `1 - 2 - ... - n - 1`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Graph::new(n, &edges).expect("cycle edges are valid")
    }

    /// Star `K_{1,k}` with center 1 and leaves `2..=k+1`.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (2..=k + 1).map(|v| (1, v)).collect();
        Graph::new(k + 1, &edges).expect("star edges are valid")
    }

    /// Complete bipartite graph with parts `1..=p` and `p+1..=p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut edges = Vec::new();
        for i in 1..=p {
            for j in p + 1..=p + q {
                edges.push((i, j));
            }
        }
        Graph::new(p + q, &edges).expect("bipartite edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && j >= 1 && j <= self.n && self.adj[i - 1] >> (j - 1) & 1 == 1
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Whether `set` induces a complete subgraph.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| set.difference(VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    /// A vertex is free when its neighborhood is a clique, i.e. it lies in
    /// exactly one maximal clique.
    pub fn is_free_vertex(&self, v: usize) -> bool {
        self.is_clique(self.neighbors(v))
    }

    /// Induced subgraph on `set`, relabeled to `1..=|set|` in increasing label
    /// order. The returned map sends new label `k` to `map[k - 1]`.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(v) = set.iter().find(|&v| v > self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let map = set.to_vec();
        let mut position = vec![0usize; self.n + 1];
        for (k, &v) in map.iter().enumerate() {
            position[v] = k + 1;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(i, j)| set.contains(i) && set.contains(j))
            .map(|&(i, j)| (position[i], position[j]))
            .collect();
        Ok((Graph::new(map.len(), &edges)?, map))
    }

    /// `G \ v`, relabeled to `1..=n-1`.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_vertex(v)?;
        let mut keep = self.vertices();
        keep.remove(v);
        self.induced_subgraph(keep)
    }

    /// Same vertex set with every edge at `v` removed. This is `G \ v`
    /// embedded back into the original labeling.
    pub fn isolate_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut adj = self.adj.clone();
        adj[v - 1] = 0;
        for a in adj.iter_mut() {
            *a &= !(1u64 << (v - 1));
        }
        Ok(Self::from_adjacency(adj))
    }

    /// `G \ e`: the same vertex set without edge `{u, v}`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
        }
        let mut adj = self.adj.clone();
        adj[u - 1] &= !(1u64 << (v - 1));
        adj[v - 1] &= !(1u64 << (u - 1));
        Ok(Self::from_adjacency(adj))
    }

    /// Adds edge `{u, v}`; a no-op if it is already present.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut adj = self.adj.clone();
        adj[u - 1] |= 1u64 << (v - 1);
        adj[v - 1] |= 1u64 << (u - 1);
        Ok(Self::from_adjacency(adj))
    }

    fn complete_set(adj: &mut [u64], set: VertexSet) {
        for v in set.iter() {
            adj[v - 1] |= set.0 & !(1u64 << (v - 1));
        }
    }

    /// `G_v`: turns `N(v)` into a clique.
    pub fn neighborhood_completion(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut adj = self.adj.clone();
        Self::complete_set(&mut adj, self.neighbors(v));
        Ok(Self::from_adjacency(adj))
    }

    /// `G_e` for a non-edge `e = {u, v}`: completes both `N(u)` and `N(v)`.
    /// The edge `e` itself is not added.
    pub fn edge_completion(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u.min(v), u.max(v)));
        }
        let mut adj = self.adj.clone();
        Self::complete_set(&mut adj, self.neighbors(u));
        Self::complete_set(&mut adj, self.neighbors(v));
        Ok(Self::from_adjacency(adj))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n, MAX_VERTICES));
        }
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&a| a << shift));
        Ok(Self::from_adjacency(adj))
    }

    /// The join `H * H'`: disjoint union plus every edge between the parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let union = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n).0;
        let right = VertexSet::full(union.n).0 & !left;
        let adj = union
            .adj
            .iter()
            .enumerate()
            .map(|(i, &a)| if i < self.n { a | right } else { a | left })
            .collect();
        Ok(Self::from_adjacency(adj))
    }

    /// Identifies free vertex `v1` of `self` with free vertex `v2` of
    /// `other`. Vertices of `self` keep their labels; the identified vertex is
    /// `v1`; the remaining vertices of `other` follow in increasing order.
    pub fn glue_at_free_vertices(
        &self,
        v1: usize,
        other: &Graph,
        v2: usize,
    ) -> Result<Graph, GraphError> {
        self.check_vertex(v1)?;
        other.check_vertex(v2)?;
        if !self.is_free_vertex(v1) {
            return Err(GraphError::NotFree(v1));
        }
        if !other.is_free_vertex(v2) {
            return Err(GraphError::NotFree(v2));
        }
        Ok(self.identify_vertices(v1, other, v2)?)
    }

    /// Vertex identification without the freeness precondition.
    pub fn identify_vertices(
        &self,
        v1: usize,
        other: &Graph,
        v2: usize,
    ) -> Result<Graph, GraphError> {
        self.check_vertex(v1)?;
        other.check_vertex(v2)?;
        let n = self.n + other.n - 1;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n, MAX_VERTICES));
        }
        let relabel = |w: usize| -> usize {
            if w == v2 {
                v1
            } else if w < v2 {
                self.n + w
            } else {
                self.n + w - 1
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (relabel(a), relabel(b))));
        Graph::new(n, &edges)
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Components of the induced subgraph on `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut remaining = within;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier.iter() {
                    next |= self.adj[v - 1];
                }
                let next = VertexSet(next).intersection(within).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let edges: Vec<_> = self.edges.iter().map(|&(i, j)| (perm[i - 1], perm[j - 1])).collect();
        Graph::new(self.n, &edges)
    }

    /// Whether `G` is a path `P_n` under some labeling.
    pub fn is_path_graph(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.is_connected()
            && self.edge_count() == self.n - 1
            && (1..=self.n).all(|v| self.degree(v) <= 2)
    }

    /// Canonical form under relabeling, by individualization and color
    /// refinement with an exhaustive search tree.
    ///
    /// Returns the canonical graph and a permutation `perm` with
    /// `self.relabel(&perm) == canonical`.
    pub fn canonical_form(&self) -> (Graph, Vec<usize>) {
        let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
        self.canonical_search(vec![0; self.n], &mut best);
        let perm = best.map(|(_, p)| p).unwrap_or_default();
        let canonical = self.relabel(&perm).expect("permutation is valid");
        (canonical, perm)
    }

    fn canonical_search(&self, colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
        let colors = self.refine(colors);
        let n = self.n;
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=n {
            cells.entry(colors[v - 1]).or_default().push(v);
        }
        let target = cells.values().filter(|c| c.len() > 1).min_by_key(|c| c.len());
        let Some(cell) = target else {
            let perm: Vec<usize> = colors.iter().map(|&c| c + 1).collect();
            let key = adjacency_key(self, &perm);
            if best.as_ref().is_none_or(|(b, _)| key > *b) {
                *best = Some((key, perm));
            }
            return;
        };
        // mutual twins are interchangeable, so one branch covers them all
        let twins = cell.iter().enumerate().all(|(k, &u)| {
            cell[k + 1..].iter().all(|&w| {
                let mut nu = self.neighbors(u);
                let mut nw = self.neighbors(w);
                nu.remove(w);
                nw.remove(u);
                nu == nw
            })
        });
        let branches: Vec<usize> = if twins { vec![cell[0]] } else { cell.clone() };
        for v in branches {
            let next: Vec<usize> = (1..=n).map(|u| 2 * colors[u - 1] + usize::from(u != v)).collect();
            self.canonical_search(next, best);
        }
    }

    /// Stable color refinement. Colors are isomorphism-invariant ranks
    /// `0..k`, ordered consistently with the input colors.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = self.n;
        let mut classes = usize::MAX;
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (1..=n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.neighbors(v).iter().map(|u| colors[u - 1]).collect();
                    nb.sort_unstable();
                    (colors[v - 1], nb)
                })
                .collect();
            let mut distinct = signatures.clone();
            distinct.sort();
            distinct.dedup();
            colors = signatures
                .iter()
                .map(|s| distinct.binary_search(s).expect("signature present"))
                .collect();
            if distinct.len() == classes {
                return colors;
            }
            classes = distinct.len();
        }
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut d1: Vec<usize> = (1..=self.n).map(|v| self.degree(v)).collect();
        let mut d2: Vec<usize> = (1..=other.n).map(|v| other.degree(v)).collect();
        d1.sort_unstable();
        d2.sort_unstable();
        if d1 != d2 {
            return false;
        }
        self.canonical_form().0 == other.canonical_form().0
    }
}

/// Upper-triangle adjacency bits of the relabeled graph, packed column by
/// column (`(0,1), (0,2), (1,2), (0,3), ...`) into 64-bit words.
fn adjacency_key(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = g.n;
    let mut relabeled = vec![0u64; n];
    for &(i, j) in &g.edges {
        let (a, b) = (perm[i - 1] - 1, perm[j - 1] - 1);
        relabeled[a] |= 1 << b;
        relabeled[b] |= 1 << a;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut key = vec![0u64; total.div_ceil(64).max(1)];
    let mut bit = 0usize;
    for j in 1..n {
        for row in relabeled.iter().take(j) {
            if row >> j & 1 == 1 {
                key[bit / 64] |= 1u64 << (63 - bit % 64);
            }
            bit += 1;
        }
    }
    key
}
