//! Combinatorial invariants: maximal cliques, free and internal vertices,
//! longest induced paths, vertex connectivity and block structure.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// All maximal cliques of a graph, sorted by bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSet {
    pub cliques: Vec<VertexSet>,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Size of the largest clique.
    pub fn clique_number(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Number of listed cliques containing `v`.
    pub fn containing(&self, v: usize) -> usize {
        self.cliques.iter().filter(|c| c.contains(v)).count()
    }
}

/// Bron–Kerbosch with pivoting. The pivot maximizes `|P ∩ N(u)|` over
/// `P ∪ X`, ties going to the smallest label.
pub fn maximal_cliques(g: &Graph) -> CliqueSet {
    let mut cliques = Vec::new();
    bron_kerbosch(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut cliques);
    cliques.sort();
    CliqueSet { cliques }
}

fn bron_kerbosch(
    g: &Graph,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| (p.intersection(g.neighbors(u)).len(), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    for v in p.difference(g.neighbors(pivot)).iter() {
        let nv = g.neighbors(v);
        let mut r2 = r;
        r2.insert(v);
        bron_kerbosch(g, r2, p.intersection(nv), x.intersection(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// `c(G)`, the number of maximal cliques.
pub fn clique_count(g: &Graph) -> usize {
    maximal_cliques(g).len()
}

/// `ω(G)`.
pub fn clique_number(g: &Graph) -> usize {
    maximal_cliques(g).clique_number()
}

pub fn free_vertices(g: &Graph) -> VertexSet {
    (1..=g.n()).filter(|&v| g.is_free_vertex(v)).collect()
}

pub fn internal_vertices(g: &Graph) -> VertexSet {
    g.vertices().difference(free_vertices(g))
}

/// `iv(G)`.
pub fn internal_vertex_count(g: &Graph) -> usize {
    internal_vertices(g).len()
}

/// Number of maximal cliques containing `v`.
pub fn clique_degree(g: &Graph, v: usize) -> usize {
    maximal_cliques(g).containing(v)
}

/// `l(G)`: the number of edges of a longest induced path. Exhaustive; for a
/// disconnected graph this is the maximum over components.
pub fn longest_induced_path(g: &Graph) -> usize {
    let mut best = 0;
    for start in 1..=g.n() {
        let path = VertexSet::singleton(start);
        // everything adjacent to a non-terminal path vertex is blocked
        extend_induced_path(g, path, start, VertexSet::EMPTY, 0, &mut best);
    }
    best
}

fn extend_induced_path(
    g: &Graph,
    path: VertexSet,
    last: usize,
    blocked: VertexSet,
    len: usize,
    best: &mut usize,
) {
    *best = (*best).max(len);
    if len + 1 + g.n().saturating_sub(path.len()) <= *best {
        return;
    }
    let candidates = g.neighbors(last).difference(path).difference(blocked);
    let next_blocked = blocked.union(g.neighbors(last));
    for w in candidates.iter() {
        let mut p2 = path;
        p2.insert(w);
        extend_induced_path(g, p2, w, next_blocked, len + 1, best);
    }
}

/// `κ(G)`: the largest `k < n` such that removing fewer than `k` vertices
/// never disconnects the graph. Disconnected graphs give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    for size in 1..n.saturating_sub(1) {
        if separator_of_size(g, size) {
            return size;
        }
    }
    n - 1
}

fn separator_of_size(g: &Graph, size: usize) -> bool {
    let n = g.n();
    let mut chosen = Vec::with_capacity(size);
    fn rec(g: &Graph, n: usize, size: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            let removed: VertexSet = chosen.iter().copied().collect();
            let rest = g.vertices().difference(removed);
            return rest.len() >= 2 && g.components_within(rest).len() > 1;
        }
        for v in from..=n {
            chosen.push(v);
            if rec(g, n, size, v + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(g, n, size, 1, &mut chosen)
}

/// Blocks (biconnected components, isolated vertices as singleton blocks),
/// cut vertices and bridges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    pub bridges: Vec<(usize, usize)>,
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut state = Tarjan {
        g,
        disc: vec![0; n + 1],
        low: vec![0; n + 1],
        time: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut: VertexSet::EMPTY,
    };
    for v in 1..=n {
        if state.disc[v] == 0 {
            if g.degree(v) == 0 {
                state.disc[v] = 1;
                state.blocks.push(VertexSet::singleton(v));
                continue;
            }
            state.visit(v, 0);
        }
    }
    let mut blocks = state.blocks;
    blocks.sort();
    let mut bridges: Vec<(usize, usize)> = blocks
        .iter()
        .filter(|b| b.len() == 2)
        .map(|b| {
            let v = b.to_vec();
            (v[0], v[1])
        })
        .collect();
    bridges.sort();
    BlockDecomposition { blocks, cut_vertices: state.cut, bridges }
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
    cut: VertexSet,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: usize) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        for w in self.g.neighbors(u).iter() {
            if self.disc[w] == 0 {
                children += 1;
                self.edge_stack.push((u, w));
                self.visit(w, u);
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    if parent != 0 || children > 1 {
                        self.cut.insert(u);
                    }
                    let mut block = VertexSet::EMPTY;
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if w != parent && self.disc[w] < self.disc[u] {
                self.edge_stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
        if parent == 0 && children > 1 {
            self.cut.insert(u);
        }
    }
}

pub fn cut_vertices(g: &Graph) -> VertexSet {
    block_decomposition(g).cut_vertices
}

pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    block_decomposition(g).bridges
}
