//! Named graphs used by the harness beyond the core constructors.

use binedge_core::classes::{decomposing_vertex, flower, jahangir};
use binedge_core::invariants::free_vertices;
use binedge_core::Graph;

use crate::enumerate::{enumerate_connected_graphs, graph_id};

/// Block graph with five triangles and two pendant edges whose h-polynomial
/// has degree 5 while its regularity is 6.
pub fn counterexample_graph() -> Graph {
    Graph::new(
        13,
        &[
            (1, 2), (1, 3), (2, 3),
            (1, 4), (1, 5), (4, 5),
            (1, 6), (1, 7), (6, 7),
            (2, 10), (2, 11), (10, 11),
            (2, 12), (2, 13), (12, 13),
            (3, 8), (3, 9),
        ],
    )
    .expect("hardcoded edges are valid")
}

/// `k` copies of the counterexample chained at free vertices: vertex 9 of
/// each copy is identified with vertex 8 of the next.
pub fn counterexample_chain(k: usize) -> Graph {
    let base = counterexample_graph();
    let mut g = base.clone();
    let mut tail = 9;
    for _ in 1..k {
        let before = g.n();
        g = g.glue_at_free_vertices(tail, &base, 8).expect("pendant leaves are free");
        // vertex 9 of the new copy follows its vertex 8 in the relabeling
        tail = before + 8;
    }
    g
}

/// `P_2 * K_m^c`: two adjacent vertices joined to `m` independent ones.
pub fn join_example(m: usize) -> Graph {
    Graph::path(2).join(&Graph::empty(m)).expect("small join")
}

/// `(m, k)` with `g ≅ J_{m,k}`.
pub fn jahangir_parameters(g: &Graph) -> Option<(usize, usize)> {
    let cycle = g.n().checked_sub(1)?;
    (1..=cycle)
        .filter(|m| cycle % m == 0 && cycle / m >= 3)
        .map(|m| (m, cycle / m))
        .find(|&(m, k)| jahangir(m, k).map(|j| j.is_isomorphic(g)).unwrap_or(false))
}

/// `(h, k)` with `g ≅ F_{h,k}`.
pub fn flower_parameters(g: &Graph) -> Option<(usize, usize)> {
    let rest = g.n().checked_sub(1)?;
    (0..=rest / 3)
        .filter(|k| (rest - 3 * k) % 2 == 0)
        .map(|k| ((rest - 3 * k) / 2, k))
        .filter(|&(h, k)| h + k >= 3)
        .find(|&(h, k)| flower(h, k).map(|f| f.is_isomorphic(g)).unwrap_or(false))
}

/// Connected indecomposable graphs with at least one edge on `2..=max_n`
/// vertices.
pub fn indecomposable_graphs(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(|n| enumerate_connected_graphs(n).expect("within enumeration limit"))
        .filter(|g| decomposing_vertex(g).is_none())
        .collect()
}

/// Every graph obtained by gluing two connected indecomposable graphs at a
/// free vertex of each, with at most `max_n` vertices, once per isomorphism
/// class of the triple (glued graph, part, part).
pub fn glued_pairs(max_n: usize) -> Vec<(Graph, Graph, Graph)> {
    let parts = indecomposable_graphs(max_n.saturating_sub(1));
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (a_idx, a) in parts.iter().enumerate() {
        for b in &parts[a_idx..] {
            if a.n() + b.n() - 1 > max_n {
                continue;
            }
            for v1 in free_vertices(a).iter() {
                for v2 in free_vertices(b).iter() {
                    let glued = a.glue_at_free_vertices(v1, b, v2).expect("free vertices");
                    if seen.insert(graph_id(&glued)) {
                        out.push((glued, a.clone(), b.clone()));
                    }
                }
            }
        }
    }
    out
}
