//! Connected graphs up to isomorphism.

use std::collections::BTreeMap;

use binedge_core::io::write_graph6;
use binedge_core::Graph;
use thiserror::Error;

pub const ENUMERATION_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration supports 1..={limit} vertices, got {n}")]
pub struct EnumerationError {
    pub n: usize,
    pub limit: usize,
}

/// Canonical key used to identify a graph up to isomorphism.
pub fn graph_id(g: &Graph) -> String {
    write_graph6(&g.canonical_form().0)
}

/// One canonical representative per isomorphism class of connected graphs
/// on `n` vertices, ordered by key.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// each class on `n` vertices arises by attaching a new vertex to a class on
/// `n - 1` vertices.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(EnumerationError { n, limit: ENUMERATION_LIMIT });
    }
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let k1 = Graph::complete(1);
    level.insert(graph_id(&k1), k1);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for mask in 1u32..1 << (size - 1) {
                let mut edges = g.edges().to_vec();
                edges.extend((1..size).filter(|v| mask >> (v - 1) & 1 == 1).map(|v| (v, size)));
                let h = Graph::new(size, &edges).expect("valid extension");
                let (canon, _) = h.canonical_form();
                next.entry(write_graph6(&canon)).or_insert(canon);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert!(enumerate_connected_graphs(8).is_err());
        assert!(enumerate_connected_graphs(0).is_err());
    }

    #[test]
    fn three_vertices_are_path_and_triangle() {
        let gs = enumerate_connected_graphs(3).unwrap();
        let mut edges: Vec<usize> = gs.iter().map(|g| g.edge_count()).collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![2, 3]);
        assert!(gs.iter().all(|g| g.is_connected()));
    }
}
