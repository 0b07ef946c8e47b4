use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// Indecomposable induced subgraphs whose union is `G`; distinct parts share
/// at most one vertex, free in both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Vertex sets of the parts, sorted.
    pub parts: Vec<VertexSet>,
    /// Vertices shared by two parts, sorted.
    pub gluing: Vec<usize>,
}

impl Decomposition {
    /// The parts as graphs, each with its map back to `G` labels.
    pub fn part_graphs(&self, g: &Graph) -> Vec<(Graph, Vec<usize>)> {
        self.parts.iter().map(|&p| g.induced_subgraph(p).expect("part vertices are valid")).collect()
    }
}

/// A vertex `v` of the induced subgraph on `part` splitting it as
/// `G_1 ∪ G_2` with `v` free in both, together with the two sides.
fn split(g: &Graph, part: VertexSet) -> Option<(usize, VertexSet, VertexSet)> {
    for v in part.iter() {
        let rest = part.difference(VertexSet::singleton(v));
        let comps = g.components_within(rest);
        if comps.len() != 2 {
            continue;
        }
        let nv = g.neighbors(v);
        if comps.iter().all(|&c| g.is_clique(nv.intersection(c))) {
            let one = VertexSet::singleton(v);
            return Some((v, comps[0].union(one), comps[1].union(one)));
        }
    }
    None
}

/// A vertex at which a connected `g` decomposes, if any.
pub fn decomposing_vertex(g: &Graph) -> Option<usize> {
    if !g.is_connected() {
        return None;
    }
    split(g, g.vertices()).map(|(v, _, _)| v)
}

pub fn decompose_indecomposable(g: &Graph) -> Decomposition {
    let mut work = g.connected_components();
    let mut parts = Vec::new();
    let mut gluing = Vec::new();
    while let Some(part) = work.pop() {
        match split(g, part) {
            Some((v, a, b)) => {
                gluing.push(v);
                work.push(a);
                work.push(b);
            }
            None => parts.push(part),
        }
    }
    parts.sort();
    gluing.sort_unstable();
    Decomposition { parts, gluing }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decomposition_examples() {
        let bowtie = Graph::new(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let d = decompose_indecomposable(&bowtie);
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.gluing, vec![3]);
        assert!(d.part_graphs(&bowtie).iter().all(|(p, _)| *p == Graph::complete(3)));

        let d = decompose_indecomposable(&Graph::path(5));
        assert_eq!(d.parts.len(), 4);
        assert_eq!(d.gluing, vec![2, 3, 4]);

        for n in 3..8 {
            assert_eq!(decompose_indecomposable(&Graph::cycle(n)).parts.len(), 1);
        }
        // the star center lies in three maximal cliques
        assert_eq!(decompose_indecomposable(&Graph::star(3)).parts.len(), 1);
        let two = Graph::new(5, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(decompose_indecomposable(&two).parts.len(), 3);
    }

    fn graph_strategy() -> impl Strategy<Value = Graph> {
        (1usize..=8).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 1..=n {
                    for j in i + 1..=n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn decomposition_is_valid_and_label_invariant(g in graph_strategy()) {
            let d = decompose_indecomposable(&g);
            let mut covered = VertexSet::EMPTY;
            let mut edges = 0;
            for (k, &p) in d.parts.iter().enumerate() {
                covered = covered.union(p);
                let (h, _) = g.induced_subgraph(p).unwrap();
                edges += h.edge_count();
                prop_assert!(h.is_connected());
                prop_assert_eq!(decomposing_vertex(&h), None);
                for &q in &d.parts[k + 1..] {
                    let shared = p.intersection(q);
                    prop_assert!(shared.len() <= 1);
                    if let Some(v) = shared.first() {
                        prop_assert!(g.is_clique(g.neighbors(v).intersection(p)));
                        prop_assert!(g.is_clique(g.neighbors(v).intersection(q)));
                    }
                }
            }
            prop_assert_eq!(covered, g.vertices());
            prop_assert_eq!(edges, g.edge_count());

            // unique up to ordering: a relabeled copy decomposes into the same pieces
            let perm: Vec<usize> = (1..=g.n()).rev().collect();
            let h = g.relabel(&perm).unwrap();
            let mut a: Vec<_> = d.part_graphs(&g).into_iter().map(|(p, _)| p.canonical_form().0).collect();
            let mut b: Vec<_> = decompose_indecomposable(&h).part_graphs(&h).into_iter().map(|(p, _)| p.canonical_form().0).collect();
            a.sort_by_key(|p| (p.n(), p.edges().to_vec()));
            b.sort_by_key(|p| (p.n(), p.edges().to_vec()));
            prop_assert_eq!(a, b);
        }
    }
}
