use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::invariants::maximal_cliques;

/// Lexicographic breadth-first search; returns the visit order.
fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    // labels are the visit positions of already visited neighbors, newest first
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (1..=n)
            .filter(|&v| !visited.contains(v))
            .max_by(|&a, &b| labels[a].cmp(&labels[b]).then_with(|| b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited.insert(v);
        order.push(v);
        for u in g.neighbors(v).difference(visited).iter() {
            labels[u].push(n - step);
        }
    }
    order
}

/// A perfect elimination ordering (each vertex's later neighbors form a
/// clique), if one exists.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = lex_bfs(g);
    peo.reverse();
    let n = g.n();
    let mut pos = vec![0; n + 1];
    for (k, &v) in peo.iter().enumerate() {
        pos[v] = k;
    }
    for &v in &peo {
        let later: Vec<usize> = g.neighbors(v).iter().filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&first) = later.iter().min_by_key(|&&u| pos[u]) {
            let rest: VertexSet = later.iter().copied().filter(|&u| u != first).collect();
            if !rest.is_subset(g.neighbors(first)) {
                return None;
            }
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

/// Facets `F_1, ..., F_s` of a clique complex where each `F_i` is a leaf of
/// the complex generated by `F_1, ..., F_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafOrder {
    pub facets: Vec<VertexSet>,
}

/// `facets[idx]` is a leaf among `facets`: some other facet contains its
/// intersection with every other facet.
fn is_leaf(facets: &[VertexSet], idx: usize) -> bool {
    if facets.len() == 1 {
        return true;
    }
    let f = facets[idx];
    facets.iter().enumerate().any(|(g_idx, &g)| {
        g_idx != idx
            && facets
                .iter()
                .enumerate()
                .all(|(h_idx, &h)| h_idx == idx || h.intersection(f).is_subset(g.intersection(f)))
    })
}

pub fn is_leaf_order(facets: &[VertexSet]) -> bool {
    (1..facets.len()).all(|i| is_leaf(&facets[..=i], i))
}

/// Peels leaves (smallest index first) off the clique complex; the reversed
/// peeling order is a leaf order.
pub fn leaf_order(g: &Graph) -> Option<LeafOrder> {
    let mut remaining = maximal_cliques(g).cliques;
    let mut peeled = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let idx = (0..remaining.len()).find(|&i| is_leaf(&remaining, i))?;
        peeled.push(remaining.remove(idx));
    }
    peeled.reverse();
    Some(LeafOrder { facets: peeled })
}

pub fn is_quasi_forest(g: &Graph) -> bool {
    leaf_order(g).is_some()
}

/// A quasi-forest whose clique complex is connected.
pub fn is_quasi_tree(g: &Graph) -> bool {
    g.is_connected() && is_quasi_forest(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn chordal_examples() {
        for n in 4..9 {
            assert!(!is_chordal(&Graph::cycle(n)));
        }
        assert!(is_chordal(&Graph::cycle(3)));
        assert!(is_chordal(&Graph::complete(6)));
        assert!(is_chordal(&Graph::path(6)));
        let bowtie = Graph::new(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let peo = perfect_elimination_ordering(&bowtie).unwrap();
        assert_eq!(peo.len(), 5);
        assert!(!is_chordal(&Graph::complete_bipartite(2, 3)));
    }

    #[test]
    fn leaf_order_examples() {
        let tree = Graph::new(6, &[(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        let lo = leaf_order(&tree).unwrap();
        assert_eq!(lo.facets.len(), 5);
        assert!(is_leaf_order(&lo.facets));
        assert!(is_quasi_tree(&tree));
        assert!(leaf_order(&Graph::cycle(4)).is_none());
        let two = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(is_quasi_forest(&two) && !is_quasi_tree(&two));
    }

    #[test]
    fn interval_facets_are_a_leaf_order() {
        let facets = vec![vs(&[1, 2, 3]), vs(&[3, 4, 5]), vs(&[5, 6, 7])];
        assert!(is_leaf_order(&facets));
        let bad = vec![vs(&[1, 2]), vs(&[3, 4]), vs(&[2, 3]), vs(&[4, 1])];
        assert!(!is_leaf_order(&bad));
    }
}
