use super::ClassError;
use crate::field::PrimeField;
use crate::graph::Graph;
use crate::groebner::is_groebner;
use crate::poly::{binomial_edge_generators, MonomialOrder, PolyRing};

pub const CLOSED_SEARCH_LIMIT: usize = 8;

/// Whether the edge binomials form a Gröbner basis under lex with
/// `x_1 > ... > x_n > y_1 > ... > y_n`.
pub fn is_closed_labeling(g: &Graph) -> bool {
    let ring = PolyRing::binomial_edge_ring(PrimeField::default(), g.n(), MonomialOrder::Lex)
        .expect("graph fits the ring");
    is_groebner(&ring, &binomial_edge_generators(&ring, g))
}

/// Searches for a relabeling under which `g` is closed. The witness `perm`
/// satisfies `is_closed_labeling(&g.relabel(&perm)?)`.
///
/// Labels are assigned in increasing order; a partial labeling is extended
/// only while every pair of edges `{i, j}, {i, k}` with `i < j < k` or
/// `i > j > k` among labeled vertices has `{j, k}` as an edge. The witness
/// is confirmed by the Gröbner basis test.
pub fn exists_closed_labeling(g: &Graph) -> Result<Option<Vec<usize>>, ClassError> {
    let n = g.n();
    if n > CLOSED_SEARCH_LIMIT {
        return Err(ClassError::TooLarge { n, limit: CLOSED_SEARCH_LIMIT });
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    if !extend(g, &mut order, &mut used) {
        return Ok(None);
    }
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v - 1] = pos + 1;
    }
    let relabeled = g.relabel(&perm).expect("permutation");
    assert!(is_closed_labeling(&relabeled), "combinatorial closedness disagrees with the Gröbner test");
    Ok(Some(perm))
}

fn extend(g: &Graph, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if order.len() == g.n() {
        return true;
    }
    for w in 1..=g.n() {
        if used[w] || !compatible(g, order, w) {
            continue;
        }
        used[w] = true;
        order.push(w);
        if extend(g, order, used) {
            return true;
        }
        order.pop();
        used[w] = false;
    }
    false
}

/// Conditions whose largest label is the new vertex `w`.
fn compatible(g: &Graph, order: &[usize], w: usize) -> bool {
    let earlier: Vec<usize> = order.iter().copied().filter(|&u| g.has_edge(u, w)).collect();
    // {i, w}, {j, w} with i < j < w: earlier neighbors form a clique
    for (a, &i) in earlier.iter().enumerate() {
        for &j in &earlier[a + 1..] {
            if !g.has_edge(i, j) {
                return false;
            }
        }
    }
    // {i, j}, {i, w} with i < j < w: j must be adjacent to w
    let pos = |v: usize| order.iter().position(|&u| u == v).expect("labeled");
    for &i in &earlier {
        for &j in &order[pos(i) + 1..] {
            if g.has_edge(i, j) && !g.has_edge(j, w) {
                return false;
            }
        }
    }
    true
}
