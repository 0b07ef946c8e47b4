use serde::{Deserialize, Serialize};

use super::families::{quasi_cycle, semi_cycle, IntervalSpec};
use super::ClassError;
use crate::graph::{Graph, VertexSet};
use crate::invariants::{block_decomposition, internal_vertices};

pub const RECOGNITION_LIMIT: usize = 10;

fn degree_profile(g: &Graph) -> (usize, Vec<usize>) {
    let mut degs: Vec<usize> = (1..=g.n()).map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    (g.edge_count(), degs)
}

fn matches_any(b: &Graph, candidates: impl Iterator<Item = Graph>) -> Result<bool, ClassError> {
    if b.n() > RECOGNITION_LIMIT {
        return Err(ClassError::TooLarge { n: b.n(), limit: RECOGNITION_LIMIT });
    }
    let profile = degree_profile(b);
    let canon = b.canonical_form().0;
    Ok(candidates.filter(|c| degree_profile(c) == profile).any(|c| c.canonical_form().0 == canon))
}

/// Isomorphic to `quasi_cycle(spec)` for some spec on `[n]`.
pub fn is_quasi_cycle(b: &Graph) -> Result<bool, ClassError> {
    matches_any(b, IntervalSpec::all(b.n()).into_iter().map(|s| quasi_cycle(&s)))
}

/// Isomorphic to `semi_cycle(spec, n)` for some spec on `[m]`, `m <= n`.
pub fn is_semi_cycle(b: &Graph) -> Result<bool, ClassError> {
    let n = b.n();
    matches_any(
        b,
        (2..=n).flat_map(|m| IntervalSpec::all(m)).map(|s| semi_cycle(&s, n).expect("m <= n")),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Clique,
    /// A quasi-cycle other than `K_3`.
    QuasiBlock,
    /// A semi-cycle that is not a quasi-cycle.
    SemiBlock,
    Other,
}

/// Blocks of `g` with their classification.
pub fn block_kinds(g: &Graph) -> Result<Vec<(VertexSet, BlockKind)>, ClassError> {
    block_decomposition(g)
        .blocks
        .into_iter()
        .map(|set| {
            if g.is_clique(set) {
                return Ok((set, BlockKind::Clique));
            }
            let (b, _) = g.induced_subgraph(set).expect("block vertices are valid");
            let kind = if is_quasi_cycle(&b)? {
                BlockKind::QuasiBlock
            } else if is_semi_cycle(&b)? {
                BlockKind::SemiBlock
            } else {
                BlockKind::Other
            };
            Ok((set, kind))
        })
        .collect()
}

pub fn is_block_graph(g: &Graph) -> bool {
    block_decomposition(g).blocks.into_iter().all(|b| g.is_clique(b))
}

/// Vertices internal to the induced subgraph on `block`, in `g` labels.
fn internal_in_block(g: &Graph, block: VertexSet) -> VertexSet {
    let (b, map) = g.induced_subgraph(block).expect("block vertices are valid");
    internal_vertices(&b).iter().map(|v| map[v - 1]).collect()
}

/// Every block is a clique or a quasi-block, and no vertex outside a
/// quasi-block that neighbors one of its internal vertices is internal to a
/// block. "Internal to a block" means internal in the block's induced
/// subgraph.
pub fn is_quasi_block_graph(g: &Graph) -> Result<bool, ClassError> {
    let kinds = block_kinds(g)?;
    if kinds.iter().any(|(_, k)| !matches!(k, BlockKind::Clique | BlockKind::QuasiBlock)) {
        return Ok(false);
    }
    let internal_somewhere = kinds
        .iter()
        .filter(|(_, k)| *k == BlockKind::QuasiBlock)
        .fold(VertexSet::EMPTY, |acc, (b, _)| acc.union(internal_in_block(g, *b)));
    for (b, kind) in &kinds {
        if *kind != BlockKind::QuasiBlock {
            continue;
        }
        for v in internal_in_block(g, *b).iter() {
            if !g.neighbors(v).difference(*b).intersection(internal_somewhere).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of quasi-blocks.
pub fn qc(g: &Graph) -> Result<usize, ClassError> {
    Ok(block_kinds(g)?.iter().filter(|(_, k)| *k == BlockKind::QuasiBlock).count())
}

/// Exactly one block is not a clique, and it is a semi-cycle other than `K_3`.
pub fn is_semi_block_graph(g: &Graph) -> Result<bool, ClassError> {
    let kinds = block_kinds(g)?;
    let non_clique: Vec<_> = kinds.iter().filter(|(_, k)| *k != BlockKind::Clique).collect();
    Ok(non_clique.len() == 1 && matches!(non_clique[0].1, BlockKind::QuasiBlock | BlockKind::SemiBlock))
}
