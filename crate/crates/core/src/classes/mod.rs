//! Named graph families, their constructors and recognizers.

mod chordal;
mod closed;
mod decompose;
mod families;
mod recognize;

pub use chordal::{is_chordal, is_leaf_order, is_quasi_forest, is_quasi_tree, leaf_order, perfect_elimination_ordering, LeafOrder};
pub use closed::{exists_closed_labeling, is_closed_labeling, CLOSED_SEARCH_LIMIT};
pub use decompose::{decompose_indecomposable, decomposing_vertex, Decomposition};
pub use families::{cm_closed_graph, flower, jahangir, quasi_cycle, semi_cycle, wheel, IntervalSpec};
pub use recognize::{
    block_kinds, is_block_graph, is_quasi_block_graph, is_quasi_cycle, is_semi_block_graph, is_semi_cycle, qc,
    BlockKind, RECOGNITION_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("graph has {n} vertices; this search is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid interval cut points {0:?}")]
    InvalidSpec(Vec<usize>),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
