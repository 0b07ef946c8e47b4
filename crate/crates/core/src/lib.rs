//! Binomial edge ideals of finite simple graphs.
//!
//! Graphs live on vertices `1..=n`. The ideal `J_G` sits in
//! `K[x_1..x_n, y_1..y_n]` and is generated by `x_i y_j - x_j y_i` for the
//! edges `{i, j}` of `G`.

pub mod betti;
pub mod classes;
pub mod field;
pub mod graph;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod poly;

pub use field::{Field, PrimeField, RationalField, DEFAULT_PRIME};
pub use graph::{Graph, GraphError, VertexSet};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
