use serde::{Deserialize, Serialize};

use super::ClassError;
use crate::graph::Graph;

/// Cut points `1 = a_1 < a_2 < ... < a_{s+1} = m` of the intervals
/// `F_i = [a_i, a_{i+1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalSpec {
    cut_points: Vec<usize>,
}

impl IntervalSpec {
    pub fn new(cut_points: Vec<usize>) -> Result<Self, ClassError> {
        let valid = cut_points.len() >= 2
            && cut_points[0] == 1
            && cut_points.windows(2).all(|w| w[0] < w[1]);
        if !valid {
            return Err(ClassError::InvalidSpec(cut_points));
        }
        Ok(Self { cut_points })
    }

    /// The path spec `(1, 2, ..., m)`.
    pub fn path(m: usize) -> Result<Self, ClassError> {
        Self::new((1..=m).collect())
    }

    /// Every spec with last cut point `m`.
    pub fn all(m: usize) -> Vec<Self> {
        if m < 2 {
            return Vec::new();
        }
        let inner = m - 2;
        (0u64..1 << inner)
            .map(|mask| {
                let mut pts = vec![1];
                pts.extend((0..inner).filter(|b| mask >> b & 1 == 1).map(|b| b + 2));
                pts.push(m);
                Self { cut_points: pts }
            })
            .collect()
    }

    pub fn cut_points(&self) -> &[usize] {
        &self.cut_points
    }

    pub fn m(&self) -> usize {
        *self.cut_points.last().expect("at least two cut points")
    }

    /// Number of intervals.
    pub fn s(&self) -> usize {
        self.cut_points.len() - 1
    }

    pub fn intervals(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cut_points.windows(2).map(|w| (w[0], w[1]))
    }
}

fn clique_edges(vertices: &[usize], edges: &mut Vec<(usize, usize)>) {
    for (k, &a) in vertices.iter().enumerate() {
        for &b in &vertices[k + 1..] {
            edges.push((a, b));
        }
    }
}

fn interval_edges(spec: &IntervalSpec) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (a, b) in spec.intervals() {
        clique_edges(&(a..=b).collect::<Vec<_>>(), &mut edges);
    }
    edges
}

/// Union of cliques on the intervals of `spec`.
pub fn cm_closed_graph(spec: &IntervalSpec) -> Graph {
    Graph::new(spec.m(), &interval_edges(spec)).expect("interval edges are valid")
}

/// `cm_closed_graph(spec)` plus the edge `{1, m}`.
pub fn quasi_cycle(spec: &IntervalSpec) -> Graph {
    let mut edges = interval_edges(spec);
    edges.push((1, spec.m()));
    Graph::new(spec.m(), &edges).expect("interval edges are valid")
}

/// `cm_closed_graph(spec)` on `[m]` plus a clique on `{m, ..., n} ∪ {1}`.
pub fn semi_cycle(spec: &IntervalSpec, n: usize) -> Result<Graph, ClassError> {
    let m = spec.m();
    if n < m {
        return Err(ClassError::InvalidParameters(format!("semi-cycle needs n >= m, got n = {n}, m = {m}")));
    }
    let mut edges = interval_edges(spec);
    let mut last: Vec<usize> = vec![1];
    last.extend(m..=n);
    clique_edges(&last, &mut edges);
    Graph::new(n, &edges).map_err(|e| ClassError::InvalidParameters(e.to_string()))
}

/// `C_{mn}` on `[mn]` with hub `mn + 1` joined to `1, m + 1, ..., m(n-1) + 1`.
pub fn jahangir(m: usize, n: usize) -> Result<Graph, ClassError> {
    if m < 1 || n < 3 {
        return Err(ClassError::InvalidParameters(format!("jahangir needs m >= 1, n >= 3, got ({m}, {n})")));
    }
    let len = m * n;
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i, i + 1)).collect();
    edges.push((len, 1));
    edges.extend((0..n).map(|k| (len + 1, k * m + 1)));
    Graph::new(len + 1, &edges).map_err(|e| ClassError::InvalidParameters(e.to_string()))
}

pub fn wheel(n: usize) -> Result<Graph, ClassError> {
    jahangir(1, n)
}

/// `h` triangles and `k` claws glued at vertex 1. A claw is attached by one
/// of its leaves.
pub fn flower(h: usize, k: usize) -> Result<Graph, ClassError> {
    if h + k < 3 {
        return Err(ClassError::InvalidParameters(format!("flower needs h + k >= 3, got ({h}, {k})")));
    }
    let petals = std::iter::repeat((Graph::complete(3), 1)).take(h).chain(std::iter::repeat((Graph::star(3), 2)).take(k));
    let mut acc: Option<Graph> = None;
    for (petal, at) in petals {
        acc = Some(match acc {
            None if at == 1 => petal,
            // put the glued leaf at label 1
            None => petal.relabel(&[2, 1, 3, 4]).expect("permutation"),
            // vertex 1 stops being free once two petals meet there
            Some(g) => g.identify_vertices(1, &petal, at).map_err(|e| ClassError::InvalidParameters(e.to_string()))?,
        });
    }
    Ok(acc.expect("at least three petals"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{clique_degree, maximal_cliques};

    #[test]
    fn spec_validation() {
        assert!(IntervalSpec::new(vec![1, 3, 5]).is_ok());
        assert!(IntervalSpec::new(vec![2, 3]).is_err());
        assert!(IntervalSpec::new(vec![1, 3, 3]).is_err());
        assert!(IntervalSpec::new(vec![1]).is_err());
        assert_eq!(IntervalSpec::all(5).len(), 8);
        assert!(IntervalSpec::all(5).iter().all(|s| s.m() == 5));
    }

    #[test]
    fn constructor_examples() {
        assert_eq!(cm_closed_graph(&IntervalSpec::path(6).unwrap()), Graph::path(6));
        assert_eq!(cm_closed_graph(&IntervalSpec::new(vec![1, 5]).unwrap()), Graph::complete(5));
        let spec = IntervalSpec::new(vec![1, 3, 5, 7]).unwrap();
        let h = cm_closed_graph(&spec);
        let tri = |a, b, c| vec![(a, b), (b, c), (a, c)];
        let expected: Vec<_> = [tri(1, 2, 3), tri(3, 4, 5), tri(5, 6, 7)].concat();
        assert_eq!(h, Graph::new(7, &expected).unwrap());
        let g = quasi_cycle(&spec);
        assert_eq!(g.edge_count(), 10);
        assert!(g.has_edge(1, 7));
        assert_eq!(quasi_cycle(&IntervalSpec::path(6).unwrap()), Graph::cycle(6));
        assert_eq!(quasi_cycle(&IntervalSpec::path(3).unwrap()), Graph::complete(3));

        let sc = semi_cycle(&spec, 8).unwrap();
        assert!(sc.has_edge(8, 1) && sc.has_edge(8, 7) && sc.has_edge(1, 7));
        assert_eq!(sc.edge_count(), 12);
        assert_eq!(semi_cycle(&spec, 7).unwrap(), g);
        assert_eq!(semi_cycle(&IntervalSpec::path(2).unwrap(), 3).unwrap(), Graph::complete(3));
        assert!(semi_cycle(&spec, 6).is_err());
    }

    #[test]
    fn jahangir_and_wheel() {
        let j = jahangir(2, 4).unwrap();
        assert_eq!((j.n(), j.edge_count()), (9, 12));
        assert_eq!(j.neighbors(9).to_vec(), vec![1, 3, 5, 7]);
        let w = wheel(8).unwrap();
        assert_eq!((w.n(), w.edge_count()), (9, 16));
        assert_eq!(w.degree(9), 8);
        assert!(jahangir(0, 4).is_err() && jahangir(2, 2).is_err());
    }

    #[test]
    fn flower_examples() {
        let f = flower(3, 0).unwrap();
        assert_eq!((f.n(), f.edge_count()), (7, 9));
        assert_eq!(f.degree(1), 6);
        assert_eq!(clique_degree(&f, 1), 3);
        let f = flower(1, 2).unwrap();
        assert_eq!((f.n(), f.edge_count()), (9, 9));
        // vertex 1 sits in the triangle and in one edge of each claw
        assert_eq!(clique_degree(&f, 1), 3);
        assert_eq!(maximal_cliques(&f).len(), 7);
        assert!(flower(1, 1).is_err());
    }
}
