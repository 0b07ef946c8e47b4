//! Verification checks: each evaluates one inequality or identity on a graph
//! and records the values it compared.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use binedge_core::betti::{BettiError, BettiTable};
use binedge_core::classes::{
    decompose_indecomposable, decomposing_vertex, is_chordal, is_quasi_block_graph, is_semi_block_graph, ClassError,
};
use binedge_core::groebner::{ohtani_split, verify_herzog_decomposition, GroebnerError};
use binedge_core::hilbert::HPolynomial;
use binedge_core::invariants::{
    bridges, clique_count, clique_degree, clique_number, internal_vertex_count, internal_vertices,
    longest_induced_path, vertex_connectivity,
};
use binedge_core::{Graph, MonomialOrder, PolyRing, VertexSet};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::engine::Engine;
use crate::enumerate::graph_id;
use crate::families::{flower_parameters, jahangir_parameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Violated,
    EnvelopeExceeded,
    /// The graph does not meet the statement's hypotheses.
    HypothesisFailed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::EnvelopeExceeded => "envelope-exceeded",
            Status::HypothesisFailed => "hypothesis-failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    /// graph6 of the canonical labeling; witness vertex labels refer to it.
    pub graph: String,
    pub n: usize,
    pub check: Check,
    pub status: Status,
    pub witness: Map<String, Value>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `reg <= c(G)`
    Smk,
    /// `reg <= deg h`
    HibiMatsuda,
    /// `l(G) <= reg <= n - 1`, with `reg = n - 1` exactly on paths
    MatsudaMurai,
    /// `reg <= n - ω + 1` for connected graphs
    OmegaBound,
    /// connected indecomposable chordal with a bridge: `reg < c(G)`
    CutEdge,
    /// `reg` is additive over indecomposable parts
    Additivity,
    /// internal `v` with degree at least 4 and `G \ v` not a path: `reg <= n - 3`
    Deg4Lemma,
    /// regularity bound from the short exact sequence at each internal vertex
    ExactSequence,
    /// `reg(G[A]) <= reg(G)` for every induced subgraph
    Monotonicity,
    /// `pd >= n + κ - 2`, or `pd = n - 1` for complete graphs
    PdBound,
    /// `Σ (-1)^i β_{i,j} t^j = h(t) (1-t)^{2n-d}`
    AlternatingSum,
    /// unique extremal Betti number: `pd + reg = 2n - d + deg h`
    ExtremalIdentity,
    /// `J_G = J_{G_v} ∩ ((x_v, y_v) + J_{G \ v})` and the matching sum
    Ohtani,
    /// `J_G = ⋂_T P_T(G)`
    Herzog,
    /// `reg(J_{m,n}) = mn - 2`
    Jahangir,
    /// flower graphs: two extremal Betti numbers and `reg <= deg h`
    Flower,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::Smk,
        Check::HibiMatsuda,
        Check::MatsudaMurai,
        Check::OmegaBound,
        Check::CutEdge,
        Check::Additivity,
        Check::Deg4Lemma,
        Check::ExactSequence,
        Check::Monotonicity,
        Check::PdBound,
        Check::AlternatingSum,
        Check::ExtremalIdentity,
        Check::Ohtani,
        Check::Herzog,
        Check::Jahangir,
        Check::Flower,
    ];

    /// Checks run by a sweep when none are named.
    pub const SWEEP_DEFAULT: [Check; 6] =
        [Check::Smk, Check::HibiMatsuda, Check::MatsudaMurai, Check::OmegaBound, Check::AlternatingSum, Check::ExtremalIdentity];

    pub fn name(self) -> &'static str {
        match self {
            Check::Smk => "smk",
            Check::HibiMatsuda => "hibi-matsuda",
            Check::MatsudaMurai => "matsuda-murai",
            Check::OmegaBound => "omega-bound",
            Check::CutEdge => "cut-edge",
            Check::Additivity => "additivity",
            Check::Deg4Lemma => "deg4-lemma",
            Check::ExactSequence => "exact-sequence",
            Check::Monotonicity => "monotonicity",
            Check::PdBound => "pd-bound",
            Check::AlternatingSum => "alternating-sum",
            Check::ExtremalIdentity => "extremal-identity",
            Check::Ohtani => "ohtani",
            Check::Herzog => "herzog",
            Check::Jahangir => "jahangir",
            Check::Flower => "flower",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check {0:?}")]
pub struct UnknownCheck(pub String);

impl FromStr for Check {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

/// Reason a check could not be evaluated.
#[derive(Debug)]
struct Envelope(String);

impl From<BettiError> for Envelope {
    fn from(e: BettiError) -> Self {
        Envelope(e.to_string())
    }
}

impl From<GroebnerError> for Envelope {
    fn from(e: GroebnerError) -> Self {
        Envelope(e.to_string())
    }
}

impl From<ClassError> for Envelope {
    fn from(e: ClassError) -> Self {
        Envelope(e.to_string())
    }
}

type Outcome = Result<(Status, Value), Envelope>;

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Holds
    } else {
        Status::Violated
    }
}

fn hypothesis_failed(reason: &str) -> Outcome {
    Ok((Status::HypothesisFailed, json!({ "hypothesis": reason })))
}

fn table_value(t: &BettiTable) -> Value {
    serde_json::to_value(t).expect("table serializes")
}

fn h_value(h: &HPolynomial) -> Value {
    json!({ "h": h.h.to_string(), "dim": h.dim, "deg_h": h.degree() })
}

/// Graph class used to decide which regularity theorem applies.
pub fn classify(g: &Graph) -> &'static str {
    if is_chordal(g) {
        return "chordal";
    }
    match (is_quasi_block_graph(g), is_semi_block_graph(g)) {
        (Ok(true), _) => "quasi-block",
        (_, Ok(true)) => "semi-block",
        (Ok(false), Ok(false)) => "other",
        _ => "unknown",
    }
}

/// Runs `check` on the canonical labeling of `g`.
pub fn run_check(engine: &Engine, check: Check, g: &Graph) -> CheckResult {
    let (canon, _) = g.canonical_form();
    let start = Instant::now();
    let outcome = evaluate(engine, check, &canon);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Ok((status, Value::Object(map))) => (status, map),
        Ok((status, other)) => (status, Map::from_iter([("value".to_string(), other)])),
        Err(Envelope(msg)) => (Status::EnvelopeExceeded, Map::from_iter([("error".to_string(), Value::from(msg))])),
    };
    CheckResult { graph: graph_id(&canon), n: canon.n(), check, status, witness, runtime_ms }
}

fn evaluate(engine: &Engine, check: Check, g: &Graph) -> Outcome {
    match check {
        Check::Smk => smk(engine, g),
        Check::HibiMatsuda => hibi_matsuda(engine, g),
        Check::MatsudaMurai => matsuda_murai(engine, g),
        Check::OmegaBound => omega_bound(engine, g),
        Check::CutEdge => cut_edge(engine, g),
        Check::Additivity => additivity(engine, g),
        Check::Deg4Lemma => deg4_lemma(engine, g),
        Check::ExactSequence => exact_sequence(engine, g),
        Check::Monotonicity => monotonicity(engine, g),
        Check::PdBound => pd_bound(engine, g),
        Check::AlternatingSum => alternating_sum(engine, g),
        Check::ExtremalIdentity => extremal_identity(engine, g),
        Check::Ohtani => ohtani(engine, g),
        Check::Herzog => herzog(engine, g),
        Check::Jahangir => jahangir(engine, g),
        Check::Flower => flower(engine, g),
    }
}

fn smk(engine: &Engine, g: &Graph) -> Outcome {
    let class = classify(g);
    let reg = engine.regularity(g)?;
    let c = clique_count(g);
    let theorem_applies = matches!(class, "chordal" | "quasi-block" | "semi-block");
    Ok((
        verdict(reg <= c),
        json!({ "reg": reg, "c": c, "class": class, "theorem_applies": theorem_applies, "slack": c as i64 - reg as i64 }),
    ))
}

fn hibi_matsuda(engine: &Engine, g: &Graph) -> Outcome {
    let h = engine.h_polynomial(g);
    let table = engine.betti(g)?;
    let reg = table.regularity();
    let unique = table.is_unique_extremal();
    Ok((
        verdict(reg <= h.degree()),
        json!({
            "reg": reg,
            "deg_h": h.degree(),
            "h": h.h.to_string(),
            "dim": h.dim,
            "unique_extremal": unique,
            "betti": table_value(&table),
        }),
    ))
}

fn matsuda_murai(engine: &Engine, g: &Graph) -> Outcome {
    let reg = engine.regularity(g)?;
    let l = longest_induced_path(g);
    let n = g.n();
    let is_path = g.is_path_graph();
    let top = n.saturating_sub(1);
    let ok = l <= reg && reg <= top && ((reg == top) == is_path);
    Ok((verdict(ok), json!({ "l": l, "reg": reg, "n_minus_1": top, "is_path": is_path })))
}

fn omega_bound(engine: &Engine, g: &Graph) -> Outcome {
    if !g.is_connected() {
        return hypothesis_failed("graph is not connected");
    }
    let reg = engine.regularity(g)?;
    let omega = clique_number(g);
    let bound = g.n() + 1 - omega;
    Ok((verdict(reg <= bound), json!({ "reg": reg, "omega": omega, "bound": bound })))
}

fn cut_edge(engine: &Engine, g: &Graph) -> Outcome {
    if !g.is_connected() {
        return hypothesis_failed("graph is not connected");
    }
    if decomposing_vertex(g).is_some() {
        return hypothesis_failed("graph is decomposable");
    }
    if !is_chordal(g) {
        return hypothesis_failed("graph is not chordal");
    }
    let cut = bridges(g);
    if cut.is_empty() {
        return hypothesis_failed("graph has no cut edge");
    }
    let reg = engine.regularity(g)?;
    let c = clique_count(g);
    Ok((verdict(reg < c), json!({ "reg": reg, "c": c, "bridges": cut })))
}

fn additivity(engine: &Engine, g: &Graph) -> Outcome {
    let d = decompose_indecomposable(g);
    if d.parts.len() < 2 {
        return hypothesis_failed("graph is indecomposable");
    }
    let reg = engine.regularity(g)?;
    let mut part_regs = Vec::new();
    for (part, _) in d.part_graphs(g) {
        part_regs.push(engine.regularity(&part)?);
    }
    let sum: usize = part_regs.iter().sum();
    let parts: Vec<Vec<usize>> = d.parts.iter().map(|p| p.to_vec()).collect();
    Ok((verdict(reg == sum), json!({ "reg": reg, "part_regs": part_regs, "sum": sum, "parts": parts })))
}

fn deg4_lemma(engine: &Engine, g: &Graph) -> Outcome {
    if !g.is_connected() {
        return hypothesis_failed("graph is not connected");
    }
    let qualifying: Vec<usize> = internal_vertices(g)
        .iter()
        .filter(|&v| g.degree(v) >= 4 && !g.delete_vertex(v).expect("vertex exists").0.is_path_graph())
        .collect();
    if qualifying.is_empty() {
        return hypothesis_failed("no internal vertex of degree at least 4 with a non-path deletion");
    }
    let reg = engine.regularity(g)?;
    let bound = g.n() - 3;
    Ok((verdict(reg <= bound), json!({ "reg": reg, "bound": bound, "vertices": qualifying })))
}

fn exact_sequence(engine: &Engine, g: &Graph) -> Outcome {
    let internal = internal_vertices(g);
    if internal.is_empty() {
        return hypothesis_failed("no internal vertex");
    }
    let reg = engine.regularity(g)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for v in internal.iter() {
        let gv = g.neighborhood_completion(v).expect("vertex exists");
        let a = engine.regularity(&gv)?;
        let b = engine.regularity(&g.delete_vertex(v).expect("vertex exists").0)?;
        let c = engine.regularity(&gv.delete_vertex(v).expect("vertex exists").0)?;
        let bound = a.max(b).max(c + 1);
        ok &= reg <= bound;
        rows.push(json!({ "v": v, "reg_completed": a, "reg_deleted": b, "reg_completed_deleted": c, "bound": bound }));
    }
    Ok((verdict(ok), json!({ "reg": reg, "splits": rows })))
}

fn monotonicity(engine: &Engine, g: &Graph) -> Outcome {
    let reg = engine.regularity(g)?;
    let full = g.vertices();
    let mut checked = 0u64;
    for bits in 1..full.0 {
        let set = VertexSet(bits);
        if !set.is_subset(full) {
            continue;
        }
        let (h, _) = g.induced_subgraph(set).expect("subset of vertices");
        let r = engine.regularity(&h)?;
        if r > reg {
            return Ok((Status::Violated, json!({ "reg": reg, "subset": set.to_vec(), "subset_reg": r })));
        }
        checked += 1;
    }
    Ok((Status::Holds, json!({ "reg": reg, "subsets": checked })))
}

fn pd_bound(engine: &Engine, g: &Graph) -> Outcome {
    if !g.is_connected() {
        return hypothesis_failed("graph is not connected");
    }
    let pd = engine.betti(g)?.projective_dimension();
    let n = g.n();
    if g.is_clique(g.vertices()) {
        return Ok((verdict(pd == n - 1), json!({ "pd": pd, "complete": true, "expected": n - 1 })));
    }
    let kappa = vertex_connectivity(g);
    let bound = n + kappa - 2;
    Ok((verdict(pd >= bound), json!({ "pd": pd, "complete": false, "kappa": kappa, "bound": bound })))
}

fn alternating_sum(engine: &Engine, g: &Graph) -> Outcome {
    let table = engine.betti(g)?;
    let h = engine.h_polynomial(g);
    let ok = binedge_core::betti::alternating_sum_check(&table, &h);
    let mut w = h_value(&h);
    w["alternating_sum"] = Value::from(table.alternating_sum().to_string());
    w["betti"] = table_value(&table);
    Ok((verdict(ok), w))
}

fn extremal_identity(engine: &Engine, g: &Graph) -> Outcome {
    if !g.is_connected() {
        return hypothesis_failed("graph is not connected");
    }
    let table = engine.betti(g)?;
    let corners = table.extremal_betti();
    if corners.len() != 1 {
        return Ok((Status::HypothesisFailed, json!({ "hypothesis": "extremal Betti number is not unique", "corners": corners })));
    }
    let h = engine.h_polynomial(g);
    let (n, pd, reg) = (g.n(), table.projective_dimension(), table.regularity());
    let identity = pd + reg + h.dim == 2 * n + h.degree();
    let ok = identity && reg <= h.degree() && pd + 1 >= n && h.dim > n;
    Ok((
        verdict(ok),
        json!({ "pd": pd, "reg": reg, "dim": h.dim, "deg_h": h.degree(), "identity": identity, "corner": corners[0] }),
    ))
}

fn binomial_ring(engine: &Engine, n: usize) -> Result<PolyRing<binedge_core::PrimeField>, Envelope> {
    PolyRing::binomial_edge_ring(engine.field().clone(), n, MonomialOrder::DegRevLex).map_err(|e| Envelope(e.to_string()))
}

fn ohtani(engine: &Engine, g: &Graph) -> Outcome {
    let internal = internal_vertices(g);
    if internal.is_empty() {
        return hypothesis_failed("no internal vertex");
    }
    let ring = binomial_ring(engine, g.n())?;
    let mut rows = Vec::new();
    let mut ok = true;
    for v in internal.iter() {
        let s = ohtani_split(&ring, g, v)?;
        ok &= s.intersection_holds && s.sum_holds;
        rows.push(json!({ "v": v, "intersection": s.intersection_holds, "sum": s.sum_holds }));
    }
    Ok((verdict(ok), json!({ "splits": rows })))
}

fn herzog(engine: &Engine, g: &Graph) -> Outcome {
    let ring = binomial_ring(engine, g.n())?;
    let ok = verify_herzog_decomposition(&ring, g)?;
    Ok((verdict(ok), json!({ "subsets": 1u64 << g.n() })))
}

fn jahangir(engine: &Engine, g: &Graph) -> Outcome {
    let Some((m, k)) = jahangir_parameters(g) else {
        return hypothesis_failed("graph is not a Jahangir graph");
    };
    let reg = engine.regularity(g)?;
    let expected = m * k - 2;
    Ok((verdict(reg == expected), json!({ "m": m, "n": k, "reg": reg, "expected": expected })))
}

fn flower(engine: &Engine, g: &Graph) -> Outcome {
    let Some((h_count, k_count)) = flower_parameters(g) else {
        return hypothesis_failed("graph is not a flower graph");
    };
    let table = engine.betti(g)?;
    let h = engine.h_polynomial(g);
    let n = g.n();
    let center = (1..=n).max_by_key(|&v| (clique_degree(g, v), std::cmp::Reverse(v))).expect("nonempty");
    let cdeg = clique_degree(g, center);
    let iv = internal_vertex_count(g);
    let reg = table.regularity();
    let corners = table.extremal_betti();
    let ok = corners.len() == 2 && reg <= h.degree() && h.dim + 1 >= n + cdeg && reg == iv + cdeg - 1;
    Ok((
        verdict(ok),
        json!({
            "h_copies": h_count, "k_copies": k_count, "reg": reg, "deg_h": h.degree(), "dim": h.dim,
            "cdeg_center": cdeg, "iv": iv, "corners": corners,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::join_example;
    use binedge_core::classes::{flower as flower_graph, jahangir as jahangir_graph};

    fn status(check: Check, g: &Graph) -> Status {
        run_check(&Engine::default(), check, g).status
    }

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), Value::from(c.name()));
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn cycle_has_slack_two() {
        let r = run_check(&Engine::default(), Check::Smk, &Graph::cycle(5));
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.witness["reg"], 3);
        assert_eq!(r.witness["slack"], 2);
        assert_eq!(r.witness["class"], "quasi-block");
    }

    #[test]
    fn statuses_on_small_graphs() {
        assert_eq!(status(Check::HibiMatsuda, &Graph::path(4)), Status::Holds);
        assert_eq!(status(Check::MatsudaMurai, &Graph::path(5)), Status::Holds);
        assert_eq!(status(Check::MatsudaMurai, &Graph::star(3)), Status::Holds);
        assert_eq!(status(Check::OmegaBound, &join_example(3)), Status::Holds);
        assert_eq!(status(Check::Additivity, &Graph::path(5)), Status::Holds);
        assert_eq!(status(Check::Additivity, &Graph::cycle(4)), Status::HypothesisFailed);
        assert_eq!(status(Check::CutEdge, &Graph::cycle(4)), Status::HypothesisFailed);
        assert_eq!(status(Check::PdBound, &Graph::complete(4)), Status::Holds);
        assert_eq!(status(Check::PdBound, &Graph::cycle(5)), Status::Holds);
        assert_eq!(status(Check::ExactSequence, &Graph::cycle(5)), Status::Holds);
        assert_eq!(status(Check::ExactSequence, &Graph::complete(4)), Status::HypothesisFailed);
        assert_eq!(status(Check::Monotonicity, &Graph::cycle(5)), Status::Holds);
        assert_eq!(status(Check::AlternatingSum, &Graph::complete(3)), Status::Holds);
        assert_eq!(status(Check::ExtremalIdentity, &Graph::path(3)), Status::Holds);
        assert_eq!(status(Check::Ohtani, &Graph::path(4)), Status::Holds);
        assert_eq!(status(Check::Herzog, &Graph::cycle(4)), Status::Holds);
        assert_eq!(status(Check::Jahangir, &jahangir_graph(1, 4).unwrap()), Status::Holds);
        assert_eq!(status(Check::Jahangir, &Graph::cycle(5)), Status::HypothesisFailed);
        assert_eq!(status(Check::Flower, &flower_graph(3, 0).unwrap()), Status::Holds);
    }

    #[test]
    fn cut_edge_applies_to_double_star() {
        let g = Graph::new(6, &[(1, 3), (2, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let r = run_check(&Engine::default(), Check::CutEdge, &g);
        assert_eq!(r.status, Status::Holds, "{:?}", r.witness);
        let glued = Graph::new(6, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(run_check(&Engine::default(), Check::CutEdge, &glued).status, Status::HypothesisFailed);
    }

    #[test]
    fn deg4_lemma_on_wheel() {
        let w = binedge_core::classes::wheel(5).unwrap();
        let r = run_check(&Engine::default(), Check::Deg4Lemma, &w);
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.witness["reg"], 3);
    }

    #[test]
    fn results_are_deterministic_and_label_free() {
        let e = Engine::default();
        let g = Graph::new(5, &[(1, 3), (3, 5), (5, 2), (2, 4), (4, 1), (1, 5)]).unwrap();
        let h = g.relabel(&[5, 4, 3, 2, 1]).unwrap();
        let mut a = run_check(&e, Check::HibiMatsuda, &g);
        let mut b = run_check(&Engine::default(), Check::HibiMatsuda, &h);
        a.runtime_ms = 0;
        b.runtime_ms = 0;
        assert_eq!(a, b);
    }

    #[test]
    fn envelope_is_never_holds() {
        let r = run_check(&Engine::default(), Check::Smk, &Graph::path(12));
        assert_eq!(r.status, Status::EnvelopeExceeded);
        assert!(r.witness.contains_key("error"));
    }
}
