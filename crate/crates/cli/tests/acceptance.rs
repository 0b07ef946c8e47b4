//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero on any unexpected failure.
//!
//! `cargo test -p binedge-cli --test acceptance -- --stretch [--budget SECS]`
//! additionally attempts the 13-vertex regularity. `--only 1,4,9` restricts
//! the run.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use binedge_cli::checks::{Check, CheckResult, Status};
use binedge_cli::engine::Engine;
use binedge_cli::enumerate::enumerate_connected_graphs;
use binedge_cli::families::{counterexample_graph, glued_pairs, join_example};
use binedge_cli::{run_checks, sweep_graphs};
use binedge_core::classes::{
    block_kinds, is_chordal, is_quasi_block_graph, is_quasi_cycle, is_semi_cycle, jahangir, qc, quasi_cycle, semi_cycle,
    BlockKind, IntervalSpec,
};
use binedge_core::hilbert::IntPoly;
use binedge_core::invariants::{clique_count, clique_degree, internal_vertex_count, internal_vertices};
use binedge_core::{Graph, VertexSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

/// Criteria that cannot pass as stated, with the failure the analysis
/// predicts. The runner still reports them as FAIL.
fn expected_failure(id: &str, detail: &str) -> Option<&'static str> {
    match id {
        "6" if detail.contains("h matches") && detail.contains("d = 16") => Some(
            "d = 18 is impossible with this h: HF(1) = 2n = 26 must equal d + h_1 = d + 10, so d = 16; \
             also max over T of n - |T| + c(T) is 16 at T = {1,2,3}",
        ),
        _ => None,
    }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn regularity_table(cases: &[(String, Graph, usize)], limit: Duration) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, g, expected) in cases {
        let start = Instant::now();
        let got = Engine::default().regularity(g);
        let elapsed = start.elapsed();
        let ok = matches!(got, Ok(r) if r == *expected) && within(elapsed, limit);
        pass &= ok;
        let shown = got.map(|r| r.to_string()).unwrap_or_else(|e| e.to_string());
        parts.push(format!("{name}: reg {shown} (want {expected}, {})", secs(elapsed)));
    }
    verdict(pass, parts.join("; "))
}

fn criterion_1() -> Verdict {
    let cases: Vec<_> = (2..=6).map(|n| (format!("P_{n}"), Graph::path(n), n - 1)).collect();
    regularity_table(&cases, Duration::from_secs(60))
}

fn criterion_2() -> Verdict {
    let cases: Vec<_> = (4..=6).map(|n| (format!("C_{n}"), Graph::cycle(n), n - 2)).collect();
    regularity_table(&cases, Duration::from_secs(300))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let cases: Vec<_> = (2..=5).map(|n| (format!("K_{n}"), Graph::complete(n), 1)).collect();
    let v = regularity_table(&cases, Duration::from_secs(60));
    verdict(v.pass && within(start.elapsed(), Duration::from_secs(60)), v.detail)
}

fn criterion_4() -> Verdict {
    let a = regularity_table(&[("J_{1,4}".into(), jahangir(1, 4).unwrap(), 2)], Duration::from_secs(1800));
    let b = regularity_table(&[("J_{2,3}".into(), jahangir(2, 3).unwrap(), 4)], Duration::from_secs(1800));
    verdict(a.pass && b.pass, format!("{}; {}", a.detail, b.detail))
}

fn criterion_5() -> Verdict {
    regularity_table(&[("P_2 * K_3^c".into(), join_example(3), 2)], Duration::from_secs(300))
}

fn criterion_6(stretch: bool, budget: Duration) -> (Verdict, Option<Verdict>) {
    let g = counterexample_graph();
    let start = Instant::now();
    let h = Engine::default().h_polynomial(&g);
    let elapsed = start.elapsed();
    let want = IntPoly::new(vec![1, 10, 38, 60, 19, -24]);
    let h_ok = h.h == want && within(elapsed, Duration::from_secs(3600));
    let d_ok = h.dim == 18;
    let detail = format!(
        "h = {} ({}), d = {} (want 18), {}",
        h.h,
        if h_ok { "h matches" } else { "h differs" },
        h.dim,
        secs(elapsed)
    );
    let main = verdict(h_ok && d_ok, detail);
    let stretch_verdict = stretch.then(|| {
        let start = Instant::now();
        let engine = Engine::default().with_stretch(true).with_budget(Some(budget));
        let reg = engine.regularity(&g);
        let ok = matches!(reg, Ok(6));
        let shown = reg.map(|r| r.to_string()).unwrap_or_else(|e| e.to_string());
        verdict(ok, format!("reg = {shown} (want 6, deg h = 5), {}", secs(start.elapsed())))
    });
    (main, stretch_verdict)
}

fn summarize(results: &[CheckResult], allowed: &[Status]) -> (bool, String) {
    let bad: Vec<&CheckResult> = results.iter().filter(|r| !allowed.contains(&r.status)).collect();
    let holds = results.iter().filter(|r| r.status == Status::Holds).count();
    let detail = match bad.first() {
        None => format!("{} results, {} hold", results.len(), holds),
        Some(r) => format!("{} of {} unexpected, first: {} {} {} {:?}", bad.len(), results.len(), r.check, r.graph, r.status, r.witness),
    };
    (bad.is_empty(), detail)
}

fn ideal_sweep(check: Check, limit: Duration) -> Verdict {
    let start = Instant::now();
    let graphs = sweep_graphs(1, 5).unwrap();
    let results = run_checks(&Engine::default(), &graphs, &[check], None).unwrap();
    let allowed: &[Status] = match check {
        Check::Ohtani => &[Status::Holds, Status::HypothesisFailed],
        _ => &[Status::Holds],
    };
    let (ok, detail) = summarize(&results, allowed);
    let elapsed = start.elapsed();
    verdict(ok && within(elapsed, limit), format!("{} graphs: {detail}, {}", graphs.len(), secs(elapsed)))
}

fn criterion_7() -> Verdict {
    ideal_sweep(Check::Ohtani, Duration::from_secs(1800))
}

fn criterion_8() -> Verdict {
    ideal_sweep(Check::Herzog, Duration::from_secs(3600))
}

fn criterion_9() -> Verdict {
    let checks = [Check::Smk, Check::HibiMatsuda, Check::MatsudaMurai, Check::OmegaBound];
    let engine = Engine::default();
    let start = Instant::now();
    let small = run_checks(&engine, &sweep_graphs(1, 5).unwrap(), &checks, None).unwrap();
    let small_time = start.elapsed();
    let large = run_checks(&engine, &enumerate_connected_graphs(6).unwrap(), &checks, None).unwrap();
    let total_time = start.elapsed();
    let all: Vec<CheckResult> = small.into_iter().chain(large).collect();
    let (ok, detail) = summarize(&all, &[Status::Holds]);
    let chordal_smk = all
        .iter()
        .filter(|r| r.check == Check::Smk && r.witness["class"] == "chordal")
        .collect::<Vec<_>>();
    let chordal_ok = chordal_smk.iter().all(|r| r.status == Status::Holds && r.witness["theorem_applies"] == true);
    let path_rows = all.iter().filter(|r| r.check == Check::MatsudaMurai && r.witness["is_path"] == true).count();
    let pass = ok
        && chordal_ok
        && path_rows == 6
        && within(small_time, Duration::from_secs(3600))
        && within(total_time, Duration::from_secs(12 * 3600));
    verdict(
        pass,
        format!(
            "{detail}; chordal smk rows {} all hold: {chordal_ok}; path classes {path_rows}; n<=5 {}, n<=6 {}",
            chordal_smk.len(),
            secs(small_time),
            secs(total_time)
        ),
    )
}

fn criterion_10() -> Verdict {
    let start = Instant::now();
    let graphs = sweep_graphs(1, 5).unwrap();
    let results = run_checks(&Engine::default(), &graphs, &[Check::AlternatingSum, Check::ExtremalIdentity], None).unwrap();
    let unique = results.iter().filter(|r| r.check == Check::ExtremalIdentity && r.status == Status::Holds).count();
    let alt = results.iter().filter(|r| r.check == Check::AlternatingSum).all(|r| r.status == Status::Holds);
    let (ok, detail) = summarize(&results, &[Status::Holds, Status::HypothesisFailed]);
    verdict(
        ok && alt,
        format!("{detail}; alternating sums all hold: {alt}; unique-extremal graphs {unique}, {}", secs(start.elapsed())),
    )
}

fn induces_cycle(g: &Graph, pts: &[usize]) -> bool {
    let (h, _) = g.induced_subgraph(pts.iter().copied().collect()).unwrap();
    h.is_connected() && h.edge_count() == pts.len() && (1..=h.n()).all(|v| h.degree(v) == 2)
}

fn criterion_11() -> Verdict {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    let counts: Vec<usize> = (1..=7).map(|n| enumerate_connected_graphs(n).unwrap().len()).collect();
    if counts != [1, 1, 2, 6, 21, 112, 853] {
        failures.push(format!("enumeration counts {counts:?}"));
    }
    let graphs = sweep_graphs(1, 7).unwrap();

    // internal vertex counts drop under completion and deletion
    let mut lemma_iv = 0;
    for g in &graphs {
        let iv = internal_vertex_count(g);
        for v in internal_vertices(g).iter() {
            lemma_iv += 1;
            let gv = g.neighborhood_completion(v).unwrap();
            let (gd, _) = g.delete_vertex(v).unwrap();
            if internal_vertex_count(&gv) >= iv || internal_vertex_count(&gd) >= iv {
                failures.push(format!("iv lemma fails at {:?}, v = {v}", g.edges()));
            }
        }
    }

    // clique counts under neighborhood completion for chordal graphs
    let mut lemma_c = 0;
    for g in graphs.iter().filter(|g| is_chordal(g)) {
        let c = clique_count(g);
        for v in 1..=g.n() {
            lemma_c += 1;
            let t = clique_degree(g, v);
            if clique_count(&g.neighborhood_completion(v).unwrap()) + t > c + 1 {
                failures.push(format!("clique lemma fails at {:?}, v = {v}", g.edges()));
            }
        }
    }

    // chordality of quasi- and semi-cycles, and quasi-cycles being semi-cycles
    let mut specs = 0;
    for m in 2..=8 {
        for spec in IntervalSpec::all(m) {
            specs += 1;
            let q = quasi_cycle(&spec);
            let pts = spec.cut_points();
            for g in [q.clone(), semi_cycle(&spec, m + 1).unwrap(), semi_cycle(&spec, m + 2).unwrap()] {
                let ok = match spec.s() {
                    2 => is_chordal(&g),
                    s if s > 2 => !is_chordal(&g) && induces_cycle(&g, pts),
                    _ => true,
                };
                if !ok {
                    failures.push(format!("chordality remark fails for {:?}", pts));
                }
            }
            if !(is_quasi_cycle(&q).unwrap() && is_semi_cycle(&q).unwrap()) {
                failures.push(format!("quasi-cycle {:?} not recognized as semi-cycle", pts));
            }
        }
    }

    // deleting an internal vertex of a quasi-block
    let mut qc_cases = 0;
    for g in &graphs {
        if !is_quasi_block_graph(g).unwrap() {
            continue;
        }
        let q = qc(g).unwrap();
        for (block, kind) in block_kinds(g).unwrap() {
            if kind != BlockKind::QuasiBlock {
                continue;
            }
            let (b, map) = g.induced_subgraph(block).unwrap();
            let inner: VertexSet = internal_vertices(&b).iter().map(|v| map[v - 1]).collect();
            for v in inner.iter() {
                qc_cases += 1;
                let (h, _) = g.delete_vertex(v).unwrap();
                if !(is_quasi_block_graph(&h).unwrap() && qc(&h).unwrap() + 1 == q) {
                    failures.push(format!("qc remark fails at {:?}, v = {v}", g.edges()));
                }
            }
        }
    }

    let elapsed = start.elapsed();
    let detail = format!(
        "counts {counts:?}; iv cases {lemma_iv}; clique cases {lemma_c}; specs {specs}; qc cases {qc_cases}; {}{}",
        secs(elapsed),
        failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
    );
    verdict(failures.is_empty() && qc_cases > 0 && within(elapsed, Duration::from_secs(300)), detail)
}

fn criterion_12() -> Verdict {
    let start = Instant::now();
    let pairs = glued_pairs(7);
    let engine = Engine::default();
    let graphs: Vec<Graph> = pairs.iter().map(|(g, _, _)| g.clone()).collect();
    let results = run_checks(&engine, &graphs, &[Check::Additivity], None).unwrap();
    let (ok, detail) = summarize(&results, &[Status::Holds]);
    let two_parts = results.iter().all(|r| r.witness["part_regs"].as_array().map(|a| a.len()) == Some(2));
    let elapsed = start.elapsed();
    verdict(
        ok && two_parts && within(elapsed, Duration::from_secs(1800)),
        format!("{} glued graphs: {detail}, {}", pairs.len(), secs(elapsed)),
    )
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stretch = args.iter().any(|a| a == "--stretch");
    let budget = args
        .iter()
        .position(|a| a == "--budget")
        .and_then(|i| args.get(i + 1))
        .and_then(|s| s.parse::<f64>().ok())
        .map(Duration::from_secs_f64)
        .unwrap_or(Duration::from_secs(3600));
    let only: Option<BTreeSet<String>> = args
        .iter()
        .position(|a| a == "--only")
        .and_then(|i| args.get(i + 1))
        .map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
    let selected = |id: &str| only.as_ref().is_none_or(|set| set.contains(id));

    let criteria: Vec<(&str, &str, fn() -> Verdict)> = vec![
        ("1", "path regularity", criterion_1),
        ("2", "cycle regularity", criterion_2),
        ("3", "complete graph regularity", criterion_3),
        ("4", "Jahangir regularity", criterion_4),
        ("5", "join example regularity", criterion_5),
        ("7", "Ohtani splitting", criterion_7),
        ("8", "Herzog decomposition", criterion_8),
        ("9", "conjecture sweeps n <= 6", criterion_9),
        ("10", "Betti and Hilbert cross-check n <= 5", criterion_10),
        ("11", "structural suites", criterion_11),
        ("12", "additivity over gluing", criterion_12),
    ];

    let mut unexpected = 0;
    let mut report = |id: &str, name: &str, v: Verdict| {
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name}: {}", v.detail);
        if !v.pass {
            match expected_failure(id, &v.detail) {
                Some(why) => println!("             known unattainable: {why}"),
                None => unexpected += 1,
            }
        }
    };

    for (id, name, run) in criteria.iter().take(5) {
        if selected(id) {
            report(id, name, run());
        }
    }
    if selected("6") {
        let (main, stretch_verdict) = criterion_6(stretch, budget);
        report("6", "counterexample h-polynomial", main);
        match stretch_verdict {
            Some(v) => report("6s", "counterexample regularity (stretch)", v),
            None => println!("criterion 6s SKIP counterexample regularity (stretch): pass --stretch to attempt"),
        }
    }
    for (id, name, run) in criteria.iter().skip(5) {
        if selected(id) {
            report(id, name, run());
        }
    }

    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion/criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
