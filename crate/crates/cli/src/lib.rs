//! Verification harness for binomial edge ideal conjectures: graph
//! enumeration, checks, result caching and reports.

pub mod cache;
pub mod checks;
pub mod engine;
pub mod enumerate;
pub mod families;
pub mod report;

use binedge_core::Graph;
use rayon::prelude::*;
use thiserror::Error;

use cache::{CacheError, ResultCache};
use checks::{run_check, Check, CheckResult, Status};
use engine::Engine;
use enumerate::{enumerate_connected_graphs, graph_id, EnumerationError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

/// Runs every check on every graph in parallel, reading through `cache`.
/// Results come back in report order.
pub fn run_checks(
    engine: &Engine,
    graphs: &[Graph],
    checks: &[Check],
    cache: Option<&ResultCache>,
) -> Result<Vec<CheckResult>, CacheError> {
    let jobs: Vec<(&Graph, Check)> = graphs.iter().flat_map(|g| checks.iter().map(move |&c| (g, c))).collect();
    let mut results = jobs
        .into_par_iter()
        .map(|(g, check)| match cache {
            Some(cache) => cache.get_or_compute(&graph_id(g), engine.prime(), check, || run_check(engine, check, g)),
            None => Ok(run_check(engine, check, g)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    report::sort_results(&mut results);
    Ok(results)
}

/// All connected graphs on `min_n..=max_n` vertices.
pub fn sweep_graphs(min_n: usize, max_n: usize) -> Result<Vec<Graph>, EnumerationError> {
    let mut out = Vec::new();
    for n in min_n.max(1)..=max_n {
        out.extend(enumerate_connected_graphs(n)?);
    }
    Ok(out)
}

pub fn sweep(
    engine: &Engine,
    min_n: usize,
    max_n: usize,
    checks: &[Check],
    cache: Option<&ResultCache>,
) -> Result<Vec<CheckResult>, HarnessError> {
    let graphs = sweep_graphs(min_n, max_n)?;
    Ok(run_checks(engine, &graphs, checks, cache)?)
}

/// 1 if anything is violated, else 2 if anything ran out of envelope, else 0.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Violated) {
        1
    } else if results.iter().any(|r| r.status == Status::EnvelopeExceeded) {
        2
    } else {
        0
    }
}
