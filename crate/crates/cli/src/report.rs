//! CSV and JSON reports over check results.

use std::io::Write;

use serde_json::{json, Value};
use thiserror::Error;

use crate::checks::CheckResult;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Report order: by vertex count, canonical key, then check.
pub fn sort_results(results: &mut [CheckResult]) {
    results.sort_by(|a, b| (a.n, &a.graph, a.check).cmp(&(b.n, &b.graph, b.check)));
}

/// One row per result; the witness column holds compact JSON.
pub fn write_csv<W: Write>(results: &[CheckResult], out: W) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["graph", "n", "check", "status", "runtime_ms", "witness"])?;
    for r in results {
        w.write_record([
            r.graph.clone(),
            r.n.to_string(),
            r.check.to_string(),
            r.status.to_string(),
            r.runtime_ms.to_string(),
            serde_json::to_string(&r.witness)?,
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Results grouped per graph, in input order.
pub fn to_json(results: &[CheckResult]) -> Value {
    let mut graphs: Vec<Value> = Vec::new();
    for r in results {
        let entry = json!({
            "check": r.check,
            "status": r.status,
            "witness": r.witness,
            "runtime_ms": r.runtime_ms,
        });
        match graphs.last_mut() {
            Some(last) if last["graph"] == r.graph.as_str() => {
                last["checks"].as_array_mut().expect("checks array").push(entry);
            }
            _ => graphs.push(json!({ "graph": r.graph, "n": r.n, "checks": [entry] })),
        }
    }
    json!({ "graphs": graphs })
}

pub fn write_json<W: Write>(results: &[CheckResult], mut out: W) -> Result<(), ReportError> {
    serde_json::to_writer_pretty(&mut out, &to_json(results))?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{Check, Status};
    use serde_json::Map;

    #[test]
    fn empty_csv_has_header() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "graph,n,check,status,runtime_ms,witness\n");
    }

    #[test]
    fn json_groups_by_graph() {
        let mk = |g: &str, c| CheckResult {
            graph: g.into(),
            n: 3,
            check: c,
            status: Status::Holds,
            witness: Map::new(),
            runtime_ms: 1,
        };
        let mut rs = vec![mk("Bw", Check::Smk), mk("Bo", Check::Smk), mk("Bw", Check::HibiMatsuda)];
        sort_results(&mut rs);
        let v = to_json(&rs);
        assert_eq!(v["graphs"].as_array().unwrap().len(), 2);
        assert_eq!(v["graphs"][1]["checks"].as_array().unwrap().len(), 2);
    }
}
