use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use binedge_cli::cache::ResultCache;
use binedge_cli::checks::{classify, run_check, Check, CheckResult};
use binedge_cli::engine::Engine;
use binedge_cli::enumerate::graph_id;
use binedge_cli::families::{counterexample_chain, counterexample_graph, join_example};
use binedge_cli::{exit_code, report, sweep};
use binedge_core::betti::{graded_betti, BettiOptions, Strategy};
use binedge_core::classes::{
    cm_closed_graph, decompose_indecomposable, exists_closed_labeling, flower, is_block_graph, is_chordal,
    is_quasi_block_graph, is_semi_block_graph, jahangir, qc, quasi_cycle, semi_cycle, wheel, IntervalSpec,
};
use binedge_core::groebner::{binomial_edge_ideal, buchberger, dump_basis};
use binedge_core::invariants::{
    block_decomposition, clique_count, clique_number, internal_vertex_count, longest_induced_path, vertex_connectivity,
};
use binedge_core::io::{parse_graph_auto, write_adjacency, write_graph6};
use binedge_core::{Graph, MonomialOrder, PolyRing, DEFAULT_PRIME};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "binedge", version, about = "Binomial edge ideals: invariants, algebra and conjecture checks")]
struct Cli {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Allow Betti computations beyond the default vertex envelope.
    #[arg(long, global = true)]
    stretch: bool,
    /// Wall-clock budget in seconds for Betti computations.
    #[arg(long, global = true, value_name = "SECONDS")]
    budget: Option<f64>,
    /// Directory for reports (and the result cache unless --cache is given).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Report format; single-graph commands print JSON when set to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Result cache directory.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Degrevlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Multigraded,
    Koszul,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named graph: path N, cycle N, complete N, empty N, star K,
    /// bipartite P Q, jahangir M N, wheel N, flower H K, cm-closed A..,
    /// quasi-cycle A.., semi-cycle N A.., join-example M, counterexample,
    /// counterexample-chain K.
    Gen {
        family: String,
        params: Vec<usize>,
        /// Write graph6 instead of the adjacency format.
        #[arg(long)]
        graph6: bool,
    },
    /// Combinatorial invariants and class memberships.
    Invariants { graph: PathBuf },
    /// Reduced Gröbner basis of J_G.
    Gb {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
    },
    /// Hilbert series of S/J_G as h(t)/(1-t)^d.
    Hilbert { graph: PathBuf },
    /// Graded Betti numbers of S/J_G.
    Betti {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Multigraded)]
        strategy: StrategyArg,
    },
    /// Run one check on a graph file or on all connected graphs up to --sweep N.
    Check {
        name: String,
        graph: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        sweep: Option<usize>,
    },
    /// Run checks on all connected graphs with MIN_N..=MAX_N vertices.
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Comma-separated check names; defaults to the conjecture checks.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Gen { family, params, graph6 } => {
            let g = generate(family, params)?;
            print!("{}", if *graph6 { write_graph6(&g) + "\n" } else { write_adjacency(&g) });
            Ok(0)
        }
        Command::Invariants { graph } => {
            let g = read_graph(graph)?;
            emit(&cli, &invariants(&g))?;
            Ok(0)
        }
        Command::Gb { graph, order } => {
            let g = read_graph(graph)?;
            let order = match order {
                OrderArg::Lex => MonomialOrder::Lex,
                OrderArg::Degrevlex => MonomialOrder::DegRevLex,
            };
            let ring = PolyRing::binomial_edge_ring(engine(&cli)?.field().clone(), g.n(), order)?;
            let gb = buchberger(&ring, binomial_edge_ideal(&ring, &g).generators());
            print!("{}", dump_basis(&ring, &gb));
            Ok(0)
        }
        Command::Hilbert { graph } => {
            let g = read_graph(graph)?;
            let h = engine(&cli)?.h_polynomial(&g);
            if cli.format == Some(Format::Json) {
                emit(&cli, &json!({ "h": h.h.coeffs(), "dim": h.dim, "deg_h": h.degree(), "series": h.to_string() }))?;
            } else {
                println!("{h}");
                println!("dim: {}", h.dim);
                println!("deg h: {}", h.degree());
            }
            Ok(0)
        }
        Command::Betti { graph, strategy } => {
            let g = read_graph(graph)?;
            let e = engine(&cli)?;
            let table = match strategy {
                StrategyArg::Multigraded => (*e.betti(&g)?).clone(),
                StrategyArg::Koszul => {
                    let opts = BettiOptions { strategy: Strategy::GradedKoszul, ..BettiOptions::default() };
                    graded_betti(e.field(), &g, &opts)?
                }
            };
            if cli.format == Some(Format::Json) {
                println!("{}", table.to_json());
            } else {
                print!("{}", table.to_triangular());
                println!("reg: {}  pd: {}  depth: {}", table.regularity(), table.projective_dimension(), table.depth());
            }
            Ok(0)
        }
        Command::Check { name, graph, sweep: sweep_n } => {
            let check: Check = name.parse()?;
            let e = engine(&cli)?;
            let cache = open_cache(&cli)?;
            let results = match (graph, sweep_n) {
                (Some(path), None) => {
                    let g = read_graph(path)?;
                    match &cache {
                        Some(c) => vec![c.get_or_compute(&graph_id(&g), e.prime(), check, || run_check(&e, check, &g))?],
                        None => vec![run_check(&e, check, &g)],
                    }
                }
                (None, Some(n)) => sweep(&e, 1, *n, &[check], cache.as_ref())?,
                _ => bail!("give either a graph file or --sweep N"),
            };
            finish(&cli, &results)
        }
        Command::Sweep { max_n, min_n, checks } => {
            let checks: Vec<Check> = if checks.is_empty() {
                Check::SWEEP_DEFAULT.to_vec()
            } else {
                checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
            };
            let e = engine(&cli)?;
            let cache = open_cache(&cli)?;
            let results = sweep(&e, *min_n, *max_n, &checks, cache.as_ref())?;
            finish(&cli, &results)
        }
    }
}

fn engine(cli: &Cli) -> Result<Engine> {
    let budget = match cli.budget {
        Some(s) if !(s.is_finite() && s > 0.0) => bail!("--budget must be a positive number of seconds"),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(Engine::new(cli.prime)?.with_budget(budget).with_stretch(cli.stretch))
}

fn open_cache(cli: &Cli) -> Result<Option<ResultCache>> {
    if cli.no_cache {
        return Ok(None);
    }
    let dir = match (&cli.cache, &cli.out) {
        (Some(dir), _) => dir.clone(),
        (None, Some(out)) => out.join("cache"),
        (None, None) => return Ok(None),
    };
    Ok(Some(ResultCache::open(dir)?))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_graph_auto(&text).with_context(|| format!("parsing {}", path.display()))
}

fn generate(family: &str, p: &[usize]) -> Result<Graph> {
    let want = |k: usize| -> Result<()> {
        if p.len() != k {
            bail!("{family} takes {k} parameter(s), got {}", p.len());
        }
        Ok(())
    };
    let g = match family {
        "path" => {
            want(1)?;
            Graph::path(p[0])
        }
        "cycle" => {
            want(1)?;
            if p[0] < 3 {
                bail!("cycle needs at least 3 vertices");
            }
            Graph::cycle(p[0])
        }
        "complete" => {
            want(1)?;
            Graph::complete(p[0])
        }
        "empty" => {
            want(1)?;
            Graph::empty(p[0])
        }
        "star" => {
            want(1)?;
            Graph::star(p[0])
        }
        "bipartite" => {
            want(2)?;
            Graph::complete_bipartite(p[0], p[1])
        }
        "jahangir" => {
            want(2)?;
            jahangir(p[0], p[1])?
        }
        "wheel" => {
            want(1)?;
            wheel(p[0])?
        }
        "flower" => {
            want(2)?;
            flower(p[0], p[1])?
        }
        "cm-closed" => cm_closed_graph(&IntervalSpec::new(p.to_vec())?),
        "quasi-cycle" => quasi_cycle(&IntervalSpec::new(p.to_vec())?),
        "semi-cycle" => {
            let (&n, cuts) = p.split_first().ok_or_else(|| anyhow!("semi-cycle takes N then cut points"))?;
            semi_cycle(&IntervalSpec::new(cuts.to_vec())?, n)?
        }
        "join-example" => {
            want(1)?;
            join_example(p[0])
        }
        "counterexample" => {
            want(0)?;
            counterexample_graph()
        }
        "counterexample-chain" => {
            want(1)?;
            if p[0] == 0 {
                bail!("chain length must be positive");
            }
            counterexample_chain(p[0])
        }
        other => bail!("unknown family {other:?}"),
    };
    Ok(g)
}

fn invariants(g: &Graph) -> Value {
    let blocks = block_decomposition(g);
    let d = decompose_indecomposable(g);
    let closed = match exists_closed_labeling(g) {
        Ok(w) => json!(w.is_some()),
        Err(e) => json!(e.to_string()),
    };
    let or_error = |r: Result<Value, binedge_core::classes::ClassError>| r.unwrap_or_else(|e| json!(e.to_string()));
    json!({
        "graph6": write_graph6(g),
        "canonical": graph_id(g),
        "n": g.n(),
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "c": clique_count(g),
        "omega": clique_number(g),
        "iv": internal_vertex_count(g),
        "l": longest_induced_path(g),
        "kappa": vertex_connectivity(g),
        "chordal": is_chordal(g),
        "closed_labeling_exists": closed,
        "block_graph": is_block_graph(g),
        "quasi_block_graph": or_error(is_quasi_block_graph(g).map(Value::from)),
        "qc": or_error(qc(g).map(Value::from)),
        "semi_block_graph": or_error(is_semi_block_graph(g).map(Value::from)),
        "class": classify(g),
        "cut_vertices": blocks.cut_vertices.to_vec(),
        "bridges": blocks.bridges,
        "blocks": blocks.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
        "indecomposable_parts": d.parts.iter().map(|p| p.to_vec()).collect::<Vec<_>>(),
    })
}

/// JSON when requested, otherwise one `key: value` line per field.
fn emit(cli: &Cli, v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    if cli.format == Some(Format::Json) {
        writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    } else if let Value::Object(map) = v {
        for (k, val) in map {
            writeln!(out, "{k}: {val}")?;
        }
    }
    Ok(())
}

fn finish(cli: &Cli, results: &[CheckResult]) -> Result<u8> {
    {
        let mut out = io::stdout().lock();
        for r in results {
            let mut w = r.witness.clone();
            w.remove("betti");
            writeln!(out, "{:<17} {:<17} n={} {} {}", r.status, r.check, r.n, r.graph, Value::Object(w))?;
        }
    }
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        match cli.format.unwrap_or(Format::Csv) {
            Format::Csv => report::write_csv(results, fs::File::create(dir.join("results.csv"))?)?,
            Format::Json => report::write_json(results, fs::File::create(dir.join("results.json"))?)?,
        }
    }
    Ok(exit_code(results) as u8)
}
