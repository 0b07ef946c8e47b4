//! Graph file formats: a plain adjacency list and graph6.
//!
//! The adjacency format is a first line holding `n` followed by one `i j`
//! line per edge (1-based). Blank lines and `#` comments are ignored.

use crate::graph::{Graph, GraphError};

pub fn parse_adjacency(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| GraphError::Parse(format!("bad vertex count {header:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let mut next = || -> Result<usize, GraphError> {
            let tok = it.next().ok_or_else(|| GraphError::Parse(format!("bad edge line {line:?}")))?;
            tok.parse().map_err(|_| GraphError::Parse(format!("bad vertex {tok:?}")))
        };
        let (i, j) = (next()?, next()?);
        if it.next().is_some() {
            return Err(GraphError::Parse(format!("trailing tokens in {line:?}")));
        }
        edges.push((i, j));
    }
    Graph::new(n, &edges)
}

pub fn write_adjacency(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse(format!("byte {b} outside graph6 range")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(GraphError::Parse("graph6 sizes above 258047 unsupported".into()));
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(GraphError::Parse(format!(
            "graph6 body has {} bytes, expected {}",
            body.len(),
            pairs.div_ceil(6)
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i + 1, j + 1));
            }
            k += 1;
        }
    }
    Graph::new(n, &edges)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i + 1, j + 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Reads either format: a single non-numeric line is taken as graph6.
pub fn parse_graph_auto(text: &str) -> Result<Graph, GraphError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.parse::<usize>().is_err() => parse_graph6(l),
        _ => parse_adjacency(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn adjacency_round_trip_and_comments() {
        let g = parse_adjacency("# triangle\n3\n1 2\n2 3  # spoke\n\n1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_adjacency(&write_adjacency(&g)).unwrap(), g);
        assert!(parse_adjacency("3\n1\n").is_err());
        assert!(parse_adjacency("x\n").is_err());
        assert!(parse_adjacency("2\n1 3\n").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // Standard examples: K_3 = "Bw", P_4 labeled 1-2-3-4 = "Ch", empty K_1 = "@".
        assert_eq!(write_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(write_graph6(&Graph::path(4)), "Ch");
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6(">>graph6<<Bw").unwrap(), Graph::complete(3));
        assert!(parse_graph6("B").is_err());
    }

    #[test]
    fn auto_detection() {
        assert_eq!(parse_graph_auto("Bw\n").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph_auto("2\n1 2\n").unwrap(), Graph::path(2));
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 1usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 2..=n {
                for i in 1..j {
                    if bits[k % bits.len()] { edges.push((i, j)); }
                    k += 1;
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }
}
