//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! 6 3
//! 0 3 4
//! 1 3 5
//! ```
//!
//! The first non-comment line is `n k`; each further non-comment line holds
//! `k` zero-based vertex labels. Duplicate edges are dropped and counted.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ore3_core::{Hypergraph, Vertex};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub hypergraph: Hypergraph,
    /// Edge lines dropped as repeats of an earlier line.
    pub duplicates: usize,
}

fn parse_err(line: usize, msg: impl Into<String>) -> HarnessError {
    HarnessError::Parse { line, msg: msg.into() }
}

pub fn parse_hypergraph(text: &str) -> Result<Parsed> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"n k\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, k] = fields[..] else {
        return Err(parse_err(hline, format!("malformed header {header:?}, expected \"n k\"")));
    };
    let n: usize = n.parse().map_err(|_| parse_err(hline, format!("bad order {n:?}")))?;
    let k: usize = k.parse().map_err(|_| parse_err(hline, format!("bad uniformity {k:?}")))?;

    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    for (line, l) in lines {
        let mut edge = Vec::with_capacity(k);
        for tok in l.split_whitespace() {
            let v: Vertex = tok
                .parse()
                .map_err(|_| parse_err(line, format!("bad vertex label {tok:?}")))?;
            if v as usize >= n {
                return Err(parse_err(line, format!("vertex {v} out of range for n={n}")));
            }
            edge.push(v);
        }
        if edge.len() != k {
            return Err(parse_err(line, format!("expected {k} labels, found {}", edge.len())));
        }
        edge.sort_unstable();
        if edge.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(line, "repeated vertex in edge"));
        }
        edges.push(edge);
    }
    let total = edges.len();
    let hypergraph = Hypergraph::new(n, k, edges).map_err(|e| parse_err(hline, e.to_string()))?;
    Ok(Parsed {
        duplicates: total - hypergraph.num_edges(),
        hypergraph,
    })
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Parsed> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_hypergraph(&text)
}

pub fn format_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.k());
    for e in h.edges() {
        let labels: Vec<String> = e.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

pub fn write_hypergraph(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_hypergraph(h)).map_err(|e| HarnessError::io(path, e))
}
