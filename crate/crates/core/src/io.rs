//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines, u < v)
//! ```
//!
//! Anything after `#` on a line is ignored, as are blank lines. Output is
//! always canonical: edges sorted lexicographically, one per line.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());

    let (header_line, header) =
        lines.next().ok_or(Error::Parse { line: 0, msg: "missing \"n m\" header".into() })?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let (u, v) = parse_pair(line_no, line)?;
        if u >= v {
            return Err(Error::Parse { line: line_no, msg: format!("expected u < v, got {u} {v}") });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let bad = |msg: String| Error::Parse { line: line_no, msg };
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = fields.next().ok_or_else(|| bad("expected two integers".into()))?;
        tok.parse().map_err(|_| bad(format!("not a non-negative integer: {tok:?}")))
    };
    let pair = (next()?, next()?);
    if let Some(extra) = fields.next() {
        return Err(bad(format!("unexpected trailing token {extra:?}")));
    }
    Ok(pair)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// SHA-256 of the canonical edge list, hex encoded. Independent of the edge
/// order (and comments) of whatever file the graph was read from.
pub fn canonical_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_edge_list(g).as_bytes()))
}
