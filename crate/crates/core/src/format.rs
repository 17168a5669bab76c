//! The `qc-graph` text format.
//!
//! ```text
//! qc-graph 1
//! nodes 3
//! edge 0 1 0.5
//! edge 1 2 1
//! label 0 O/A
//! ```
//!
//! `#` starts a comment. Label lines are optional; when present every node
//! needs exactly one.

use std::fmt::Write as _;

use crate::blood::AboPair;
use crate::error::GraphError;
use crate::graph::WeightedGraph;

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut header = false;
    let mut nodes: Option<usize> = None;
    let mut edges: Vec<(usize, usize, f64, usize)> = Vec::new();
    let mut labels: Vec<(usize, AboPair, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let key = toks.next().unwrap_or_default();
        if !header {
            if key != "qc-graph" || toks.next() != Some("1") {
                return Err(parse_err(line, "expected header `qc-graph 1`"));
            }
            header = true;
            continue;
        }
        match key {
            "nodes" => {
                if nodes.is_some() {
                    return Err(parse_err(line, "repeated `nodes` line"));
                }
                nodes = Some(parse_usize(toks.next(), line, "node count")?);
            }
            "edge" => {
                let u = parse_usize(toks.next(), line, "endpoint")?;
                let v = parse_usize(toks.next(), line, "endpoint")?;
                let tok = toks
                    .next()
                    .ok_or_else(|| parse_err(line, "missing probability"))?;
                let p: f64 = tok
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid probability `{tok}`")))?;
                edges.push((u, v, p, line));
            }
            "label" => {
                let node = parse_usize(toks.next(), line, "node")?;
                let tok = toks.next().ok_or_else(|| parse_err(line, "missing label"))?;
                let pair: AboPair = tok.parse().map_err(|e: String| parse_err(line, e))?;
                labels.push((node, pair, line));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("unexpected token `{extra}`")));
        }
    }
    if !header {
        return Err(parse_err(1, "empty input"));
    }
    let n = nodes.ok_or_else(|| parse_err(1, "missing `nodes` line"))?;

    // validate edge by edge so errors carry the offending line
    let mut seen = std::collections::HashSet::new();
    for &(u, v, p, line) in &edges {
        let err = if u >= n || v >= n {
            Some(format!("node {} out of range 0..{n}", u.max(v)))
        } else if u == v {
            Some(format!("self-loop on node {u}"))
        } else if !(p > 0.0 && p <= 1.0) {
            Some(format!("probability {p} outside (0, 1]"))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(format!("duplicate edge {u}-{v}"))
        } else {
            None
        };
        if let Some(message) = err {
            return Err(parse_err(line, message));
        }
    }
    let g = WeightedGraph::new(n, edges.iter().map(|&(u, v, p, _)| (u, v, p)))?;
    if labels.is_empty() {
        return Ok(g);
    }
    let mut slots: Vec<Option<AboPair>> = vec![None; n];
    for &(node, pair, line) in &labels {
        if node >= n {
            return Err(parse_err(line, format!("label for node {node} out of range")));
        }
        if slots[node].replace(pair).is_some() {
            return Err(parse_err(line, format!("repeated label for node {node}")));
        }
    }
    if let Some(missing) = slots.iter().position(|s| s.is_none()) {
        return Err(parse_err(
            labels.last().map_or(1, |l| l.2),
            format!("node {missing} has no label"),
        ));
    }
    g.with_labels(slots.into_iter().map(|s| s.unwrap()).collect())
}

/// Serializes `g`; probabilities use the shortest round-trip decimal form.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "qc-graph 1").unwrap();
    writeln!(out, "nodes {}", g.node_count()).unwrap();
    for (_, e) in g.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, e.p).unwrap();
    }
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            writeln!(out, "label {i} {l}").unwrap();
        }
    }
    out
}
