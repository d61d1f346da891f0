//! graph6 and plain edge-list encodings.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`) into 6-bit groups offset by 63.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn g6_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Parses one graph6 record. Surrounding whitespace and the optional
/// `>>graph6<<` header are accepted; offsets in errors are relative to the
/// start of `text`.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(g6_err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(g6_err(base + i, format!("byte 0x{b:02x} outside the printable range 63..=126")));
        }
    }
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        if bytes.len() < 4 {
            return Err(g6_err(base + bytes.len(), "truncated 18-bit vertex count"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(g6_err(base + bytes.len(), "truncated 36-bit vertex count"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let have = bytes.len() - pos;
    if have != need {
        let offset = base + pos + have.min(need);
        return Err(g6_err(offset, format!("expected {need} adjacency bytes for n = {n}, found {have}")));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    pos += need;
    if bits % 6 != 0 {
        let last = bytes[pos - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_err(base + pos - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Reads one graph per non-blank line.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(from_graph6(&line).map_err(|e| match e {
            Error::Graph6 { offset, reason } => Error::Graph6 {
                offset,
                reason: format!("line {}: {reason}", lineno + 1),
            },
            other => other,
        })?);
    }
    Ok(out)
}

/// Writes `n <order>` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Whitespace-separated `u v` pairs, one per line. `#` starts a comment. An
/// optional `n <order>` line fixes the vertex count (needed for isolated
/// vertices); otherwise the order is one more than the largest label.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| Error::EdgeList { line: i + 1, reason };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 || order.is_some() {
                return Err(err("expected a single `n <order>` header".into()));
            }
            order = Some(tokens[1].parse().map_err(|e| err(format!("bad order: {e}")))?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(err(format!("expected two labels, found {}", tokens.len())));
        }
        let u: usize = tokens[0].parse().map_err(|e| err(format!("bad label: {e}")))?;
        let v: usize = tokens[1].parse().map_err(|e| err(format!("bad label: {e}")))?;
        edges.push((u, v));
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = order.unwrap_or(inferred);
    if n < inferred {
        return Err(Error::EdgeList { line: 0, reason: format!("label {} exceeds order {n}", inferred - 1) });
    }
    Graph::from_edges(n, &edges)
}
