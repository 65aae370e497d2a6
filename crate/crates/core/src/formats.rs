//! Text formats: the canonical edge-list format and graph6 for interchange.
//!
//! Edge-list files start with a line `n m` followed by `m` lines `u v` with
//! `0 <= u < v < n`; writing canonicalizes edge order lexicographically, so
//! write-parse-write round-trips are byte identical.

use crate::graph::{Graph, GraphError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header declares {declared} edges but {found} distinct edges found")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("graph6 supports orders up to 258047, got {order}")]
    OrderTooLarge { order: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (line_no, header) = lines.next().ok_or(FormatError::Parse {
        line: 1,
        message: "missing header line".into(),
    })?;
    let mut it = header.split_whitespace();
    let parse_field = |tok: Option<&str>, line: usize| -> Result<usize, FormatError> {
        tok.ok_or(FormatError::Parse {
            line,
            message: "expected two integers".into(),
        })?
        .parse()
        .map_err(|e| FormatError::Parse {
            line,
            message: format!("bad integer: {e}"),
        })
    };
    let n = parse_field(it.next(), line_no + 1)?;
    let m = parse_field(it.next(), line_no + 1)?;

    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let mut it = line.split_whitespace();
        let u = parse_field(it.next(), idx + 1)?;
        let v = parse_field(it.next(), idx + 1)?;
        if it.next().is_some() {
            return Err(FormatError::Parse {
                line: idx + 1,
                message: "trailing tokens on edge line".into(),
            });
        }
        edges.push((u, v));
    }
    let g = Graph::new(n, &edges)?;
    if g.edge_count() != m {
        return Err(FormatError::EdgeCountMismatch {
            declared: m,
            found: g.edge_count(),
        });
    }
    Ok(g)
}

/// Encodes `g` in graph6 (upper triangle, column order, 6 bits per byte).
pub fn to_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.order();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        bytes.push(((n >> 12) & 0x3f) as u8 + 63);
        bytes.push(((n >> 6) & 0x3f) as u8 + 63);
        bytes.push((n & 0x3f) as u8 + 63);
    } else {
        return Err(FormatError::OrderTooLarge { order: n });
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        bytes.push(acc + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

/// Decodes a single graph6 line.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let raw: Vec<u8> = text.trim().bytes().collect();
    let bad = |message: &str| FormatError::Parse {
        line: 1,
        message: message.into(),
    };
    if raw.is_empty() {
        return Err(bad("empty graph6 string"));
    }
    for &b in &raw {
        if !(63..=126).contains(&b) {
            return Err(bad("byte outside graph6 range"));
        }
    }
    let vals: Vec<u8> = raw.iter().map(|&b| b - 63).collect();
    let (n, header_len) = if vals[0] != 63 {
        (vals[0] as usize, 1)
    } else {
        if vals.len() < 4 {
            return Err(bad("truncated graph6 order"));
        }
        if vals[1] == 63 {
            return Err(bad("orders above 258047 unsupported"));
        }
        (
            ((vals[1] as usize) << 12) | ((vals[2] as usize) << 6) | vals[3] as usize,
            4,
        )
    };
    let needed_bits = n * n.saturating_sub(1) / 2;
    let avail_bits = (vals.len() - header_len) * 6;
    if avail_bits < needed_bits {
        return Err(bad("truncated graph6 adjacency bits"));
    }
    let mut edges = Vec::new();
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = vals[header_len + pos / 6];
            if byte >> (5 - pos % 6) & 1 != 0 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}
