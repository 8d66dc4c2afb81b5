//! Edge-list text and graph6.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `u < v` in
//! ascending order. Blank lines and lines starting with `#` are skipped on
//! input.

use std::fmt;
use std::str::FromStr;

use geodex_core::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("header promises {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("invalid graph6 data: {0}")]
    Graph6(String),
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Edges,
    Graph6,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Edges => "edges",
            Format::Graph6 => "graph6",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edges" => Ok(Format::Edges),
            "graph6" | "g6" => Ok(Format::Graph6),
            _ => Err(format!("unknown format {s:?} (expected edges or graph6)")),
        }
    }
}

pub fn write_edges(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_edges(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(FormatError::Empty)?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match head.as_slice() {
        [n, m] => (
            n.parse::<usize>().map_err(|_| FormatError::Header(header.into()))?,
            m.parse::<usize>().map_err(|_| FormatError::Header(header.into()))?,
        ),
        _ => return Err(FormatError::Header(header.into())),
    };
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let bad = |msg: &str| FormatError::Line { line, msg: msg.into() };
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(bad("expected two vertices"));
        };
        let u: usize = u.parse().map_err(|_| bad("vertex is not a number"))?;
        let v: usize = v.parse().map_err(|_| bad("vertex is not a number"))?;
        if u >= n || v >= n {
            return Err(bad("vertex out of range"));
        }
        if u == v {
            return Err(bad("loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Standard graph6 without header or trailing newline. Supports
/// `n <= 258047`.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn read_graph6(text: &str) -> Result<Graph, FormatError> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(FormatError::Graph6("unsupported size prefix".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(FormatError::Graph6(format!(
            "expected {need} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (bits..need * 6).any(bit) {
        return Err(FormatError::Graph6("nonzero padding".into()));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// graph6 when the first meaningful line is a single token (or carries the
/// `>>graph6<<` header), edge list otherwise.
pub fn detect(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with(">>graph6<<") || (!first.is_empty() && first.split_whitespace().count() == 1) {
        Format::Graph6
    } else {
        Format::Edges
    }
}

pub fn read_auto(text: &str) -> Result<Graph, FormatError> {
    match detect(text) {
        Format::Edges => read_edges(text),
        Format::Graph6 => read_graph6(text),
    }
}

pub fn write(g: &Graph, format: Format) -> String {
    match format {
        Format::Edges => write_edges(g),
        Format::Graph6 => {
            let mut s = write_graph6(g);
            s.push('\n');
            s
        }
    }
}
