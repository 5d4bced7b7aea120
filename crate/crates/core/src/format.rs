//! Line-oriented instance format.
//!
//! ```text
//! c comment
//! p wed <n> <m>
//! e <i> <j>        (1-based endpoints)
//! w <i> <W|inf>    (unlisted vertices weigh 1)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::instance::Instance;
use crate::weight::{Weight, WeightMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: second header line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: `{kind}` line before the `p wed` header")]
    MissingHeader { line: usize, kind: char },
    #[error("no `p wed` header found")]
    NoHeader,
    #[error("line {line}: malformed line: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: negative weight {value}")]
    NegativeWeight { line: usize, value: String },
    #[error("line {line}: invalid weight `{value}`")]
    InvalidWeight { line: usize, value: String },
    #[error("line {line}: second weight for vertex {vertex}")]
    DuplicateWeight { line: usize, vertex: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
}

impl ParseError {
    /// 1-based line the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::DuplicateHeader { line }
            | ParseError::MissingHeader { line, .. }
            | ParseError::Malformed { line, .. }
            | ParseError::VertexOutOfRange { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::DuplicateEdge { line, .. }
            | ParseError::NegativeWeight { line, .. }
            | ParseError::InvalidWeight { line, .. }
            | ParseError::DuplicateWeight { line, .. } => Some(*line),
            ParseError::NoHeader | ParseError::EdgeCount { .. } => None,
        }
    }
}

struct Header {
    n: usize,
    m: usize,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<Header> = None;
    let mut graph = Graph::empty(0);
    let mut weights = WeightMap::unit(0);
    let mut weighted: Vec<bool> = Vec::new();
    let mut edges = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let h = parse_header(line, tok)?;
                graph = Graph::empty(h.n);
                weights = WeightMap::unit(h.n);
                weighted = vec![false; h.n];
                header = Some(h);
            }
            "e" | "w" => {
                let Some(h) = header.as_ref() else {
                    return Err(ParseError::MissingHeader {
                        line,
                        kind: kind.chars().next().unwrap_or('?'),
                    });
                };
                let fields: Vec<&str> = tok.collect();
                if fields.len() != 2 {
                    return Err(ParseError::Malformed {
                        line,
                        detail: format!("`{kind}` expects 2 fields, got {}", fields.len()),
                    });
                }
                let u = parse_vertex(line, fields[0], h.n)?;
                if kind == "e" {
                    let v = parse_vertex(line, fields[1], h.n)?;
                    if u == v {
                        return Err(ParseError::SelfLoop {
                            line,
                            vertex: u + 1,
                        });
                    }
                    if graph.has_edge(u, v) {
                        return Err(ParseError::DuplicateEdge {
                            line,
                            u: u + 1,
                            v: v + 1,
                        });
                    }
                    graph.add_edge(u, v).expect("endpoints validated");
                    edges += 1;
                } else {
                    if weighted[u] {
                        return Err(ParseError::DuplicateWeight {
                            line,
                            vertex: u + 1,
                        });
                    }
                    weighted[u] = true;
                    weights.set(u, parse_weight(line, fields[1])?);
                }
            }
            other => {
                return Err(ParseError::Malformed {
                    line,
                    detail: format!("unknown line type `{other}`"),
                })
            }
        }
    }
    let h = header.ok_or(ParseError::NoHeader)?;
    if edges != h.m {
        return Err(ParseError::EdgeCount {
            declared: h.m,
            found: edges,
        });
    }
    Ok(Instance::new(graph, weights).expect("weights sized from header"))
}

fn parse_header<'a>(
    line: usize,
    mut tok: impl Iterator<Item = &'a str>,
) -> Result<Header, ParseError> {
    let bad = |detail: &str| ParseError::MalformedHeader {
        line,
        detail: detail.to_string(),
    };
    if tok.next() != Some("wed") {
        return Err(bad("expected `p wed <n> <m>`"));
    }
    let n = tok
        .next()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| bad("vertex count is not a nonnegative integer"))?;
    let m = tok
        .next()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| bad("edge count is not a nonnegative integer"))?;
    if tok.next().is_some() {
        return Err(bad("trailing fields"));
    }
    Ok(Header { n, m })
}

fn parse_vertex(line: usize, s: &str, n: usize) -> Result<usize, ParseError> {
    let v: i64 = s.parse().map_err(|_| ParseError::Malformed {
        line,
        detail: format!("`{s}` is not a vertex id"),
    })?;
    if v < 1 || v as u64 > n as u64 {
        return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
    }
    Ok(v as usize - 1)
}

fn parse_weight(line: usize, s: &str) -> Result<Weight, ParseError> {
    if s.starts_with('-') && s[1..].parse::<u64>().is_ok() {
        return Err(ParseError::NegativeWeight {
            line,
            value: s.to_string(),
        });
    }
    s.parse().map_err(|_| ParseError::InvalidWeight {
        line,
        value: s.to_string(),
    })
}

/// Writes `inst` in the instance format, listing every edge and every weight.
pub fn write_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    writeln!(out, "p wed {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for v in 0..g.n() {
        writeln!(out, "w {} {}", v + 1, inst.weights().get(v)).unwrap();
    }
    out
}
