//! Text formats.
//!
//! Instances: `p map <n> <m>` then `m` lines `e <u> <v> <w>` with 1-indexed
//! endpoints and `w` in {0, 1}. Solutions: `s <k> <weight>` then `k` lines
//! `f <i>` naming the `i`-th `e` line of the instance. Lines starting with
//! `c` and blank lines are ignored in both.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgeSet, Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing header line")]
    MissingHeader,
    #[error("header appears twice")]
    DuplicateHeader,
    #[error("malformed header {0:?}")]
    BadHeader(String),
    #[error("malformed line {0:?}")]
    BadLine(String),
    #[error("header declares {declared} lines, found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("vertex 0 in a 1-indexed file")]
    ZeroVertex,
    #[error("edge index {index} outside 1..={m}")]
    EdgeIndex { index: usize, m: usize },
    #[error("edge index {0} listed twice")]
    RepeatedEdge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-comment lines as (1-based line number, tokens).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, t)),
        }
    })
}

fn number(line: usize, raw: &str, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, ParseErrorKind::BadLine(raw.to_string())))
}

/// Parses an instance file. Only syntax and per-edge checks happen here;
/// the matching and connectivity conditions belong to
/// [`crate::graph::validate_map_instance`].
pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut graph: Option<(Graph, usize)> = None;
    let mut last = 0;
    for (ln, tok) in records(text) {
        last = ln;
        let raw = lines[ln - 1];
        match tok[0] {
            "p" => {
                if graph.is_some() {
                    return Err(err(ln, ParseErrorKind::DuplicateHeader));
                }
                if tok.len() != 4 || tok[1] != "map" {
                    return Err(err(ln, ParseErrorKind::BadHeader(raw.to_string())));
                }
                let bad = || err(ln, ParseErrorKind::BadHeader(raw.to_string()));
                let n: usize = tok[2].parse().map_err(|_| bad())?;
                let m: usize = tok[3].parse().map_err(|_| bad())?;
                graph = Some((Graph::new(n), m));
            }
            "e" => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(err(ln, ParseErrorKind::MissingHeader));
                };
                if tok.len() != 4 {
                    return Err(err(ln, ParseErrorKind::BadLine(raw.to_string())));
                }
                let u = number(ln, raw, tok[1])?;
                let v = number(ln, raw, tok[2])?;
                let w: u32 = tok[3]
                    .parse()
                    .map_err(|_| err(ln, ParseErrorKind::BadLine(raw.to_string())))?;
                if u == 0 || v == 0 {
                    return Err(err(ln, ParseErrorKind::ZeroVertex));
                }
                if w > 1 {
                    return Err(err(ln, GraphError::WeightOutOfRange(w).into()));
                }
                g.try_add_edge(u - 1, v - 1, w as u8)
                    .map_err(|e| err(ln, e.into()))?;
            }
            _ => return Err(err(ln, ParseErrorKind::BadLine(raw.to_string()))),
        }
    }
    let (g, m) = graph.ok_or(err(last.max(1), ParseErrorKind::MissingHeader))?;
    if g.m() != m {
        return Err(err(
            last.max(1),
            ParseErrorKind::CountMismatch {
                declared: m,
                found: g.m(),
            },
        ));
    }
    Ok(g)
}

pub fn write_instance(g: &Graph) -> String {
    let mut out = format!("p map {} {}\n", g.n(), g.m());
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.weight).expect("writing to a String");
    }
    out
}

/// A parsed solution: the edge set and the weight it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub edges: EdgeSet,
    pub declared_weight: usize,
}

pub fn parse_solution(text: &str, g: &Graph) -> Result<SolutionFile, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = EdgeSet::new(g.m());
    let mut count = 0;
    let mut last = 0;
    for (ln, tok) in records(text) {
        last = ln;
        let raw = lines[ln - 1];
        match tok[0] {
            "s" => {
                if header.is_some() {
                    return Err(err(ln, ParseErrorKind::DuplicateHeader));
                }
                let bad = || err(ln, ParseErrorKind::BadHeader(raw.to_string()));
                if tok.len() != 3 {
                    return Err(bad());
                }
                header = Some((
                    tok[1].parse().map_err(|_| bad())?,
                    tok[2].parse().map_err(|_| bad())?,
                ));
            }
            "f" => {
                if header.is_none() {
                    return Err(err(ln, ParseErrorKind::MissingHeader));
                }
                if tok.len() != 2 {
                    return Err(err(ln, ParseErrorKind::BadLine(raw.to_string())));
                }
                let i = number(ln, raw, tok[1])?;
                if i == 0 || i > g.m() {
                    return Err(err(ln, ParseErrorKind::EdgeIndex { index: i, m: g.m() }));
                }
                if !edges.insert(i - 1) {
                    return Err(err(ln, ParseErrorKind::RepeatedEdge(i)));
                }
                count += 1;
            }
            _ => return Err(err(ln, ParseErrorKind::BadLine(raw.to_string()))),
        }
    }
    let (k, weight) = header.ok_or(err(last.max(1), ParseErrorKind::MissingHeader))?;
    if k != count {
        return Err(err(
            last.max(1),
            ParseErrorKind::CountMismatch {
                declared: k,
                found: count,
            },
        ));
    }
    Ok(SolutionFile {
        edges,
        declared_weight: weight,
    })
}

pub fn write_solution(g: &Graph, f: &EdgeSet) -> String {
    let mut out = format!("s {} {}\n", f.len(), f.weight(g));
    for e in f.iter() {
        writeln!(out, "f {}", e + 1).expect("writing to a String");
    }
    out
}
