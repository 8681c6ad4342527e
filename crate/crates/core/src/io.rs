//! Text formats.
//!
//! Bi-adjacency:
//!
//! ```text
//! n1 n2
//! 1 0 0 0
//! ...            (n1 rows of n2 tokens, each 0 or 1)
//! ```
//!
//! Edge list: header `n1 n2`, then one `u<TAB>s` line per edge with 0-based
//! indices. Blank lines and lines starting with `#` are skipped.
//!
//! Projections are written as a header `n` followed by `i<TAB>j` (or
//! `i<TAB>j<TAB>w`) lines with `i < j`, sorted.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{BiAdjacencyMatrix, BipartiteGraph, GraphError};
use crate::projection::{UnipartiteGraph, WeightedUnipartiteGraph};

/// Comment written by the generator to tag a pendant-pair instance.
pub const PENDANT_TAG: &str = "# pendant-pair";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    BiAdjacency,
    EdgeList,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("header must be two non-negative integers, got {0:?}")]
    BadHeader(String),
    #[error("expected {expected} tokens, found {found}")]
    WrongWidth { expected: usize, found: usize },
    #[error("expected {expected} matrix rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_header(text: &str) -> Result<(usize, usize), ParseError> {
    let first = text.lines().next().ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    let toks: Vec<&str> = first.split_whitespace().collect();
    match toks.as_slice() {
        [a, b] => match (usize::from_str(a), usize::from_str(b)) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(err(1, ParseErrorKind::BadHeader(first.to_string()))),
        },
        _ => Err(err(1, ParseErrorKind::BadHeader(first.to_string()))),
    }
}

/// Lines after the header that carry data, with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().skip(1).map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty())
}

pub fn parse_biadjacency(text: &str) -> Result<BiAdjacencyMatrix, ParseError> {
    let (n1, n2) = parse_header(text)?;
    if n1 == 0 || n2 == 0 {
        return Err(err(1, GraphError::EmptyPartition { n1, n2 }.into()));
    }
    let mut cells = Vec::with_capacity(n1 * n2);
    let mut rows = 0;
    for (line, l) in data_lines(text) {
        if rows == n1 {
            return Err(err(line, ParseErrorKind::WrongRowCount { expected: n1, found: rows + 1 }));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        for (col, tok) in toks.iter().enumerate() {
            match *tok {
                "0" => cells.push(0),
                "1" => cells.push(1),
                _ if col < n2 => {
                    return Err(err(line, GraphError::MalformedMatrix { row: rows, col }.into()))
                }
                _ => {}
            }
        }
        if toks.len() != n2 {
            return Err(err(line, ParseErrorKind::WrongWidth { expected: n2, found: toks.len() }));
        }
        rows += 1;
    }
    if rows != n1 {
        let last = text.lines().count().max(1);
        return Err(err(last, ParseErrorKind::WrongRowCount { expected: n1, found: rows }));
    }
    BiAdjacencyMatrix::new(n1, n2, cells).map_err(|e| err(1, e.into()))
}

pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph, ParseError> {
    let (n1, n2) = parse_header(text)?;
    if n1 == 0 || n2 == 0 {
        return Err(err(1, GraphError::EmptyPartition { n1, n2 }.into()));
    }
    let mut pairs = Vec::new();
    for (line, l) in data_lines(text) {
        if l.trim_start().starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(line, ParseErrorKind::WrongWidth { expected: 2, found: toks.len() }));
        }
        let parse = |t: &str| usize::from_str(t).map_err(|_| err(line, ParseErrorKind::BadToken(t.into())));
        let (u, s) = (parse(toks[0])?, parse(toks[1])?);
        // Range errors carry the offending line.
        BipartiteGraph::from_edge_list(n1, n2, [(u, s)]).map_err(|e| err(line, e.into()))?;
        pairs.push((u, s));
    }
    BipartiteGraph::from_edge_list(n1, n2, pairs).map_err(|e| err(1, e.into()))
}

/// Bi-adjacency iff the header is two integers and exactly `n1` data lines
/// follow, each with `n2` tokens from `{0, 1}`. Anything else is read as an
/// edge list.
pub fn detect_format(text: &str) -> Format {
    let Ok((n1, n2)) = parse_header(text) else {
        return Format::EdgeList;
    };
    let mut rows = 0;
    for (_, l) in data_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != n2 || toks.iter().any(|t| *t != "0" && *t != "1") {
            return Format::EdgeList;
        }
        rows += 1;
    }
    if rows == n1 {
        Format::BiAdjacency
    } else {
        Format::EdgeList
    }
}

pub fn parse_graph(text: &str, format: Option<Format>) -> Result<BipartiteGraph, ParseError> {
    match format.unwrap_or_else(|| detect_format(text)) {
        Format::BiAdjacency => parse_biadjacency(text).map(|m| BipartiteGraph::from_biadjacency(&m)),
        Format::EdgeList => parse_edge_list(text),
    }
}

/// Reads a `# pendant-pair<TAB>u<TAB>s` tag comment, if present.
pub fn pendant_tag(text: &str) -> Option<(usize, usize)> {
    text.lines().find_map(|l| {
        let rest = l.strip_prefix(PENDANT_TAG)?;
        let mut it = rest.split_whitespace().map(usize::from_str);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(s)), None) => Some((u, s)),
            _ => None,
        }
    })
}

pub fn write_biadjacency(m: &BiAdjacencyMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<&str> = m.row(i).iter().map(|&c| if c == 1 { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_edge_list(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.n1(), g.n2());
    for &(u, s) in g.edges() {
        let _ = writeln!(out, "{u}\t{s}");
    }
    out
}

/// Edge list with a pendant-pair tag comment after the header.
pub fn write_tagged_edge_list(g: &BipartiteGraph, pendant: (usize, usize)) -> String {
    let body = write_edge_list(g);
    let (header, rest) = body.split_once('\n').expect("header line");
    format!("{header}\n{PENDANT_TAG}\t{}\t{}\n{rest}", pendant.0, pendant.1)
}

pub fn write_projection(p: &UnipartiteGraph) -> String {
    let mut out = format!("{}\n", p.n());
    for &(i, j) in p.edges() {
        let _ = writeln!(out, "{i}\t{j}");
    }
    out
}

pub fn write_weighted_projection(p: &WeightedUnipartiteGraph) -> String {
    let mut out = format!("{}\n", p.n());
    for &(i, j, w) in p.edges() {
        let _ = writeln!(out, "{i}\t{j}\t{w}");
    }
    out
}

/// Dense `n × n` adjacency matrix in the bi-adjacency layout, so it parses
/// back with [`parse_biadjacency`].
pub fn write_adjacency_matrix(p: &UnipartiteGraph) -> String {
    let mut out = format!("{} {}\n", p.n(), p.n());
    for row in p.to_adjacency_matrix() {
        let toks: Vec<&str> = row.iter().map(|&c| if c == 1 { "1" } else { "0" }).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a projection written by [`write_projection`].
pub fn parse_projection(text: &str) -> Result<UnipartiteGraph, ParseError> {
    let first = text.lines().next().ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    let n = usize::from_str(first.trim()).map_err(|_| err(1, ParseErrorKind::BadHeader(first.into())))?;
    let mut pairs = Vec::new();
    for (line, l) in data_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(line, ParseErrorKind::WrongWidth { expected: 2, found: toks.len() }));
        }
        let parse = |t: &str| usize::from_str(t).map_err(|_| err(line, ParseErrorKind::BadToken(t.into())));
        pairs.push((parse(toks[0])?, parse(toks[1])?));
    }
    UnipartiteGraph::from_edges(n, pairs)
        .map_err(|e| err(1, ParseErrorKind::BadToken(e.to_string())))
}
