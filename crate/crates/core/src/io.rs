//! Text formats.
//!
//! Graphs: a header line `n m`, then `m` lines `u v` with `u < v`, sorted.
//! Matchings: one `u-v` line per edge, sorted; consecutive matchings of a
//! family are separated by a `--` line. In both formats lines starting with
//! `#` and blank lines are ignored on input.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError};
use crate::matching::{Matching, MatchingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("matching {index}: {source}")]
    Matching { index: usize, source: MatchingError },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax {
        line,
        msg: format!("expected a nonnegative integer, found {tok:?}"),
    })
}

fn pair<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<(usize, usize), ParseError> {
    match (toks.next(), toks.next(), toks.next()) {
        (Some(a), Some(b), None) => Ok((number(a, line)?, number(b, line)?)),
        _ => Err(ParseError::Syntax {
            line,
            msg: "expected exactly two integers".into(),
        }),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = pair(header.split_whitespace(), hline)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(pair(l.split_whitespace(), line)?);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

/// Parses a family of matchings over a host of order `host_n`. Empty input
/// is an empty family.
pub fn parse_family(text: &str, host_n: usize) -> Result<Vec<Matching>, ParseError> {
    let mut groups: Vec<Vec<Edge>> = Vec::new();
    let mut current: Option<Vec<Edge>> = None;
    for (line, l) in content_lines(text) {
        if l == "--" {
            groups.push(current.take().unwrap_or_default());
            current = Some(Vec::new());
            continue;
        }
        let (a, b) = pair(l.split('-').map(str::trim), line)?;
        if a == b {
            return Err(GraphError::LoopEdge(a).into());
        }
        current.get_or_insert_with(Vec::new).push(Edge::new(a, b));
    }
    if let Some(last) = current {
        groups.push(last);
    }
    groups
        .into_iter()
        .enumerate()
        .map(|(index, edges)| Matching::new(host_n, edges).map_err(|source| ParseError::Matching { index, source }))
        .collect()
}

pub fn write_matching(m: &Matching) -> String {
    let mut out = String::new();
    for e in m.edges() {
        let _ = writeln!(out, "{}-{}", e.u(), e.v());
    }
    out
}

pub fn write_family(family: &[Matching]) -> String {
    family.iter().map(write_matching).collect::<Vec<_>>().join("--\n")
}
