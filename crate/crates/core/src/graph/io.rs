//! Text edge-list format and DOT export.
//!
//! ```text
//! # comment
//! 3 2
//! 0 1
//! 1 2
//! ```
//!
//! The header gives the vertex and edge counts; each following line is one
//! edge. Serialization (`Display`) writes edges with `u < v`, sorted.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{EdgeBuilder, EdgeFault, Graph, GraphError};

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(GraphError::MissingHeader)?;
        let (n, m) = parse_pair(header).ok_or(GraphError::MalformedHeader { line: hline })?;
        let mut builder = EdgeBuilder::new(n);
        let mut found = 0;
        for (line, content) in lines {
            let (u, v) = parse_pair(content).ok_or(GraphError::MalformedEdge { line })?;
            builder.insert(u, v).map_err(|fault| match fault {
                EdgeFault::OutOfRange(vertex) => GraphError::VertexOutOfRange {
                    line,
                    vertex,
                    vertex_count: n,
                },
                EdgeFault::SelfLoop(vertex) => GraphError::SelfLoop { line, vertex },
                EdgeFault::Duplicate => GraphError::DuplicateEdge { line, u, v },
            })?;
            found += 1;
        }
        if found != m {
            return Err(GraphError::EdgeCountMismatch { expected: m, found });
        }
        Ok(builder.finish())
    }
}

impl Graph {
    pub fn parse(bytes: &[u8]) -> Result<Self, GraphError> {
        let text = std::str::from_utf8(bytes).map_err(|_| GraphError::MissingHeader)?;
        text.parse()
    }

    /// Plain structural DOT dump, no layout hints.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}
