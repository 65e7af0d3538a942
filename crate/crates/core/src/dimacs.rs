//! DIMACS undirected graph reader and writer.
//!
//! `p edge <n> <m>` (or `p col`), then `e <u> <v>` lines with 1-based
//! endpoints. `c` lines are comments. Duplicate and reversed edges collapse.

use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing problem line")]
    MissingHeader,
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    OutOfRange { line: usize, vertex: u64, n: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Syntax { line, msg: msg.into() }
}

pub fn parse_str(text: &str) -> Result<Graph, DimacsError> {
    read(text.as_bytes())
}

pub fn read<R: BufRead>(input: R) -> Result<Graph, DimacsError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let mut tok = line.split_ascii_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(lineno, "second problem line"));
                }
                match tok.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(syntax(lineno, format!("unsupported format {:?}", other))),
                }
                let count = tok
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| syntax(lineno, "bad vertex count"))?;
                if count > u32::MAX as usize {
                    return Err(syntax(lineno, "vertex count too large"));
                }
                n = Some(count);
            }
            Some("e") => {
                let n = n.ok_or(DimacsError::MissingHeader)?;
                let mut endpoint = || -> Result<Vertex, DimacsError> {
                    let v: u64 = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| syntax(lineno, "bad edge endpoint"))?;
                    if v == 0 || v > n as u64 {
                        return Err(DimacsError::OutOfRange { line: lineno, vertex: v, n });
                    }
                    Ok((v - 1) as Vertex)
                };
                let (u, v) = (endpoint()?, endpoint()?);
                if u == v {
                    return Err(DimacsError::SelfLoop { line: lineno, vertex: u as u64 + 1 });
                }
                edges.push((u, v));
            }
            Some(other) => return Err(syntax(lineno, format!("unknown line type {:?}", other))),
        }
    }
    let n = n.ok_or(DimacsError::MissingHeader)?;
    Ok(Graph::from_edges(n, edges).expect("endpoints validated"))
}

/// Renders `g` as DIMACS with 1-based, sorted edges.
pub fn to_string(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c4_with_comments_and_duplicates() {
        let g = parse_str("c square\np edge 4 5\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 2 1\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn round_trip() {
        let g = parse_str("p col 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(parse_str(&to_string(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_str("e 1 2\n"), Err(DimacsError::MissingHeader)));
        assert!(matches!(parse_str(""), Err(DimacsError::MissingHeader)));
        assert!(matches!(parse_str("p edge 2 1\ne 1 1\n"), Err(DimacsError::SelfLoop { .. })));
        assert!(matches!(parse_str("p edge 2 1\ne 1 3\n"), Err(DimacsError::OutOfRange { .. })));
        assert!(matches!(parse_str("p edge 2 1\ne 0 1\n"), Err(DimacsError::OutOfRange { .. })));
        assert!(matches!(parse_str("p edge x 1\n"), Err(DimacsError::Syntax { .. })));
        assert!(matches!(parse_str("p edge 2 1\nq\n"), Err(DimacsError::Syntax { .. })));
    }
}
