//! Line-oriented text formats for graphs and solutions.
//!
//! Graph files hold `c <comment>`, `v <id> <color-token>` and `e <u> <v>`
//! records; a vertex must be declared before an edge references it.
//! Solution files hold one `keep <u> <v>` record per kept edge.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{ColoredGraph, Edge, EdgeSubset};
use crate::error::{parse_err, Error, Result};

fn parse_id(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

fn expect_end<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match tokens.next() {
        Some(extra) => Err(parse_err(line, format!("unexpected token `{extra}`"))),
        None => Ok(()),
    }
}

/// Parses a graph file. Color tokens are interned in order of first use.
pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut interned: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "v" => {
                let id = parse_id(tokens.next(), line, "vertex id")?;
                let token = tokens
                    .next()
                    .ok_or_else(|| parse_err(line, "missing color token"))?;
                expect_end(tokens, line)?;
                if id >= colors.len() {
                    colors.resize(id + 1, None);
                }
                if colors[id].is_some() {
                    return Err(Error::DuplicateVertex(id));
                }
                let next = names.len();
                let color = *interned.entry(token.to_string()).or_insert_with(|| {
                    names.push(token.to_string());
                    next
                });
                colors[id] = Some(color);
            }
            "e" => {
                let u = parse_id(tokens.next(), line, "vertex id")?;
                let v = parse_id(tokens.next(), line, "vertex id")?;
                expect_end(tokens, line)?;
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                for w in [u, v] {
                    if colors.get(w).copied().flatten().is_none() {
                        return Err(parse_err(
                            line,
                            format!("vertex {w} used before its declaration"),
                        ));
                    }
                }
                edges.push((u, v));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }

    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(Error::MissingColor(v)))
        .collect::<Result<Vec<_>>>()?;
    ColoredGraph::with_color_names(colors, names, edges)
}

/// Serializes a graph: vertices in id order, then edges in sorted order.
pub fn write_graph(graph: &ColoredGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "c vertices {} edges {} colors {}",
        graph.vertex_count(),
        graph.edge_count(),
        graph.color_count()
    );
    for v in 0..graph.vertex_count() {
        let _ = writeln!(out, "v {} {}", v, graph.color_name(graph.color(v)));
    }
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Parses a solution file against its parent graph.
pub fn parse_solution<'g>(graph: &'g ColoredGraph, text: &str) -> Result<EdgeSubset<'g>> {
    let mut sol = EdgeSubset::empty(graph);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("keep") => {
                let u = parse_id(tokens.next(), line, "vertex id")?;
                let v = parse_id(tokens.next(), line, "vertex id")?;
                expect_end(tokens, line)?;
                if !sol.insert(u, v)? {
                    return Err(parse_err(line, format!("edge ({u}, {v}) listed twice")));
                }
            }
            Some(other) => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(sol)
}

pub fn write_solution(sol: &EdgeSubset<'_>) -> String {
    let mut out = String::new();
    for (u, v) in sol.kept_edges() {
        let _ = writeln!(out, "keep {u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_graph() {
        let g = parse_graph("v 0 a\nv 1 b\ne 0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.color_count(), 2);
        assert_eq!(g.color_name(g.color(1)), "b");
    }

    #[test]
    fn parses_g1() {
        let g = parse_graph("c path b-a-b\nv 0 a\nv 1 b\nv 2 b\ne 0 1\ne 0 2\n").unwrap();
        assert_eq!(g.colors(), &[0, 1, 1]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_graph("v 0 a\ne 0 0"),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            parse_graph("v 0 a\nv 1 a\ne 0 1\ne 1 0"),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            parse_graph("v 0 a\nv 2 a"),
            Err(Error::MissingColor(1))
        ));
        assert!(matches!(
            parse_graph("v 0 a\nv 0 b"),
            Err(Error::DuplicateVertex(0))
        ));
        assert!(matches!(
            parse_graph("v 0 a\ne 0 1\nv 1 b"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("v x a"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_graph("v 0 a b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("q 1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph_text_round_trip() {
        let text = "v 0 red\nv 1 blue\nv 2 red\ne 1 2\ne 0 1\n";
        let g = parse_graph(text).unwrap();
        let again = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn solution_files() {
        let g = parse_graph("v 0 a\nv 1 b\nv 2 b\ne 0 1\ne 0 2").unwrap();
        let sol = parse_solution(&g, "keep 1 0\n").unwrap();
        assert_eq!(write_solution(&sol), "keep 0 1\n");
        assert!(matches!(
            parse_solution(&g, "keep 1 2"),
            Err(Error::NotAnEdge(1, 2))
        ));
        assert!(parse_solution(&g, "keep 0 1\nkeep 1 0").is_err());
    }
}
