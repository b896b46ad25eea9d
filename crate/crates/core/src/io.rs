//! Text formats: edge list and DIMACS for reading and writing graphs, DOT
//! for visualization, and the `vertex color` line format for colorings.

use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// Header line with the vertex count, then one `u v` pair per line.
    /// `#` starts a comment.
    EdgeList,
    /// DIMACS `.col`: `c` comments, one `p edge n m` line, `e u v` lines
    /// with 1-based vertex ids.
    Dimacs,
    /// Graphviz output, optionally with color classes as fill colors.
    /// Write-only.
    Dot,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge_list" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            "dot" => Ok(GraphFormat::Dot),
            _ => Err(Error::InvalidParameter(format!(
                "unknown graph format {s:?} (expected edge_list, dimacs or dot)"
            ))),
        }
    }
}

impl std::fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphFormat::EdgeList => "edge_list",
            GraphFormat::Dimacs => "dimacs",
            GraphFormat::Dot => "dot",
        })
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} must be a non-negative integer, got {token:?}"),
        )
    })
}

fn add_file_edge(g: &mut Graph, u: usize, v: usize, line: usize) -> Result<()> {
    g.add_edge(u, v).map_err(|e| match e {
        Error::SelfLoop { vertex } => parse_err(line, format!("self-loop on vertex {vertex}")),
        Error::VertexOutOfRange {
            vertex,
            vertex_count,
        } => parse_err(
            line,
            format!("vertex {vertex} out of range (graph has {vertex_count} vertices)"),
        ),
        other => other,
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match g {
            None => {
                let n = parse_usize(content, line, "vertex count header")?;
                g = Some(Graph::new(n));
            }
            Some(ref mut graph) => {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                if tokens.len() != 2 {
                    return Err(parse_err(line, format!("expected `u v`, got {content:?}")));
                }
                let u = parse_usize(tokens[0], line, "vertex id")?;
                let v = parse_usize(tokens[1], line, "vertex id")?;
                add_file_edge(graph, u, v, line)?;
            }
        }
    }
    g.ok_or_else(|| parse_err(1, "missing vertex count header"))
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "c" => {}
            "p" => {
                if g.is_some() {
                    return Err(parse_err(line, "repeated problem line"));
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(parse_err(
                        line,
                        format!("expected `p edge n m`, got {content:?}"),
                    ));
                }
                let n = parse_usize(tokens[2], line, "vertex count")?;
                g = Some(Graph::new(n));
            }
            "e" => {
                let graph = g
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before the problem line"))?;
                if tokens.len() != 3 {
                    return Err(parse_err(
                        line,
                        format!("expected `e u v`, got {content:?}"),
                    ));
                }
                let u = parse_usize(tokens[1], line, "vertex id")?;
                let v = parse_usize(tokens[2], line, "vertex id")?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line, "DIMACS vertex ids are 1-based"));
                }
                add_file_edge(graph, u - 1, v - 1, line)?;
            }
            other => {
                return Err(parse_err(line, format!("unknown line type {other:?}")));
            }
        }
    }
    g.ok_or_else(|| parse_err(1, "missing problem line"))
}

pub fn parse_graph(format: GraphFormat, text: &str) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::Dot => Err(Error::InvalidParameter(
            "dot is an output-only format".to_string(),
        )),
    }
}

/// Guesses edge list vs DIMACS from the first significant line.
pub fn detect_format(text: &str) -> Result<GraphFormat> {
    for raw in text.lines() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let first = trimmed.split_whitespace().next().unwrap();
        return match first {
            "c" | "p" | "e" => Ok(GraphFormat::Dimacs),
            _ if first.chars().all(|ch| ch.is_ascii_digit()) => Ok(GraphFormat::EdgeList),
            _ => Err(parse_err(
                1,
                format!("unrecognized graph input starting with {first:?}"),
            )),
        };
    }
    Err(parse_err(1, "empty graph input"))
}

const DOT_PALETTE: [&str; 12] = [
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854", "#ffd92f", "#e5c494", "#b3b3b3",
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
];

pub fn serialize_graph(format: GraphFormat, g: &Graph, coloring: Option<&Coloring>) -> String {
    let mut out = String::new();
    match format {
        GraphFormat::EdgeList => {
            let _ = writeln!(out, "{}", g.vertex_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        GraphFormat::Dimacs => {
            let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
        GraphFormat::Dot => {
            let _ = writeln!(out, "graph g {{");
            for v in g.vertices() {
                match coloring {
                    Some(c) if c.len() == g.vertex_count() => {
                        let fill = DOT_PALETTE[(c.color(v) - 1) % DOT_PALETTE.len()];
                        let _ = writeln!(
                            out,
                            "  {v} [label=\"{v}:{}\", style=filled, fillcolor=\"{fill}\"];",
                            c.color(v)
                        );
                    }
                    _ => {
                        let _ = writeln!(out, "  {v};");
                    }
                }
            }
            for (u, v) in g.edges() {
                let _ = writeln!(out, "  {u} -- {v};");
            }
            let _ = writeln!(out, "}}");
        }
    }
    out
}

/// Parses `vertex color` lines; every vertex of the graph must appear
/// exactly once. `#` starts a comment.
pub fn parse_coloring_lines(text: &str, vertex_count: usize) -> Result<Coloring> {
    let mut colors = vec![0usize; vertex_count];
    let mut seen = vec![false; vertex_count];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected `vertex color`, got {content:?}"),
            ));
        }
        let v = parse_usize(tokens[0], line, "vertex id")?;
        let c = parse_usize(tokens[1], line, "color")?;
        if v >= vertex_count {
            return Err(parse_err(
                line,
                format!("vertex {v} out of range (graph has {vertex_count} vertices)"),
            ));
        }
        if seen[v] {
            return Err(parse_err(line, format!("vertex {v} colored twice")));
        }
        if c == 0 {
            return Err(parse_err(
                line,
                format!("vertex {v} has color 0; colors start at 1"),
            ));
        }
        seen[v] = true;
        colors[v] = c;
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::MalformedColoring(format!("vertex {v} has no color")));
    }
    Coloring::new(colors)
}

pub fn serialize_coloring_lines(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, &color) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "{v} {color}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, random_graph, FamilySpec};

    #[test]
    fn edge_list_round_trip() {
        let g = build_family(FamilySpec::Cycle { n: 5 }).unwrap();
        let text = serialize_graph(GraphFormat::EdgeList, &g, None);
        assert_eq!(text, "5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_accepts_comments_and_dedups() {
        let text = "# a triangle\n3\n0 1\n1 2  # repeated below\n1 2\n0 2\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edge_list_rejects_self_loop_with_line_number() {
        let text = "3\n0 1\n2 2\n";
        match parse_edge_list(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("self-loop"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_rejects_out_of_range_and_garbage() {
        assert!(matches!(
            parse_edge_list("2\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2\n0 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let g = build_family(FamilySpec::Complete { n: 4 }).unwrap();
        let text = serialize_graph(GraphFormat::Dimacs, &g, None);
        assert!(text.starts_with("p edge 4 6\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_rejects_malformed_input() {
        assert!(matches!(
            parse_dimacs("e 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\nq 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_dimacs("c only comments\n").is_err());
    }

    #[test]
    fn round_trips_on_random_corpus() {
        for seed in 0..100u64 {
            let n = 1 + (seed as usize) % 12;
            let g = random_graph(n, 0.4, seed).unwrap();
            let el = serialize_graph(GraphFormat::EdgeList, &g, None);
            assert_eq!(parse_edge_list(&el).unwrap(), g, "edge list, seed {seed}");
            let dm = serialize_graph(GraphFormat::Dimacs, &g, None);
            assert_eq!(parse_dimacs(&dm).unwrap(), g, "dimacs, seed {seed}");
        }
    }

    #[test]
    fn detect_format_heuristics() {
        assert_eq!(detect_format("3\n0 1\n").unwrap(), GraphFormat::EdgeList);
        assert_eq!(
            detect_format("c x\np edge 2 1\ne 1 2\n").unwrap(),
            GraphFormat::Dimacs
        );
        assert_eq!(
            detect_format("# comment first\n4\n").unwrap(),
            GraphFormat::EdgeList
        );
        assert!(detect_format("").is_err());
        assert!(detect_format("graph g {}\n").is_err());
    }

    #[test]
    fn dot_output_includes_fill_colors() {
        let g = build_family(FamilySpec::Path { n: 3 }).unwrap();
        let c = Coloring::new(vec![1, 2, 1]).unwrap();
        let dot = serialize_graph(GraphFormat::Dot, &g, Some(&c));
        assert!(dot.contains("0 [label=\"0:1\""));
        assert!(dot.contains("fillcolor=\"#66c2a5\""));
        assert!(dot.contains("1 -- 2;"));
        let plain = serialize_graph(GraphFormat::Dot, &g, None);
        assert!(plain.contains("  1;\n"));
    }

    #[test]
    fn coloring_lines_round_trip() {
        let c = Coloring::new(vec![2, 1, 3]).unwrap();
        let text = serialize_coloring_lines(&c);
        assert_eq!(text, "0 2\n1 1\n2 3\n");
        assert_eq!(parse_coloring_lines(&text, 3).unwrap(), c);
    }

    #[test]
    fn coloring_lines_validation() {
        assert!(parse_coloring_lines("0 1\n", 2).is_err()); // vertex 1 missing
        assert!(matches!(
            parse_coloring_lines("0 1\n0 2\n", 1),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_coloring_lines("0 0\n", 1),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_coloring_lines("5 1\n", 1),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
