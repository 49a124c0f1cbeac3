//! Plain-text fixture format.
//!
//! ```text
//! # comment
//! 4 u            <- vertex count, `u`ndirected or `d`irected
//! 0 1            <- edge, optional third column is the edge label
//! 1 2 5
//! label 3 2      <- vertex 3 has label 2
//! ```
//!
//! A graph is labelled iff any vertex or edge label appears.

use std::fmt::Write;

use super::{Graph, GraphBuilder, GraphError, Label, Vertex};

fn malformed(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Malformed { line, message: message.into() }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, GraphError> {
    tok.parse().map_err(|_| malformed(line, format!("bad {what} `{tok}`")))
}

pub fn parse_text_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (n, directed) = match head.as_slice() {
        [n, kind] => {
            let directed = match *kind {
                "u" => false,
                "d" => true,
                k => return Err(malformed(hline, format!("expected `u` or `d`, got `{k}`"))),
            };
            (number::<usize>(n, hline, "vertex count")?, directed)
        }
        _ => return Err(malformed(hline, "header must be `<n> <u|d>`")),
    };

    let vertex = |tok: &str, line: usize| -> Result<Vertex, GraphError> {
        let v: usize = number(tok, line, "vertex")?;
        if v >= n {
            return Err(malformed(line, format!("vertex {v} out of range (n = {n})")));
        }
        Ok(v as Vertex)
    };

    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut labelled = false;
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["label", v, l] => {
                labels.push((line, vertex(v, line)?, number::<Label>(l, line, "label")?));
                labelled = true;
            }
            [u, v] => edges.push((line, vertex(u, line)?, vertex(v, line)?, 0)),
            [u, v, l] => {
                edges.push((line, vertex(u, line)?, vertex(v, line)?, number::<Label>(l, line, "edge label")?));
                labelled = true;
            }
            _ => return Err(malformed(line, format!("cannot parse `{body}`"))),
        }
    }

    let mut b = GraphBuilder::new(n, directed, labelled);
    for (_, v, l) in labels {
        b.set_label(v, l);
    }
    for (line, u, v, l) in edges {
        if u == v {
            return Err(malformed(line, format!("self-loop on vertex {u}")));
        }
        if b.has_arc(u, v) {
            return Err(malformed(line, format!("duplicate edge {u} {v}")));
        }
        b.add_edge(u, v, l);
    }
    Ok(b.build())
}

/// Renders `g` so that [`parse_text_graph`] reproduces it.
pub fn to_text(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.n(), if g.is_directed() { "d" } else { "u" });
    if g.is_labelled() {
        for (v, l) in g.vertex_labels().iter().enumerate() {
            let _ = writeln!(s, "label {v} {l}");
        }
    }
    for u in 0..g.n() as Vertex {
        for (v, l) in g.out_arcs(u) {
            if !g.is_directed() && v < u {
                continue;
            }
            if g.is_labelled() {
                let _ = writeln!(s, "{u} {v} {l}");
            } else {
                let _ = writeln!(s, "{u} {v}");
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_edge() {
        let g = parse_text_graph("2 u\n0 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(!g.is_labelled());
    }

    #[test]
    fn no_edges() {
        let g = parse_text_graph("3 u\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_and_labels() {
        let g = parse_text_graph("# header next\n3 d # directed\n0 1 4\nlabel 2 7\n").unwrap();
        assert!(g.is_directed() && g.is_labelled());
        assert_eq!(g.arc(0, 1), Some(4));
        assert_eq!(g.arc(1, 0), None);
        assert_eq!(g.label(2), 7);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_text_graph("2 u\n0 2\n"), Err(GraphError::Malformed { line: 2, .. })));
        assert!(matches!(parse_text_graph("2 x\n"), Err(GraphError::Malformed { line: 1, .. })));
        assert!(matches!(parse_text_graph("2 u\n0 1 2 3\n"), Err(GraphError::Malformed { line: 2, .. })));
        assert!(matches!(parse_text_graph("2 u\n0 1\n1 0\n"), Err(GraphError::Malformed { line: 3, .. })));
        assert!(matches!(parse_text_graph("2 u\n1 1\n"), Err(GraphError::Malformed { line: 2, .. })));
        assert!(parse_text_graph("").is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = parse_text_graph("4 d\nlabel 0 1\n0 1 2\n2 1 0\n3 0 9\n").unwrap();
        assert_eq!(parse_text_graph(&to_text(&g)).unwrap(), g);
    }
}
