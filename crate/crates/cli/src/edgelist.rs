//! Whitespace-separated edge lists: one `label label` pair per line,
//! whole-line `#` comments, labels mapped to dense indices in order of
//! first appearance. Duplicate edges and self-loops are rejected with the
//! offending line number.

use madkit_core::{Graph, VertexSet};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A graph together with the external label of every vertex.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Labels of a vertex set, sorted lexicographically.
    pub fn sorted_labels(&self, s: &VertexSet) -> Vec<String> {
        let mut out: Vec<String> = s.iter().map(|v| self.labels[v].clone()).collect();
        out.sort();
        out
    }
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_edge_list(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError {
                line,
                message: format!("expected two labels, found {}", tokens.len()),
            });
        }
        let mut intern = |label: &str| -> usize {
            *index.entry(label.to_string()).or_insert_with(|| {
                labels.push(label.to_string());
                labels.len() - 1
            })
        };
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        if u == v {
            return Err(ParseError {
                line,
                message: format!("self-loop at label {:?}", tokens[0]),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError {
                line,
                message: format!("duplicate edge {:?} {:?}", tokens[0], tokens[1]),
            });
        }
        edges.push((u, v));
    }
    let graph = Graph::new(labels.len(), edges).map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(LabeledGraph { graph, labels })
}

/// One line per edge in canonical order. Vertices of degree zero do not
/// appear (the pair format cannot express them).
pub fn write_edge_list(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for &(u, v) in g.graph.edges() {
        out.push_str(&g.labels[u]);
        out.push(' ');
        out.push_str(&g.labels[v]);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labels_in_first_appearance_order() {
        let g = parse_edge_list("x y\nx z\ny z\ny u\n").unwrap();
        assert_eq!(g.labels, vec!["x", "y", "z", "u"]);
        assert_eq!(g.graph.vertex_count(), 4);
        assert_eq!(g.graph.edge_count(), 4);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let g = parse_edge_list("# header\n\n  a b\n# mid\nb c\n").unwrap();
        assert_eq!(g.graph.edge_count(), 2);
    }

    #[test]
    fn empty_input_is_the_empty_graph() {
        let g = parse_edge_list("").unwrap();
        assert_eq!(g.graph.vertex_count(), 0);
    }

    #[test]
    fn rejects_bad_lines_with_numbers() {
        let err = parse_edge_list("a b\nc\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_edge_list("a a\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_edge_list("a b\nb a\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_edge_list("a b c\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn round_trips_up_to_label_mapping() {
        let original = "x y\nx z\ny z\ny u\n";
        let g = parse_edge_list(original).unwrap();
        let printed = write_edge_list(&g);
        let reparsed = parse_edge_list(&printed).unwrap();
        assert_eq!(g.graph.vertex_count(), reparsed.graph.vertex_count());
        assert_eq!(g.graph.edge_count(), reparsed.graph.edge_count());
        // Same structure under the label bijection.
        for &(u, v) in g.graph.edges() {
            let ru = reparsed.label_index(&g.labels[u]).unwrap();
            let rv = reparsed.label_index(&g.labels[v]).unwrap();
            assert!(reparsed.graph.has_edge(ru, rv));
        }
    }
}
