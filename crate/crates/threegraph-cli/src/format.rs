//! The `.h3g` line-oriented text format.
//!
//! ```text
//! # comment
//! vertices 7
//! label 1 0
//! label 5 a
//! triple 1 2 3 +
//! triple 1 4 6 -
//! edge 1 2
//! ```
//!
//! `triple` lines carry an optional orientation sign relative to the
//! canonical (sorted ascending) cyclic order, defaulting to `+`. `edge`
//! lines turn the document into a graph document for the graph-consuming
//! subcommands. Vertices are 1-based integers; `label` lines attach display
//! names used in output.

use std::collections::BTreeMap;

use threegraph::model::{Multigraph, ThreeGraph, Triple, Vertex};
use threegraph::signs::TripleOrientation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H3gDocument {
    pub n_vertices: usize,
    pub labels: BTreeMap<Vertex, String>,
    /// Triples with orientation signs, in file order.
    pub triples: Vec<(Triple, i8)>,
    /// Graph edges, in file order.
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug)]
pub enum ParseError {
    Syntax { line: usize, message: String },
    Semantic(String),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            ParseError::Semantic(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_h3g(text: &str) -> Result<H3gDocument, ParseError> {
    let mut n_vertices: Option<usize> = None;
    let mut labels = BTreeMap::new();
    let mut triples: Vec<(Triple, i8)> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        let syntax = |message: String| ParseError::Syntax {
            line: line_no,
            message,
        };
        match keyword {
            "vertices" => {
                if rest.len() != 1 {
                    return Err(syntax("expected: vertices <n>".into()));
                }
                let n: usize = rest[0]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex count {:?}", rest[0])))?;
                if n == 0 {
                    return Err(syntax("vertex count must be positive".into()));
                }
                if n_vertices.replace(n).is_some() {
                    return Err(syntax("duplicate vertices line".into()));
                }
            }
            "label" => {
                if rest.len() != 2 {
                    return Err(syntax("expected: label <vertex> <name>".into()));
                }
                let v: Vertex = rest[0]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex {:?}", rest[0])))?;
                labels.insert(v, rest[1].to_string());
            }
            "triple" => {
                if rest.len() != 3 && rest.len() != 4 {
                    return Err(syntax("expected: triple <a> <b> <c> [+|-]".into()));
                }
                let mut vs = [0 as Vertex; 3];
                for (i, s) in rest.iter().take(3).enumerate() {
                    vs[i] = s
                        .parse()
                        .map_err(|_| syntax(format!("bad vertex {s:?}")))?;
                }
                let sign = match rest.get(3) {
                    None | Some(&"+") => 1,
                    Some(&"-") => -1,
                    Some(other) => return Err(syntax(format!("bad sign {other:?}"))),
                };
                let t = Triple::new(vs[0], vs[1], vs[2])
                    .map_err(|e| syntax(e.to_string()))?;
                triples.push((t, sign));
            }
            "edge" => {
                if rest.len() != 2 {
                    return Err(syntax("expected: edge <a> <b>".into()));
                }
                let a: Vertex = rest[0]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex {:?}", rest[0])))?;
                let b: Vertex = rest[1]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex {:?}", rest[1])))?;
                if a == b {
                    return Err(syntax("edge endpoints must differ".into()));
                }
                edges.push((a.min(b), a.max(b)));
            }
            other => return Err(syntax(format!("unknown keyword {other:?}"))),
        }
    }
    let n_vertices =
        n_vertices.ok_or(ParseError::Semantic("missing vertices line".into()))?;
    // range and duplicate checks
    for (t, _) in &triples {
        for v in t.vertices() {
            if v as usize > n_vertices {
                return Err(ParseError::Semantic(format!(
                    "triple vertex {v} above vertex count {n_vertices}"
                )));
            }
        }
    }
    for &(a, b) in &edges {
        if a as usize > n_vertices || b as usize > n_vertices {
            return Err(ParseError::Semantic(format!(
                "edge {a}-{b} above vertex count {n_vertices}"
            )));
        }
    }
    for v in labels.keys() {
        if *v as usize > n_vertices {
            return Err(ParseError::Semantic(format!(
                "label for vertex {v} above vertex count {n_vertices}"
            )));
        }
    }
    {
        let mut seen = std::collections::BTreeSet::new();
        for (t, _) in &triples {
            if !seen.insert(*t) {
                return Err(ParseError::Semantic(format!("duplicate triple {t:?}")));
            }
        }
    }
    Ok(H3gDocument {
        n_vertices,
        labels,
        triples,
        edges,
    })
}

pub fn render_h3g(doc: &H3gDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("vertices {}\n", doc.n_vertices));
    for (v, name) in &doc.labels {
        out.push_str(&format!("label {v} {name}\n"));
    }
    for (t, sign) in &doc.triples {
        let [a, b, c] = t.vertices();
        let s = if *sign >= 0 { "+" } else { "-" };
        out.push_str(&format!("triple {a} {b} {c} {s}\n"));
    }
    for (a, b) in &doc.edges {
        out.push_str(&format!("edge {a} {b}\n"));
    }
    out
}

impl H3gDocument {
    pub fn from_graph(
        h: &ThreeGraph,
        omega: Option<&TripleOrientation>,
        labels: &[(Vertex, String)],
    ) -> Self {
        let triples = h
            .triples()
            .iter()
            .map(|t| {
                let sign = omega.and_then(|w| w.sign(t)).unwrap_or(1);
                (*t, sign)
            })
            .collect();
        H3gDocument {
            n_vertices: h.n_vertices(),
            labels: labels.iter().cloned().collect(),
            triples,
            edges: Vec::new(),
        }
    }

    /// The 3-graph carried by the document; an error if edge lines exist.
    pub fn to_three_graph(&self) -> Result<(ThreeGraph, TripleOrientation), ParseError> {
        if !self.edges.is_empty() {
            return Err(ParseError::Semantic(
                "document has edge lines; a 3-graph input was expected".into(),
            ));
        }
        let h = ThreeGraph::from_triples(
            self.n_vertices,
            self.triples.iter().map(|(t, _)| *t).collect(),
        )
        .map_err(|e| ParseError::Semantic(e.to_string()))?;
        let signs = self.triples.iter().map(|&(t, s)| (t, s)).collect();
        let omega = TripleOrientation::from_signs(&h, signs)
            .map_err(|e| ParseError::Semantic(e.to_string()))?;
        Ok((h, omega))
    }

    /// The graph carried by the document; an error if triple lines exist.
    pub fn to_multigraph(&self) -> Result<Multigraph, ParseError> {
        if !self.triples.is_empty() {
            return Err(ParseError::Semantic(
                "document has triple lines; a graph input was expected".into(),
            ));
        }
        let mut g = Multigraph::complete_vertex_range(self.n_vertices);
        for &(a, b) in &self.edges {
            if g.multiplicity(a, b) == 0 {
                g.add_edge(a, b);
            }
        }
        Ok(g)
    }

    pub fn display_vertex(&self, v: Vertex) -> String {
        self.labels
            .get(&v)
            .cloned()
            .unwrap_or_else(|| v.to_string())
    }

    /// A triple as a display word: concatenated single-character labels when
    /// possible, otherwise comma-separated.
    pub fn display_triple(&self, t: &Triple) -> String {
        let parts: Vec<String> = t.vertices().iter().map(|&v| self.display_vertex(v)).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    pub fn display_edge(&self, a: Vertex, b: Vertex) -> String {
        format!("{}-{}", self.display_vertex(a), self.display_vertex(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal() {
        let doc = parse_h3g("vertices 3\ntriple 1 2 3\n").unwrap();
        assert_eq!(doc.n_vertices, 3);
        assert_eq!(doc.triples.len(), 1);
        assert_eq!(doc.triples[0].1, 1);
        let (h, w) = doc.to_three_graph().unwrap();
        assert_eq!(h.triple_count(), 1);
        assert_eq!(w.sign(&Triple::new(1, 2, 3).unwrap()), Some(1));
    }

    #[test]
    fn parse_orientation_sign() {
        let doc = parse_h3g("vertices 3\ntriple 1 2 3 -\n").unwrap();
        assert_eq!(doc.triples[0].1, -1);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_h3g("vertices 3\ntriple 1 2\n").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_h3g("triple 1 2 3\n").is_err()); // missing vertices
        assert!(parse_h3g("vertices 3\ntriple 1 2 9\n").is_err()); // range
        assert!(parse_h3g("vertices 3\ntriple 1 2 2\n").is_err()); // degenerate
        assert!(parse_h3g("vertices 4\ntriple 1 2 3\ntriple 3 2 1\n").is_err()); // duplicate
    }

    #[test]
    fn round_trip() {
        let text = "vertices 5\nlabel 4 u\nlabel 5 v\ntriple 1 4 5 +\ntriple 2 4 5 -\n";
        let doc = parse_h3g(text).unwrap();
        assert_eq!(parse_h3g(&render_h3g(&doc)).unwrap(), doc);
    }

    #[test]
    fn graph_documents() {
        let doc = parse_h3g("vertices 4\nedge 1 2\nedge 3 4\n").unwrap();
        let g = doc.to_multigraph().unwrap();
        assert_eq!(g.pair_count(), 2);
        assert!(doc.to_three_graph().is_err());
    }

    #[test]
    fn display_words() {
        let doc = parse_h3g("vertices 5\nlabel 1 0\nlabel 4 a\nlabel 5 b\ntriple 1 4 5\n").unwrap();
        let t = Triple::new(1, 4, 5).unwrap();
        assert_eq!(doc.display_triple(&t), "0ab");
    }
}
