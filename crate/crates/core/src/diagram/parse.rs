//! The line-based `.spl` text format.
//!
//! ```text
//! graphlink <name>
//! node <id> <+|->
//! arrow <id>
//! leaf <id>
//! edge <id1> <id2> <w1|-> <w2|->
//! ```
//!
//! `wK` is the weight at the end `idK`; `-` marks a non-node end. Everything
//! after `#` on a line is a comment.

use std::collections::HashMap;
use std::fmt;

use super::{Edge, Sign, SpliceDiagram, Vertex, VertexKind};
use crate::error::{Error, Result};

/// Parses and validates a diagram. Structural violations are errors.
pub fn parse_diagram(text: &str) -> Result<SpliceDiagram> {
    let d = parse_unvalidated(text)?;
    let report = super::validate(&d);
    if report.errors.is_empty() {
        Ok(d)
    } else {
        Err(Error::InvalidDiagram(report.errors))
    }
}

/// Parses a diagram checking syntax and references only.
pub fn parse_unvalidated(text: &str) -> Result<SpliceDiagram> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&keyword) = tokens.first() else { continue };
        let syntax = |message: &str| Error::Syntax { line, message: message.to_string() };

        if keyword != "graphlink" && name.is_none() {
            return Err(syntax("expected `graphlink <name>` header first"));
        }
        match keyword {
            "graphlink" => {
                if name.is_some() {
                    return Err(syntax("duplicate `graphlink` header"));
                }
                if tokens.len() != 2 {
                    return Err(syntax("usage: graphlink <name>"));
                }
                name = Some(tokens[1].to_string());
            }
            "node" | "arrow" | "leaf" => {
                let kind = match (keyword, tokens.len()) {
                    ("node", 3) => match tokens[2] {
                        "+" => VertexKind::Node(Sign::Plus),
                        "-" => VertexKind::Node(Sign::Minus),
                        _ => return Err(syntax("node sign must be `+` or `-`")),
                    },
                    ("node", _) => return Err(syntax("usage: node <id> <+|->")),
                    (_, 2) if keyword == "arrow" => VertexKind::Arrowhead,
                    (_, 2) => VertexKind::Leaf,
                    _ => return Err(syntax(&format!("usage: {keyword} <id>"))),
                };
                let id = tokens[1].to_string();
                if ids.contains_key(&id) {
                    return Err(Error::DuplicateId { line, id });
                }
                ids.insert(id.clone(), vertices.len());
                vertices.push(Vertex { id, kind });
            }
            "edge" => {
                if tokens.len() != 5 {
                    return Err(syntax("usage: edge <id1> <id2> <w1|-> <w2|->"));
                }
                let mut ends = [0usize; 2];
                let mut weights = [None; 2];
                for side in 0..2 {
                    let id = tokens[1 + side];
                    let v = *ids.get(id).ok_or_else(|| Error::UnknownVertex { line, id: id.to_string() })?;
                    let is_node = vertices[v].kind.is_node();
                    let w = tokens[3 + side];
                    weights[side] = match (w, is_node) {
                        ("-", false) => None,
                        ("-", true) => return Err(Error::MissingWeight { line, id: id.to_string() }),
                        (_, false) => return Err(Error::WeightOnNonNode { line, id: id.to_string() }),
                        (w, true) => Some(
                            w.parse::<u64>()
                                .map_err(|_| syntax(&format!("weight `{w}` is not a nonnegative integer")))?,
                        ),
                    };
                    ends[side] = v;
                }
                edges.push(Edge { ends, weights });
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or(Error::Syntax { line: 0, message: "empty input".to_string() })?;
    SpliceDiagram::new_unchecked(name, vertices, edges)
}

impl fmt::Display for SpliceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graphlink {}", self.name)?;
        for v in &self.vertices {
            match v.kind {
                VertexKind::Node(s) => writeln!(f, "node {} {}", v.id, s)?,
                VertexKind::Arrowhead => writeln!(f, "arrow {}", v.id)?,
                VertexKind::Leaf => writeln!(f, "leaf {}", v.id)?,
            }
        }
        for e in &self.edges {
            let w = |k: usize| e.weights[k].map_or("-".to_string(), |w| w.to_string());
            writeln!(
                f,
                "edge {} {} {} {}",
                self.vertices[e.ends[0]].id,
                self.vertices[e.ends[1]].id,
                w(0),
                w(1)
            )?;
        }
        Ok(())
    }
}
