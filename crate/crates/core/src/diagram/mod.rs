//! Splice diagrams: weighted trees of arrowheads, signed nodes and leaves.
//!
//! Weights live on (node, incident edge) pairs. Arrowhead and leaf ends of an
//! edge carry no weight. The order in which arrowheads are declared fixes the
//! variables `t_1, ..., t_r` of every polynomial and cohomology class derived
//! from the diagram.

mod parse;
mod random;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub use parse::{parse_diagram, parse_unvalidated};
pub use random::{random_diagram, seifert_diagram, RandomParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Arrowhead,
    Node(Sign),
    /// Boundary vertex: an exceptional fiber of the adjacent node.
    Leaf,
}

impl VertexKind {
    pub fn is_node(self) -> bool {
        matches!(self, VertexKind::Node(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub ends: [usize; 2],
    /// `weights[k]` is the weight at `ends[k]`, present exactly for node ends.
    pub weights: [Option<u64>; 2],
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn weight_at(&self, v: usize) -> Option<u64> {
        if self.ends[0] == v {
            self.weights[0]
        } else if self.ends[1] == v {
            self.weights[1]
        } else {
            None
        }
    }
}

/// A splice diagram. Immutable once built; structural validity is checked by
/// [`SpliceDiagram::new`] and reported in full by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceDiagram {
    name: String,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    arrows: Vec<usize>,
    // (neighbour, edge index) per vertex
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl SpliceDiagram {
    /// Builds a diagram and rejects it if any structural invariant fails.
    pub fn new(name: impl Into<String>, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let d = Self::new_unchecked(name, vertices, edges)?;
        let report = validate(&d);
        if report.errors.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram(report.errors))
        }
    }

    /// Builds a diagram checking only that ids are unique, edge endpoints
    /// exist and weights sit exactly on node ends. Use [`validate`] for the
    /// structural checks.
    pub fn new_unchecked(name: impl Into<String>, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(Error::DuplicateId { line: 0, id: v.id.clone() });
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            for side in 0..2 {
                let v = e.ends[side];
                let vertex = vertices.get(v).ok_or_else(|| Error::UnknownId(format!("#{v}")))?;
                match (vertex.kind.is_node(), e.weights[side]) {
                    (true, None) => return Err(Error::MissingWeight { line: 0, id: vertex.id.clone() }),
                    (false, Some(_)) => {
                        return Err(Error::WeightOnNonNode { line: 0, id: vertex.id.clone() })
                    }
                    _ => {}
                }
            }
            adjacency[e.ends[0]].push((e.ends[1], k));
            if e.ends[0] != e.ends[1] {
                adjacency[e.ends[1]].push((e.ends[0], k));
            }
        }
        let arrows = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VertexKind::Arrowhead)
            .map(|(i, _)| i)
            .collect();
        Ok(SpliceDiagram { name: name.into(), vertices, edges, arrows, adjacency })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Arrowhead vertex indices in variable order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.indices_of(|k| k.is_node())
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.indices_of(|k| k == VertexKind::Leaf)
    }

    fn indices_of(&self, pred: impl Fn(VertexKind) -> bool) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| pred(self.vertices[i].kind)).collect()
    }

    /// Number of link components `r`.
    pub fn r(&self) -> usize {
        self.arrows.len()
    }

    pub fn p(&self) -> usize {
        self.nodes().len()
    }

    pub fn q(&self) -> usize {
        self.leaves().len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn sign(&self, v: usize) -> Option<Sign> {
        match self.vertices[v].kind {
            VertexKind::Node(s) => Some(s),
            _ => None,
        }
    }

    /// Vertices of the tree path from `from` to `to`, both included.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.vertices.len()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(w, _) in &self.adjacency[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Leaves attached to node `n`, with their weights at `n`.
    pub fn attached_leaves(&self, n: usize) -> Vec<(usize, u64)> {
        self.adjacency[n]
            .iter()
            .filter(|&&(w, _)| self.vertices[w].kind == VertexKind::Leaf)
            .map(|&(w, e)| (w, self.edges[e].weight_at(n).unwrap_or(0)))
            .collect()
    }

    /// Node adjacent to an arrowhead or leaf, with the weight it carries there.
    pub fn anchor(&self, v: usize) -> Option<(usize, u64)> {
        let &(n, e) = self.adjacency[v].first()?;
        Some((n, self.edges[e].weight_at(n)?))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Lists every structural violation (errors) and convention violation
/// (warnings) of `d`.
pub fn validate(d: &SpliceDiagram) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = d.vertices.len();

    if d.edges.len() + 1 != n || !is_connected(d) {
        report.errors.push(format!(
            "not a tree ({} vertices, {} edges{})",
            n,
            d.edges.len(),
            if is_connected(d) { "" } else { ", disconnected" }
        ));
    }
    for e in &d.edges {
        if e.ends[0] == e.ends[1] {
            report.errors.push(format!("loop at `{}`", d.vertices[e.ends[0]].id));
        }
    }
    if d.arrows.is_empty() {
        report.errors.push("no arrowheads (r = 0)".to_string());
    }
    if !d.vertices.iter().any(|v| v.kind.is_node()) {
        report.errors.push("no nodes".to_string());
    }
    for (i, v) in d.vertices.iter().enumerate() {
        let deg = d.degree(i);
        match v.kind {
            VertexKind::Node(_) if deg < 3 => {
                report.errors.push(format!("node degree < 3 at `{}` (degree {deg})", v.id))
            }
            VertexKind::Arrowhead | VertexKind::Leaf if deg != 1 => report.errors.push(format!(
                "{} `{}` has degree {deg}, expected 1",
                if v.kind == VertexKind::Leaf { "leaf" } else { "arrowhead" },
                v.id
            )),
            _ => {}
        }
    }
    for (i, v) in d.vertices.iter().enumerate() {
        if !v.kind.is_node() {
            continue;
        }
        for (leaf, w) in d.attached_leaves(i) {
            if w <= 1 {
                let what = if w == 1 { "nonsingular fiber" } else { "zero weight" };
                report.warnings.push(format!(
                    "{what}: leaf `{}` has weight {w} at node `{}`",
                    d.vertices[leaf].id, v.id
                ));
            }
        }
        let weights: Vec<u64> = d.adjacency[i].iter().filter_map(|&(_, e)| d.edges[e].weight_at(i)).collect();
        'pairs: for a in 0..weights.len() {
            for b in a + 1..weights.len() {
                if weights[a].gcd(&weights[b]) != 1 {
                    report.warnings.push(format!(
                        "weights around node `{}` are not pairwise coprime ({} and {})",
                        v.id, weights[a], weights[b]
                    ));
                    break 'pairs;
                }
            }
        }
    }
    report
}

fn is_connected(d: &SpliceDiagram) -> bool {
    let n = d.vertices.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in &d.adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Splices `d1` and `d2` along arrowheads `a1` and `a2`.
///
/// Both arrowheads are removed and their adjacent nodes are joined by a new
/// edge carrying, at each end, the weight the removed arrowhead edge had at
/// that node. Colliding ids of `d2` are renamed by appending `'`.
pub fn splice(d1: &SpliceDiagram, a1: &str, d2: &SpliceDiagram, a2: &str) -> Result<SpliceDiagram> {
    let i1 = d1.index_of(a1)?;
    let i2 = d2.index_of(a2)?;
    if d1.vertices[i1].kind != VertexKind::Arrowhead {
        return Err(Error::NotArrowhead(a1.to_string()));
    }
    if d2.vertices[i2].kind != VertexKind::Arrowhead {
        return Err(Error::NotArrowhead(a2.to_string()));
    }
    if d1.r() + d2.r() < 3 {
        return Err(Error::NoArrowheads);
    }
    let (n1, w1) = d1
        .anchor(i1)
        .ok_or_else(|| Error::InvalidDiagram(vec![format!("arrowhead `{a1}` is not attached to a node")]))?;
    let (n2, w2) = d2
        .anchor(i2)
        .ok_or_else(|| Error::InvalidDiagram(vec![format!("arrowhead `{a2}` is not attached to a node")]))?;

    let mut vertices = Vec::new();
    let mut map1 = HashMap::new();
    for (i, v) in d1.vertices.iter().enumerate() {
        if i != i1 {
            map1.insert(i, vertices.len());
            vertices.push(v.clone());
        }
    }
    let mut taken: HashSet<String> = vertices.iter().map(|v| v.id.clone()).collect();
    let mut map2 = HashMap::new();
    for (i, v) in d2.vertices.iter().enumerate() {
        if i == i2 {
            continue;
        }
        let mut id = v.id.clone();
        while taken.contains(&id) {
            id.push('\'');
        }
        taken.insert(id.clone());
        map2.insert(i, vertices.len());
        vertices.push(Vertex { id, kind: v.kind });
    }

    let mut edges = Vec::new();
    for e in &d1.edges {
        if !e.ends.contains(&i1) {
            edges.push(Edge { ends: [map1[&e.ends[0]], map1[&e.ends[1]]], weights: e.weights });
        }
    }
    edges.push(Edge { ends: [map1[&n1], map2[&n2]], weights: [Some(w1), Some(w2)] });
    for e in &d2.edges {
        if !e.ends.contains(&i2) {
            edges.push(Edge { ends: [map2[&e.ends[0]], map2[&e.ends[1]]], weights: e.weights });
        }
    }
    let name = format!("{}#{}", d1.name, d2.name);
    SpliceDiagram::new(name, vertices, edges)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn l_en_counts() {
        let d = parse_diagram(L_EN).unwrap();
        assert_eq!((d.r(), d.p(), d.q()), (3, 2, 2));
        assert_eq!(validate(&d), ValidationReport::default());
    }

    #[test]
    fn trefoil_counts() {
        let d = parse_diagram(TREFOIL).unwrap();
        assert_eq!((d.r(), d.p(), d.q()), (1, 1, 2));
    }

    #[test]
    fn degree_two_node_is_rejected() {
        let text = "graphlink bad\nnode n +\narrow a\nleaf b\nedge n a 1 -\nedge n b 2 -\n";
        let err = parse_diagram(text).unwrap_err();
        assert!(err.to_string().contains("node degree < 3"), "{err}");
    }

    #[test]
    fn leaf_weight_one_warns() {
        let text =
            "graphlink w\nnode n +\narrow a\nleaf b\nleaf c\nedge n a 1 -\nedge n b 1 -\nedge n c 3 -\n";
        let d = parse_diagram(text).unwrap();
        let report = validate(&d);
        assert!(report.errors.is_empty());
        assert!(report.warnings.iter().any(|w| w.contains("nonsingular fiber")));
    }

    #[test]
    fn non_coprime_weights_warn() {
        let text =
            "graphlink w\nnode n +\narrow a\nleaf b\nleaf c\nedge n a 1 -\nedge n b 2 -\nedge n c 4 -\n";
        let report = validate(&parse_diagram(text).unwrap());
        assert!(report.warnings.iter().any(|w| w.contains("pairwise coprime")));
    }

    #[test]
    fn disconnected_input_is_not_a_tree() {
        let text = "\
graphlink two
node n +
arrow a
leaf b
leaf c
node m -
arrow x
leaf y
leaf z
edge n a 1 -
edge n b 2 -
edge n c 3 -
edge m x 1 -
edge m y 2 -
edge m z 3 -
";
        let d = parse_unvalidated(text).unwrap();
        let report = validate(&d);
        assert!(report.errors.iter().any(|e| e.contains("not a tree")), "{report:?}");
        assert!(parse_diagram(text).is_err());
    }

    fn seifert_235_with_arrows_on_2_3() -> SpliceDiagram {
        parse_diagram(
            "graphlink left\nnode n1 +\narrow s1\narrow s2\nleaf b1\n\
             edge n1 s1 2 -\nedge n1 s2 3 -\nedge n1 b1 5 -\n",
        )
        .unwrap()
    }

    fn seifert_1132() -> SpliceDiagram {
        parse_diagram(
            "graphlink right\nnode n2 -\narrow a2\narrow a3\narrow s3\nleaf b2\n\
             edge n2 a2 1 -\nedge n2 a3 1 -\nedge n2 s3 3 -\nedge n2 b2 2 -\n",
        )
        .unwrap()
    }

    #[test]
    fn splice_reconstructs_l_en() {
        let d = splice(&seifert_235_with_arrows_on_2_3(), "s2", &seifert_1132(), "s3").unwrap();
        assert_eq!((d.r(), d.p(), d.q()), (3, 2, 2));
        let l_en = parse_diagram(L_EN).unwrap();
        let lm = crate::linking::linking_matrix(&d).unwrap();
        let lm_ref = crate::linking::linking_matrix(&l_en).unwrap();
        assert_eq!(lm.entries, lm_ref.entries);
        assert_eq!(lm.delta, lm_ref.delta);
    }

    #[test]
    fn splice_counts_are_additive() {
        let d1 = seifert_235_with_arrows_on_2_3();
        let d2 = seifert_1132();
        let d = splice(&d1, "s1", &d2, "a2").unwrap();
        assert_eq!(d.p(), d1.p() + d2.p());
        assert_eq!(d.q(), d1.q() + d2.q());
        assert_eq!(d.r(), d1.r() + d2.r() - 2);
        assert_eq!(d.edges().len(), d1.edges().len() + d2.edges().len() - 1);
        assert_eq!(d.vertices().len(), d.edges().len() + 1);
    }

    #[test]
    fn splicing_two_knots_leaves_nothing() {
        let t = parse_diagram(TREFOIL).unwrap();
        assert_eq!(splice(&t, "a", &t, "a").unwrap_err(), Error::NoArrowheads);
    }

    #[test]
    fn splice_rejects_non_arrow() {
        let t = parse_diagram(L_EN).unwrap();
        assert_eq!(splice(&t, "b1", &t, "a1").unwrap_err(), Error::NotArrowhead("b1".into()));
    }

    #[test]
    fn arrow_order_follows_declaration() {
        let d = parse_diagram(L_EN).unwrap();
        let ids: Vec<&str> = d.arrows().iter().map(|&a| d.vertex(a).id.as_str()).collect();
        assert_eq!(ids, ["a1", "a2", "a3"]);
    }
}
