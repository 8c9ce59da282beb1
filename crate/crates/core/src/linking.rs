//! Linking numbers `l_ji` between arrowheads and the other vertices, read off
//! the tree as a product of node signs and off-path weights.

use num_bigint::BigInt;
use serde::Serialize;

use crate::diagram::{SpliceDiagram, VertexKind};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Linking number between arrowhead `j` and node or leaf `i`: the product of
/// the signs of all nodes on the tree path from `j` to `i`, endpoints
/// included, times the product of the weights those nodes carry on edges
/// off the path.
pub fn linking_number(d: &SpliceDiagram, j: &str, i: &str) -> Result<i64> {
    let jv = d.index_of(j)?;
    let iv = d.index_of(i)?;
    if d.vertex(jv).kind != VertexKind::Arrowhead {
        return Err(Error::NotArrowhead(j.to_string()));
    }
    if d.vertex(iv).kind == VertexKind::Arrowhead {
        return Err(Error::ArrowheadTarget(i.to_string()));
    }
    path_product(d, jv, iv)
}

pub(crate) fn path_product(d: &SpliceDiagram, from: usize, to: usize) -> Result<i64> {
    let path = d.path(from, to);
    let mut value: i64 = 1;
    for (k, &v) in path.iter().enumerate() {
        let Some(sign) = d.sign(v) else { continue };
        value *= sign.value();
        let prev = k.checked_sub(1).map(|k| path[k]);
        let next = path.get(k + 1).copied();
        for &(w, e) in d.neighbours(v) {
            if Some(w) == prev || Some(w) == next {
                continue;
            }
            let weight = d.edges()[e].weight_at(v).unwrap_or(0);
            let weight = i64::try_from(weight).map_err(|_| Error::Overflow("linking number"))?;
            value = value.checked_mul(weight).ok_or(Error::Overflow("linking number"))?;
        }
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    /// Arrowhead ids, one per row, in variable order.
    pub rows: Vec<String>,
    /// Node ids followed by leaf ids.
    pub columns: Vec<String>,
    #[serde(skip)]
    pub column_vertices: Vec<usize>,
    pub node_count: usize,
    /// `entries[j][c]` is the linking number of arrowhead `j` with column `c`.
    pub entries: Vec<Vec<i64>>,
    /// Valence of each column vertex.
    pub delta: Vec<usize>,
    /// `δ̃ - 2 = δ - 2 - Σ 1/α` over the leaves attached to each node.
    #[serde(serialize_with = "rational::serialize_vec")]
    pub delta_tilde_minus_2: Vec<Rational>,
}

impl LinkingMatrix {
    pub fn column(&self, c: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[c]).collect()
    }

    /// The `l`-columns of the nodes, in node order.
    pub fn node_columns(&self) -> Vec<Vec<i64>> {
        (0..self.node_count).map(|c| self.column(c)).collect()
    }

    pub fn leaf_columns(&self) -> Vec<Vec<i64>> {
        (self.node_count..self.columns.len()).map(|c| self.column(c)).collect()
    }

    pub fn column_of(&self, vertex: usize) -> Option<usize> {
        self.column_vertices.iter().position(|&v| v == vertex)
    }
}

pub fn linking_matrix(d: &SpliceDiagram) -> Result<LinkingMatrix> {
    let nodes = d.nodes();
    let leaves = d.leaves();
    let column_vertices: Vec<usize> = nodes.iter().chain(&leaves).copied().collect();
    let mut entries = Vec::with_capacity(d.r());
    for &j in d.arrows() {
        let row = column_vertices.iter().map(|&i| path_product(d, j, i)).collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let delta = column_vertices.iter().map(|&v| d.degree(v)).collect();
    let delta_tilde_minus_2 = nodes
        .iter()
        .map(|&n| {
            let mut c = rational::int(d.degree(n) as i64 - 2);
            for (_, alpha) in d.attached_leaves(n) {
                // a zero-weight leaf has no finite correction; leave the term out
                if alpha != 0 {
                    c -= Rational::new(BigInt::from(1), BigInt::from(alpha));
                }
            }
            c
        })
        .collect();
    let id = |v: &usize| d.vertex(*v).id.clone();
    Ok(LinkingMatrix {
        rows: d.arrows().iter().map(id).collect(),
        columns: column_vertices.iter().map(id).collect(),
        column_vertices,
        node_count: nodes.len(),
        entries,
        delta,
        delta_tilde_minus_2,
    })
}
