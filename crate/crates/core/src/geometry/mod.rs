//! Exact convex geometry: polytopes as vertex lists, Minkowski sums, the
//! zonotope Newton polytope of a graph link, the width function, essential
//! coordinates and the reduced unit ball.

mod ball;
pub mod hull;
pub mod lattice;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::diagram::SpliceDiagram;
use crate::error::{Error, Result};
use crate::linking::linking_matrix;
use crate::rational::{self, Rational};

pub use ball::{centroid, facets, unit_ball, unit_ball_from, Facet, ReducedNorm, MAX_BALL_DIM};
pub use lattice::{essential_reduction, EssentialReduction};

/// A segment generator `scale · [0, direction]` of a zonotope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "rational::serialize")]
    pub scale: Rational,
    pub direction: Vec<i64>,
}

/// Convex polytope given by its vertices, sorted lexicographically.
#[derive(Debug, Clone, Serialize)]
pub struct Polytope {
    dim: usize,
    #[serde(serialize_with = "rational::serialize_vecs")]
    vertices: Vec<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Segment>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Convex hull of `points` in `R^dim`.
    pub fn from_points(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        let keep = hull::extreme_points(&points)?;
        let mut vertices: Vec<Vec<Rational>> = Vec::with_capacity(keep.len());
        let mut points: Vec<Option<Vec<Rational>>> = points.into_iter().map(Some).collect();
        for i in keep {
            vertices.push(points[i].take().unwrap());
        }
        vertices.sort();
        Ok(Polytope { dim, vertices, generators: None })
    }

    /// Trusts that `vertices` are distinct extreme points.
    pub(crate) fn from_vertices(dim: usize, mut vertices: Vec<Vec<Rational>>) -> Self {
        vertices.sort();
        Polytope { dim, vertices, generators: None }
    }

    pub fn from_integer_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        let points = points.iter().map(|p| p.iter().map(|&x| rational::int(x)).collect()).collect();
        Self::from_points(dim, points)
    }

    pub fn point(p: Vec<Rational>) -> Self {
        Polytope { dim: p.len(), vertices: vec![p], generators: Some(Vec::new()) }
    }

    /// `scale · [0, direction]`.
    pub fn segment(scale: Rational, direction: &[i64]) -> Result<Self> {
        let end: Vec<Rational> = direction.iter().map(|&x| &scale * BigInt::from(x)).collect();
        let origin = vec![Rational::zero(); direction.len()];
        let mut p = Self::from_points(direction.len(), vec![origin, end])?;
        p.generators = Some(vec![Segment { scale, direction: direction.to_vec() }]);
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn generators(&self) -> Option<&[Segment]> {
        self.generators.as_deref()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|q| q.is_integer())
    }

    pub fn translate(&self, by: &[Rational]) -> Self {
        let mut vertices: Vec<Vec<Rational>> =
            self.vertices.iter().map(|v| v.iter().zip(by).map(|(a, b)| a + b).collect()).collect();
        vertices.sort();
        Polytope { dim: self.dim, vertices, generators: self.generators.clone() }
    }

    /// `λ · P` for `λ >= 0`.
    pub fn scale(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Ok(Self::point(vec![Rational::zero(); self.dim]));
        }
        let points = self.vertices.iter().map(|v| v.iter().map(|x| x * lambda).collect()).collect();
        Self::from_points(self.dim, points)
    }

    /// Per-coordinate minimum over the vertices.
    pub fn min_corner(&self) -> Vec<Rational> {
        (0..self.dim).map(|k| self.vertices.iter().map(|v| v[k].clone()).min().unwrap_or_default()).collect()
    }

    /// Translate so every coordinate's minimum is zero.
    pub fn to_origin_orthant(&self) -> Self {
        let shift: Vec<Rational> = self.min_corner().into_iter().map(|x| -x).collect();
        self.translate(&shift)
    }

    /// Dimension of the affine hull.
    pub fn affine_dimension(&self) -> Result<usize> {
        let base = &self.vertices[0];
        let diffs: Vec<Vec<Rational>> =
            self.vertices[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        hull::rank(&diffs)
    }

    /// Applies a linear map given by an integer matrix to every vertex.
    pub fn map_linear(&self, m: &[Vec<BigInt>]) -> Result<Self> {
        let points = self
            .vertices
            .iter()
            .map(|v| {
                m.iter()
                    .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, x)| acc + x * a))
                    .collect()
            })
            .collect();
        Self::from_points(m.len(), points)
    }

    /// Drops all coordinates from `keep` on.
    pub fn project(&self, keep: usize) -> Result<Self> {
        let points = self.vertices.iter().map(|v| v[..keep].to_vec()).collect();
        Self::from_points(keep, points)
    }
}

/// Hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: q.dim });
    }
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    let mut out = Polytope::from_points(p.dim, sums)?;
    if let (Some(g), Some(h)) = (&p.generators, &q.generators) {
        out.generators = Some(g.iter().chain(h).cloned().collect());
    }
    Ok(out)
}

/// Minkowski sum of the segments `scale_i · [0, direction_i]`.
pub fn zonotope(dim: usize, segments: &[Segment]) -> Result<Polytope> {
    let mut z = Polytope::point(vec![Rational::zero(); dim]);
    for s in segments {
        if s.direction.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: s.direction.len() });
        }
        z = minkowski_sum(&z, &Polytope::segment(s.scale.clone(), &s.direction)?)?;
    }
    Ok(z)
}

/// `max <φ, v> - min <φ, v>` over the vertices of `p`.
pub fn width(p: &Polytope, phi: &[Rational]) -> Result<Rational> {
    if phi.len() != p.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: phi.len() });
    }
    let values: Vec<Rational> = p.vertices.iter().map(|v| rational::dot(phi, v)).collect();
    let max = values.iter().max().cloned().unwrap_or_default();
    let min = values.iter().min().cloned().unwrap_or_default();
    Ok(max - min)
}

/// Segments `(δ̃_i - 2) · [0, l_i]`, one per node, plus `[0, 1]` for a knot.
pub fn newton_segments(d: &SpliceDiagram) -> Result<Vec<Segment>> {
    let lm = linking_matrix(d)?;
    let mut segments: Vec<Segment> = lm
        .node_columns()
        .into_iter()
        .zip(&lm.delta_tilde_minus_2)
        .map(|(direction, scale)| Segment { scale: scale.clone(), direction })
        .collect();
    if d.r() == 1 {
        segments.push(Segment { scale: rational::int(1), direction: vec![1] });
    }
    Ok(segments)
}

/// Newton polytope of the Alexander polynomial predicted as a zonotope,
/// translated so each coordinate's minimum is zero.
pub fn zonotope_newton(d: &SpliceDiagram) -> Result<Polytope> {
    let z = zonotope(d.r(), &newton_segments(d)?)?.to_origin_orthant();
    if !z.is_integral() {
        return Err(Error::NonIntegralVertex);
    }
    Ok(z)
}

/// Essential coordinates spanned by the node linking columns.
pub fn essential_basis(d: &SpliceDiagram) -> Result<EssentialReduction> {
    let lm = linking_matrix(d)?;
    essential_reduction(&lm.node_columns(), d.r())
}
