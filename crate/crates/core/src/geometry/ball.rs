//! The reduced unit ball `{φ̃ : Σ c_i |<w̃_i, φ̃>| <= 1}` and its facets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lattice::{rational_det, EssentialReduction};
use super::{hull, Polytope};
use crate::diagram::SpliceDiagram;
use crate::error::{Error, Result};
use crate::linking::linking_matrix;
use crate::rational::{self, Rational};

/// Largest reduced dimension for which ball vertices are enumerated.
pub const MAX_BALL_DIM: usize = 3;

/// A norm `Σ c_i |<w_i, x>|` on reduced coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedNorm {
    pub dim: usize,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub coefficients: Vec<Rational>,
    #[serde(serialize_with = "serialize_directions")]
    pub directions: Vec<Vec<BigInt>>,
}

fn serialize_directions<S: serde::Serializer>(
    v: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl ReducedNorm {
    /// The Thurston norm of `d` in the essential coordinates of `reduction`.
    pub fn from_diagram(d: &SpliceDiagram, reduction: &EssentialReduction) -> Result<Self> {
        let lm = linking_matrix(d)?;
        let directions = lm.node_columns().iter().map(|c| reduction.reduce_direction(c)).collect();
        Ok(ReducedNorm { dim: reduction.rank, coefficients: lm.delta_tilde_minus_2.clone(), directions })
    }

    pub fn pairing(&self, i: usize, x: &[Rational]) -> Rational {
        self.directions[i].iter().zip(x).fold(Rational::zero(), |acc, (w, v)| acc + v * w)
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok((0..self.directions.len()).map(|i| &self.coefficients[i] * self.pairing(i, x).abs()).sum())
    }
}

fn to_q(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Generalized cross product: a vector orthogonal to the `n - 1` rows.
fn cross(rows: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    (0..n)
        .map(|k| {
            let minor: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = rational_det(minor);
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Vertices of the unit ball of `norm`. With all coefficients positive, the
/// vertices are exactly the points of norm one on the lines cut out by
/// `dim - 1` independent kernels `<w_i, x> = 0`.
pub fn unit_ball_from(norm: &ReducedNorm) -> Result<Polytope> {
    let n = norm.dim;
    if n > MAX_BALL_DIM {
        return Err(Error::EvaluationOnly(n));
    }
    if norm.coefficients.iter().any(|c| !c.is_positive()) {
        return Err(Error::Inconsistent("reduced norm has a nonpositive coefficient".into()));
    }
    let dirs: Vec<Vec<Rational>> = norm.directions.iter().map(|d| to_q(d)).collect();
    if hull::rank(&dirs)? != n {
        return Err(Error::Inconsistent("reduced norm is degenerate".into()));
    }
    let mut candidates = Vec::new();
    for subset in combinations(dirs.len(), n - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| dirs[i].clone()).collect();
        if hull::rank(&rows)? != n - 1 {
            continue;
        }
        let line = cross(&rows, n);
        let value = norm.eval(&line)?;
        if value.is_zero() {
            return Err(Error::Inconsistent("reduced norm vanishes on a nonzero class".into()));
        }
        let v: Vec<Rational> = line.iter().map(|x| x / &value).collect();
        candidates.push(v.iter().map(|x| -x).collect());
        candidates.push(v);
    }
    candidates.sort();
    candidates.dedup();
    Ok(Polytope::from_vertices(n, candidates))
}

/// Reduced Thurston-norm unit ball of `d`, in the coordinates of
/// [`essential_basis`](super::essential_basis).
pub fn unit_ball(d: &SpliceDiagram) -> Result<Polytope> {
    let reduction = super::essential_basis(d)?;
    unit_ball_from(&ReducedNorm::from_diagram(d, &reduction)?)
}

/// A facet `{x in P : <normal, x> = 1}` of a polytope containing the origin
/// in its interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub normal: Vec<Rational>,
    pub vertices: Vec<usize>,
}

fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        b.swap(p, col);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
                let bc = b[col].clone();
                b[r] -= f * bc;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Facets of a full-dimensional polytope with the origin in its interior,
/// found by testing every affinely spanning vertex subset.
pub fn facets(p: &Polytope) -> Result<Vec<Facet>> {
    let n = p.dim();
    let verts = p.vertices();
    let mut out: Vec<Facet> = Vec::new();
    for subset in combinations(verts.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| verts[i].clone()).collect();
        let Some(normal) = solve(a, vec![Rational::one(); n]) else { continue };
        let values: Vec<Rational> = verts.iter().map(|v| rational::dot(&normal, v)).collect();
        if values.iter().any(|x| x > &Rational::one()) {
            continue;
        }
        if out.iter().any(|f| f.normal == normal) {
            continue;
        }
        let on: Vec<usize> = (0..verts.len()).filter(|&i| values[i].is_one()).collect();
        out.push(Facet { normal, vertices: on });
    }
    out.sort_by(|a, b| a.normal.cmp(&b.normal));
    Ok(out)
}

/// Exact centroid of the listed vertices.
pub fn centroid(p: &Polytope, vertices: &[usize]) -> Vec<Rational> {
    let k = Rational::from_integer(BigInt::from(vertices.len()));
    (0..p.dim())
        .map(|c| vertices.iter().map(|&i| p.vertices()[i][c].clone()).sum::<Rational>() / &k)
        .collect()
}
