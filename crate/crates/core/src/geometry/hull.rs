//! Exact extreme-point computation for finite rational point sets in any
//! dimension.
//!
//! Points are scaled to a common integer lattice and projected injectively
//! onto coordinates spanning their affine hull. Hulls of dimension two and up
//! are built by beneath-beyond insertion with simplicial facets. Coplanar
//! insertions can leave non-extreme points on those facets, so the final
//! vertex set keeps only points whose active facet normals have full rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

const OVERFLOW: Error = Error::Overflow("convex hull");

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(OVERFLOW)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(OVERFLOW)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(OVERFLOW)
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| add(acc, mul(*x, *y)?))
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Incremental row echelon basis over the integers.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    /// Reduces `v` against the basis; returns the remainder.
    fn reduce(&self, mut v: Vec<i128>) -> Result<Vec<i128>> {
        for (pc, row) in &self.rows {
            if v[*pc] != 0 {
                let (a, b) = (row[*pc], v[*pc]);
                for (x, r) in v.iter_mut().zip(row) {
                    *x = sub(mul(*x, a)?, mul(*r, b)?)?;
                }
                primitive(&mut v);
            }
        }
        Ok(v)
    }

    /// Adds `v` if independent; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: Vec<i128>) -> Result<bool> {
        let v = self.reduce(v)?;
        match v.iter().position(|x| *x != 0) {
            Some(pc) => {
                self.rows.push((pc, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(pc, _)| *pc).collect()
    }
}

/// Fraction-free determinant.
fn det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = sub(mul(m[i][j], m[k][k])?, mul(m[i][k], m[k][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Primitive integer normal to the hyperplane through `k` points in `Z^k`.
fn facet_normal(points: &[&[i128]]) -> Result<Vec<i128>> {
    let k = points[0].len();
    let base = points[0];
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| sub(*a, *b)).collect())
        .collect::<Result<_>>()?;
    let mut n = Vec::with_capacity(k);
    for j in 0..k {
        let minor: Vec<Vec<i128>> = diffs
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
            .collect();
        let d = det(minor)?;
        n.push(if j % 2 == 0 { d } else { -d });
    }
    primitive(&mut n);
    Ok(n)
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

/// Indices (into `points`) of the extreme points of their convex hull, in
/// increasing order. Duplicate points are reported once, by first index.
pub fn extreme_points(points: &[Vec<Rational>]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let dim = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| points[*a] == points[*b]);

    let lattice = to_lattice(points, &order)?;
    let base = &lattice[0];
    let mut echelon = Echelon::default();
    for p in &lattice[1..] {
        let diff = p.iter().zip(base).map(|(a, b)| sub(*a, *b)).collect::<Result<Vec<_>>>()?;
        echelon.insert(diff)?;
        if echelon.rank() == dim {
            break;
        }
    }
    let mut pivots = echelon.pivots();
    pivots.sort_unstable();
    let projected: Vec<Vec<i128>> = lattice.iter().map(|p| pivots.iter().map(|&c| p[c]).collect()).collect();

    let local = match pivots.len() {
        0 => vec![0],
        1 => {
            let min = (0..projected.len()).min_by_key(|&i| projected[i][0]).unwrap();
            let max = (0..projected.len()).max_by_key(|&i| projected[i][0]).unwrap();
            vec![min, max]
        }
        _ => full_dimensional_hull(&projected)?,
    };
    let mut out: Vec<usize> = local.into_iter().map(|i| order[i]).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn to_lattice(points: &[Vec<Rational>], order: &[usize]) -> Result<Vec<Vec<i128>>> {
    let lcm = order.iter().flat_map(|&i| points[i].iter()).fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
    order
        .iter()
        .map(|&i| {
            points[i]
                .iter()
                .map(|q| {
                    let scaled: BigInt = q.numer() * (&lcm / q.denom());
                    scaled.to_i128().ok_or(OVERFLOW)
                })
                .collect()
        })
        .collect()
}

/// Beneath-beyond hull of points spanning `Z^k`, `k >= 2`.
fn full_dimensional_hull(pts: &[Vec<i128>]) -> Result<Vec<usize>> {
    // far points first, so that most later points fall inside the hull
    let n = pts.len() as i128;
    let mut sum = vec![0i128; pts[0].len()];
    for p in pts {
        for (s, x) in sum.iter_mut().zip(p) {
            *s = add(*s, *x)?;
        }
    }
    let mut far = Vec::with_capacity(pts.len());
    for p in pts {
        let mut d = 0i128;
        for (x, s) in p.iter().zip(&sum) {
            let c = sub(mul(*x, n)?, *s)?;
            d = add(d, mul(c, c)?)?;
        }
        far.push(d);
    }
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| far[b].cmp(&far[a]).then(a.cmp(&b)));
    let sorted: Vec<Vec<i128>> = order.iter().map(|&i| pts[i].clone()).collect();
    let mut out: Vec<usize> = hull_in_order(&sorted)?.into_iter().map(|i| order[i]).collect();
    out.sort_unstable();
    Ok(out)
}

fn hull_in_order(pts: &[Vec<i128>]) -> Result<Vec<usize>> {
    let k = pts[0].len();
    let mut simplex = vec![0usize];
    let mut echelon = Echelon::default();
    for (i, p) in pts.iter().enumerate().skip(1) {
        let diff = p.iter().zip(&pts[0]).map(|(a, b)| sub(*a, *b)).collect::<Result<Vec<_>>>()?;
        if echelon.insert(diff)? {
            simplex.push(i);
            if simplex.len() == k + 1 {
                break;
            }
        }
    }
    debug_assert_eq!(simplex.len(), k + 1);

    // (k+1) times an interior point of the initial simplex
    let mut centre = vec![0i128; k];
    for &i in &simplex {
        for (c, x) in centre.iter_mut().zip(&pts[i]) {
            *c = add(*c, *x)?;
        }
    }
    let scale = (k + 1) as i128;
    let make = |verts: Vec<usize>| -> Result<Facet> {
        let refs: Vec<&[i128]> = verts.iter().map(|&i| pts[i].as_slice()).collect();
        let mut normal = facet_normal(&refs)?;
        let mut offset = dot(&normal, &pts[verts[0]])?;
        if dot(&normal, &centre)? > mul(offset, scale)? {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        Ok(Facet { verts, normal, offset })
    };

    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=k {
        let verts: Vec<usize> =
            simplex.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
        facets.push(make(verts)?);
    }

    let in_simplex: std::collections::HashSet<usize> = simplex.iter().copied().collect();
    for (i, p) in pts.iter().enumerate() {
        if in_simplex.contains(&i) {
            continue;
        }
        let mut visible = Vec::new();
        for (f, facet) in facets.iter().enumerate() {
            if dot(&facet.normal, p)? > facet.offset {
                visible.push(f);
            }
        }
        if visible.is_empty() {
            continue;
        }
        let mut ridges: std::collections::HashMap<Vec<usize>, usize> = Default::default();
        for &f in &visible {
            let verts = &facets[f].verts;
            for skip in 0..verts.len() {
                let mut ridge: Vec<usize> =
                    verts.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        let mut keep = vec![true; facets.len()];
        for &f in &visible {
            keep[f] = false;
        }
        let mut next: Vec<Facet> = facets.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect();
        let mut horizon: Vec<Vec<usize>> =
            ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut ridge in horizon {
            ridge.push(i);
            next.push(make(ridge)?);
        }
        facets = next;
    }

    let mut candidates: Vec<usize> = facets.iter().flat_map(|f| f.verts.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut vertices = Vec::new();
    for v in candidates {
        let mut active = Echelon::default();
        for f in &facets {
            if dot(&f.normal, &pts[v])? == f.offset {
                active.insert(f.normal.clone())?;
                if active.rank() == k {
                    break;
                }
            }
        }
        if active.rank() == k {
            vertices.push(v);
        }
    }
    Ok(vertices)
}

/// Rank of a set of rational vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let order: Vec<usize> = (0..vectors.len()).collect();
    let lattice = to_lattice(vectors, &order)?;
    let mut e = Echelon::default();
    for v in lattice {
        if v.iter().any(|x| !x.is_zero()) {
            e.insert(v)?;
        }
    }
    Ok(e.rank())
}
