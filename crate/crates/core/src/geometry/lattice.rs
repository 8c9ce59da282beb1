//! Unimodular coordinate changes that concentrate a set of integer
//! directions in the leading coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Essential coordinates for a family of integer directions in `Z^r`.
///
/// `forward` acts on exponent vectors; after it, every direction has zeros
/// beyond coordinate `rank`. `class_map` is its inverse transpose and acts on
/// cohomology classes, so that `<φ, g> = <class_map φ, forward g>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialReduction {
    pub rank: usize,
    #[serde(serialize_with = "serialize_matrix")]
    pub forward: IntMatrix,
    #[serde(serialize_with = "serialize_matrix")]
    pub class_map: IntMatrix,
}

fn serialize_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_vec_q(m: &IntMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + b * a)).collect()
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

impl EssentialReduction {
    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    /// `forward · v`, all coordinates.
    pub fn forward_int(&self, v: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        mat_vec(&self.forward, &v)
    }

    pub fn forward_point(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec_q(&self.forward, v)
    }

    /// Essential part of `forward · v`.
    pub fn reduce_direction(&self, v: &[i64]) -> Vec<BigInt> {
        let mut out = self.forward_int(v);
        out.truncate(self.rank);
        out
    }

    /// Essential components of `class_map · φ`.
    pub fn reduce_class(&self, phi: &[Rational]) -> Vec<Rational> {
        let mut out = mat_vec_q(&self.class_map, phi);
        out.truncate(self.rank);
        out
    }

    /// A full class whose reduction is `reduced`, with all non-essential
    /// components zero.
    pub fn lift_class(&self, reduced: &[Rational]) -> Vec<Rational> {
        let mut full = reduced.to_vec();
        full.resize(self.dim(), Rational::zero());
        mat_vec_q(&transpose(&self.forward), &full)
    }

    pub fn determinant(&self) -> Rational {
        let m: Vec<Vec<Rational>> = self
            .forward
            .iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        rational_det(m)
    }
}

pub(crate) fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                let row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// Solves `c · basis = v` for `c`, assuming `v` lies in the row span of the
/// independent rows `basis`.
fn coefficients_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let b = basis.len();
    let cols = v.len();
    // augmented system: one equation per coordinate, unknowns c_0..c_{b-1}
    let mut a: Vec<Vec<Rational>> = (0..cols)
        .map(|k| {
            let mut row: Vec<Rational> = basis.iter().map(|r| r[k].clone()).collect();
            row.push(v[k].clone());
            row
        })
        .collect();
    let mut row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..b {
        let p = (row..a.len()).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, row);
        let pivot = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pr = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[b].is_zero()) {
        return None;
    }
    Some((0..b).map(|i| a[i][b].clone()).collect())
}

fn inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..].iter().map(|q| q.is_integer().then(|| q.to_integer())).collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Essential reduction for the directions `columns` (each of length `r`).
///
/// The first choice keeps the lexicographically first independent
/// coordinates unchanged and subtracts integral combinations of them from
/// the rest. If the remaining coordinates are not integral combinations, an
/// integer row reduction of Hermite type supplies the unimodular map.
pub fn essential_reduction(columns: &[Vec<i64>], r: usize) -> Result<EssentialReduction> {
    if columns.iter().all(|c| c.iter().all(|&x| x == 0)) {
        return Err(Error::AllColumnsZero);
    }
    if let Some(c) = columns.iter().find(|c| c.len() != r) {
        return Err(Error::DimensionMismatch { expected: r, found: c.len() });
    }
    // rows of the r x p matrix whose columns are the directions
    let rows: Vec<Vec<Rational>> =
        (0..r).map(|j| columns.iter().map(|c| rational::int(c[j])).collect()).collect();

    let mut pivots: Vec<usize> = Vec::new();
    for j in 0..r {
        let mut trial: Vec<Vec<Rational>> = pivots.iter().map(|&i| rows[i].clone()).collect();
        trial.push(rows[j].clone());
        if super::hull::rank(&trial)? == trial.len() {
            pivots.push(j);
        }
    }
    let rank = pivots.len();
    let basis: Vec<Vec<Rational>> = pivots.iter().map(|&i| rows[i].clone()).collect();

    let forward =
        coordinate_reduction(&rows, &pivots, &basis).map_or_else(|| hermite_reduction(columns, r), Ok)?;
    let inv = inverse(&forward).ok_or(Error::Inconsistent("coordinate change is not unimodular".into()))?;
    let reduction = EssentialReduction { rank, forward, class_map: transpose(&inv) };
    debug_assert!(reduction.determinant().abs() == Rational::one());
    Ok(reduction)
}

fn coordinate_reduction(
    rows: &[Vec<Rational>],
    pivots: &[usize],
    basis: &[Vec<Rational>],
) -> Option<IntMatrix> {
    let r = rows.len();
    let unit = |j: usize| -> Vec<BigInt> {
        (0..r).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
    };
    let mut forward: IntMatrix = pivots.iter().map(|&p| unit(p)).collect();
    for j in (0..r).filter(|j| !pivots.contains(j)) {
        let coeffs = coefficients_in_span(basis, &rows[j])?;
        let mut row = unit(j);
        for (c, &p) in coeffs.iter().zip(pivots) {
            if !c.is_integer() {
                return None;
            }
            row[p] -= c.to_integer();
        }
        forward.push(row);
    }
    Some(forward)
}

/// Unimodular `U` with `U · G` in row echelon form, `G` having the given
/// directions as columns; the zero rows of `U · G` come last.
fn hermite_reduction(columns: &[Vec<i64>], r: usize) -> Result<IntMatrix> {
    let p = columns.len();
    let mut m: IntMatrix = (0..r).map(|j| columns.iter().map(|c| BigInt::from(c[j])).collect()).collect();
    let mut u: IntMatrix = (0..r)
        .map(|i| (0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut row = 0;
    for col in 0..p {
        if row == r {
            break;
        }
        while let Some(best) =
            (row..r).filter(|&i| !m[i][col].is_zero()).min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
        {
            m.swap(best, row);
            u.swap(best, row);
            let mut cleared = true;
            for i in row + 1..r {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[row][col]);
                let (mr, ur) = (m[row].clone(), u[row].clone());
                for (x, y) in m[i].iter_mut().zip(&mr) {
                    *x -= &q * y;
                }
                for (x, y) in u[i].iter_mut().zip(&ur) {
                    *x -= &q * y;
                }
                cleared &= m[i][col].is_zero();
            }
            if cleared {
                row += 1;
                break;
            }
        }
    }
    Ok(u)
}
