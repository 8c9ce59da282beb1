//! Cohomology classes as exact rational coordinate vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CohomologyClass(#[serde(serialize_with = "rational::serialize_vec")] Vec<Rational>);

impl CohomologyClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        CohomologyClass(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        CohomologyClass(coords.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        CohomologyClass(vec![Rational::zero(); len])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    /// Gcd of the entries of an integral class; zero for the zero class.
    pub fn divisibility(&self) -> Option<BigInt> {
        if !self.is_integral() {
            return None;
        }
        Some(self.0.iter().fold(BigInt::zero(), |g, q| g.gcd(&q.to_integer())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CohomologyClass(self.0.iter().map(|x| x * c).collect())
    }

    /// Sum of absolute values of the coordinates.
    pub fn l1(&self) -> Rational {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// `Σ_j φ_j v_j`.
    pub fn pair(&self, v: &[i64]) -> Rational {
        rational::dot_int(&self.0, v)
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found: self.len() })
        }
    }
}

impl FromStr for CohomologyClass {
    type Err = Error;

    /// Comma separated integers or `p/q` rationals, e.g. `1,0,-2` or `1/2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidClass("empty class".into()));
        }
        s.split(',')
            .map(|part| {
                rational::parse(part)
                    .ok_or_else(|| Error::InvalidClass(format!("bad coordinate `{}`", part.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(CohomologyClass)
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::format_vec(&self.0))
    }
}

impl From<Vec<Rational>> for CohomologyClass {
    fn from(v: Vec<Rational>) -> Self {
        CohomologyClass(v)
    }
}
