//! The multivariable Alexander polynomial of a graph link, assembled from
//! binomial factors `t^{l_i} - 1` attached to the nodes and leaves.

use serde::Serialize;

use crate::diagram::{SpliceDiagram, VertexKind};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::linking::{linking_matrix, LinkingMatrix};

/// One binomial `(t^exponent - 1)^multiplicity`. `vertex` is `None` for the
/// extra `t_1 - 1` factor of a knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub vertex: Option<String>,
    pub exponent: Vec<i64>,
    pub multiplicity: u32,
}

impl Factor {
    pub fn is_zero(&self) -> bool {
        self.exponent.iter().all(|&e| e == 0)
    }

    pub fn expand(&self) -> Result<LaurentPolynomial> {
        LaurentPolynomial::binomial(&self.exponent).pow(self.multiplicity)
    }
}

/// Numerator and denominator factors before any division.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderFactors {
    pub nvars: usize,
    pub numerator: Vec<Factor>,
    pub denominator: Vec<Factor>,
}

impl AlexanderFactors {
    fn zero_count(factors: &[Factor]) -> i64 {
        factors.iter().filter(|f| f.is_zero()).map(|f| f.multiplicity as i64).sum()
    }

    /// Zero factors upstairs minus zero factors downstairs.
    pub fn net_zero_factors(&self) -> i64 {
        Self::zero_count(&self.numerator) - Self::zero_count(&self.denominator)
    }
}

pub fn alexander_factors(d: &SpliceDiagram) -> Result<AlexanderFactors> {
    factors_from(d, &linking_matrix(d)?)
}

pub(crate) fn factors_from(d: &SpliceDiagram, lm: &LinkingMatrix) -> Result<AlexanderFactors> {
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    for (c, &v) in lm.column_vertices.iter().enumerate() {
        let delta = lm.delta[c] as i64;
        let factor = |m: i64| Factor {
            vertex: Some(lm.columns[c].clone()),
            exponent: lm.column(c),
            multiplicity: m as u32,
        };
        match delta - 2 {
            0 => {}
            m if m > 0 => numerator.push(factor(m)),
            m => denominator.push(factor(-m)),
        }
        debug_assert!(d.vertex(v).kind != VertexKind::Arrowhead);
    }
    if d.r() == 1 {
        numerator.push(Factor { vertex: None, exponent: vec![1], multiplicity: 1 });
    }
    Ok(AlexanderFactors { nvars: d.r(), numerator, denominator })
}

fn product(nvars: usize, factors: &[Factor]) -> Result<LaurentPolynomial> {
    let mut p = LaurentPolynomial::one(nvars);
    for f in factors.iter().filter(|f| !f.is_zero()) {
        p = p.mul(&f.expand()?)?;
    }
    Ok(p)
}

/// Quotient of the factor products after formal cancellation of zero
/// factors; not canonicalized.
pub fn evaluate_factors(factors: &AlexanderFactors) -> Result<LaurentPolynomial> {
    let net = factors.net_zero_factors();
    if net > 0 {
        return Ok(LaurentPolynomial::zero(factors.nvars));
    }
    if net < 0 {
        return Err(Error::NegativeZeroFactors(net));
    }
    let numerator = product(factors.nvars, &factors.numerator)?;
    let mut quotient = numerator.clone();
    let mut exact = true;
    'outer: for f in factors.denominator.iter().filter(|f| !f.is_zero()) {
        let b = LaurentPolynomial::binomial(&f.exponent);
        for _ in 0..f.multiplicity {
            match quotient.divide_exact(&b) {
                Ok(q) => quotient = q,
                Err(Error::NotDivisible) => {
                    exact = false;
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
    }
    if !exact {
        quotient = numerator.divide_exact(&product(factors.nvars, &factors.denominator)?)?;
    }
    Ok(quotient)
}

/// Canonical Alexander polynomial, or zero when the zero factors do not
/// cancel.
pub fn alexander_polynomial(d: &SpliceDiagram) -> Result<LaurentPolynomial> {
    let q = evaluate_factors(&alexander_factors(d)?)?;
    if q.is_zero() {
        Ok(q)
    } else {
        q.canonicalize()
    }
}
