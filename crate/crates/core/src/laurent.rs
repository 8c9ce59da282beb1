//! Sparse multivariate Laurent polynomials with arbitrary precision integer
//! coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic, so the leading term of a polynomial is its last
//! entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::Polytope;

/// Exponent vector ordered graded-lexicographically: by total degree, then
/// lexicographically with `t1` most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    fn degree(&self) -> i128 {
        self.0.iter().map(|&e| e as i128).sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_exponents(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("exponent"))).collect()
}

fn sub_exponents(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow("exponent"))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exponent: Vec<i64>, coefficient: BigInt) -> Self {
        let mut p = Self::zero(exponent.len());
        if !coefficient.is_zero() {
            p.terms.insert(Monomial(exponent), coefficient);
        }
        p
    }

    /// Sums the given terms; repeated exponents are merged and zero
    /// coefficients dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Result<Self> {
        let mut acc: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch { left: nvars, right: e.len() });
            }
            *acc.entry(e).or_default() += c;
        }
        Ok(Self::collect(nvars, acc))
    }

    fn collect(nvars: usize, acc: HashMap<Vec<i64>, BigInt>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect();
        LaurentPolynomial { nvars, terms }
    }

    /// `t^a - 1`; the zero polynomial when `a = 0`.
    pub fn binomial(a: &[i64]) -> Self {
        let mut p = Self::zero(a.len());
        if a.iter().all(|&e| e == 0) {
            return p;
        }
        p.terms.insert(Monomial(a.to_vec()), BigInt::one());
        p.terms.insert(Monomial(vec![0; a.len()]), -BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, exponent: &[i64]) -> BigInt {
        self.terms.get(&Monomial(exponent.to_vec())).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().map(|m| m.0.clone()).collect()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_default();
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(m);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut acc: HashMap<Vec<i64>, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(add_exponents(&ma.0, &mb.0)?).or_default() += ca * cb;
            }
        }
        Ok(Self::collect(self.nvars, acc))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one(self.nvars);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((Monomial(add_exponents(&m.0, shift)?), c.clone())))
            .collect::<Result<_>>()?;
        Ok(LaurentPolynomial { nvars: self.nvars, terms })
    }

    /// Per-variable minimum exponent. `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.0.clone();
        Some(it.fold(first, |acc, m| acc.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Exact quotient `self / g`.
    ///
    /// Both operands are translated to nonnegative exponents with `g` not
    /// divisible by any variable, divided by grlex long division, and the
    /// quotient translated back.
    pub fn divide_exact(&self, g: &Self) -> Result<Self> {
        self.check_vars(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let shift_f = self.min_exponents().unwrap_or_default();
        let shift_g = g.min_exponents().unwrap_or_default();
        let f0 = self.shift(&negate(&shift_f)?)?;
        let g0 = g.shift(&negate(&shift_g)?)?;

        let (lead_m, lead_c) = g0.terms.last_key_value().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = f0.terms;
        let mut quotient: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lead_m.divides(&m) {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let qm = sub_exponents(&m.0, &lead_m.0)?;
            for (gm, gc) in g0.terms.iter().rev().skip(1) {
                let e = Monomial(add_exponents(&gm.0, &qm)?);
                let entry = rem.entry(e.clone()).or_default();
                *entry -= &qc * gc;
                if entry.is_zero() {
                    rem.remove(&e);
                }
            }
            quotient.insert(Monomial(qm), qc);
        }
        let q = LaurentPolynomial { nvars: self.nvars, terms: quotient };
        q.shift(&sub_exponents(&shift_f, &shift_g)?)
    }

    /// Unit normal form: exponents translated so each variable's minimum is
    /// zero, sign chosen so the grlex-smallest term is positive.
    pub fn canonicalize(&self) -> Result<Self> {
        let min = self.min_exponents().ok_or(Error::ZeroPolynomial)?;
        let shifted = self.shift(&negate(&min)?)?;
        let negative = shifted.terms.first_key_value().is_some_and(|(_, c)| c.is_negative());
        Ok(if negative { shifted.neg() } else { shifted })
    }

    /// Convex hull of the exponent vectors.
    pub fn support_polytope(&self) -> Result<Polytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Polytope::from_integer_points(self.nvars, &self.support())
    }

    pub fn to_json_terms(&self) -> Vec<(Vec<i64>, String)> {
        self.terms.iter().map(|(m, c)| (m.0.clone(), c.to_string())).collect()
    }
}

fn negate(v: &[i64]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.checked_neg().ok_or(Error::Overflow("exponent"))).collect()
}

/// Writes terms from the grlex-largest down, as `c*t1^a*t2^b`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => vars.push(format!("t{}", i + 1)),
                    e => vars.push(format!("t{}^{}", i + 1, e)),
                }
            }
            let abs = c.abs();
            let body = match (vars.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => vars.join("*"),
                (false, false) => format!("{}*{}", abs, vars.join("*")),
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
            .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(1, &[(&[1], 1), (&[0], -1)]);
        let b = poly(1, &[(&[1], 1), (&[0], 1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(1, &[(&[2], 1), (&[0], -1)]));
    }

    #[test]
    fn multiplicative_identity() {
        let f = poly(2, &[(&[3, -1], 4), (&[0, 2], -7)]);
        assert_eq!(f.mul(&LaurentPolynomial::one(2)).unwrap(), f);
    }

    #[test]
    fn geometric_series_telescopes() {
        let u = [3, 2];
        let series =
            LaurentPolynomial::from_terms(2, (0..5).map(|k| (vec![3 * k, 2 * k], BigInt::one()))).unwrap();
        let prod = LaurentPolynomial::binomial(&u).mul(&series).unwrap();
        assert_eq!(prod, LaurentPolynomial::binomial(&[15, 10]));
    }

    #[test]
    fn binomials() {
        assert_eq!(LaurentPolynomial::binomial(&[1]), poly(1, &[(&[1], 1), (&[0], -1)]));
        let b = LaurentPolynomial::binomial(&[15, -20, -20]);
        assert_eq!(b.len(), 2);
        assert_eq!(b.coefficient(&[15, -20, -20]), BigInt::one());
        assert_eq!(b.coefficient(&[0, 0, 0]), -BigInt::one());
        assert!(LaurentPolynomial::binomial(&[0, 0]).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = LaurentPolynomial::binomial(&[6]);
        let g = LaurentPolynomial::binomial(&[2]);
        assert_eq!(f.divide_exact(&g).unwrap(), poly(1, &[(&[4], 1), (&[2], 1), (&[0], 1)]));
        assert_eq!(f.divide_exact(&LaurentPolynomial::one(1)).unwrap(), f);
    }

    #[test]
    fn inexact_division_fails() {
        let f = LaurentPolynomial::binomial(&[2]);
        let g = poly(1, &[(&[1], 1), (&[0], -2)]);
        assert_eq!(f.divide_exact(&g).unwrap_err(), Error::NotDivisible);
        assert_eq!(f.divide_exact(&LaurentPolynomial::zero(1)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn division_with_negative_exponents() {
        // (t^-10 - 1) / (t^-5 - 1) = t^-5 + 1
        let f = LaurentPolynomial::binomial(&[-10]);
        let g = LaurentPolynomial::binomial(&[-5]);
        assert_eq!(f.divide_exact(&g).unwrap(), poly(1, &[(&[-5], 1), (&[0], 1)]));
    }

    #[test]
    fn canonical_form() {
        let f = poly(1, &[(&[1], -1), (&[0], 1), (&[-1], -1)]);
        assert_eq!(f.canonicalize().unwrap(), poly(1, &[(&[2], 1), (&[1], -1), (&[0], 1)]));
        assert_eq!(LaurentPolynomial::zero(2).canonicalize().unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn display_format() {
        let f = poly(1, &[(&[2], 1), (&[1], -1), (&[0], 1)]);
        assert_eq!(f.to_string(), "t1^2 - t1 + 1");
        let g = poly(2, &[(&[3, -1], 4), (&[0, 0], -7), (&[1, 1], -1)]);
        assert_eq!(g.to_string(), "4*t1^3*t2^-1 - t1*t2 - 7");
        assert_eq!(LaurentPolynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn support_polytope_of_trefoil_polynomial() {
        let f = poly(1, &[(&[2], 1), (&[1], -1), (&[0], 1)]);
        let p = f.support_polytope().unwrap();
        assert_eq!(p.vertices(), &[vec![crate::rational::int(0)], vec![crate::rational::int(2)]]);
        let c = poly(2, &[(&[0, 0], 5)]);
        assert_eq!(c.support_polytope().unwrap().vertices().len(), 1);
        assert!(LaurentPolynomial::zero(1).support_polytope().is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((prop::collection::vec(-3i64..4, nvars), -4i64..5), 0..6).prop_map(
            move |terms| {
                LaurentPolynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
                    .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(2), g in arb_poly(2), h in arb_poly(2)) {
            let fg_h = f.mul(&g).unwrap().mul(&h).unwrap();
            let f_gh = f.mul(&g.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(fg_h, f_gh);
            let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
            let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        }

        #[test]
        fn division_inverts_multiplication(f in arb_poly(3), g in arb_poly(3)) {
            prop_assume!(!g.is_zero());
            let fg = f.mul(&g).unwrap();
            prop_assert_eq!(fg.divide_exact(&g).unwrap(), f);
        }

        #[test]
        fn canonicalize_is_idempotent(f in arb_poly(3)) {
            prop_assume!(!f.is_zero());
            let c = f.canonicalize().unwrap();
            prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
            prop_assert_eq!(c.clone(), f.neg().shift(&[2, -1, 5]).unwrap().canonicalize().unwrap());
        }

        #[test]
        fn newton_polytope_of_product_is_minkowski_sum(f in arb_poly(3), g in arb_poly(3)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let lhs = f.mul(&g).unwrap().support_polytope().unwrap();
            let rhs = crate::geometry::minkowski_sum(
                &f.support_polytope().unwrap(),
                &g.support_polytope().unwrap(),
            ).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
