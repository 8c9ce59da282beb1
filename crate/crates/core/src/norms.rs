//! Thurston and Alexander norms of cohomology classes, each evaluated by
//! two independent formulas that must agree.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::class::CohomologyClass;
use crate::diagram::SpliceDiagram;
use crate::error::{Error, Result};
use crate::geometry::width;
use crate::graphlink::GraphLink;
use crate::rational::{self, Rational};

/// Contribution of one node to the Thurston norm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeTerm {
    pub node: String,
    #[serde(serialize_with = "rational::serialize")]
    pub coefficient: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub pairing: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub contribution: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormReport {
    pub phi: CohomologyClass,
    pub per_node: Vec<NodeTerm>,
    #[serde(serialize_with = "rational::serialize")]
    pub thurston: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub alexander: Rational,
    pub fibered: bool,
    pub coincide: bool,
    /// `alexander - thurston`, reported for knots only.
    #[serde(serialize_with = "rational::serialize_opt", skip_serializing_if = "Option::is_none")]
    pub knot_offset: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberGenus {
    /// Gcd of the class entries.
    #[serde(serialize_with = "serialize_bigint")]
    pub divisibility: BigInt,
    #[serde(serialize_with = "rational::serialize")]
    pub genus: Rational,
    /// Whether the genus is a nonnegative integer.
    pub integral: bool,
}

fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl GraphLink {
    /// `Σ (δ_i - 2) |<φ, l_i>|` over nodes and leaves.
    pub fn thurston_all_vertices(&self, phi: &CohomologyClass) -> Result<Rational> {
        phi.check_len(self.r())?;
        let lm = self.linking();
        Ok((0..lm.columns.len())
            .map(|c| rational::int(lm.delta[c] as i64 - 2) * phi.pair(&lm.column(c)).abs())
            .sum())
    }

    /// Per-node terms `(δ̃_i - 2) |<φ, l_i>|`.
    pub fn node_terms(&self, phi: &CohomologyClass) -> Result<Vec<NodeTerm>> {
        phi.check_len(self.r())?;
        let lm = self.linking();
        Ok((0..lm.node_count)
            .map(|c| {
                let pairing = phi.pair(&lm.column(c));
                let coefficient = lm.delta_tilde_minus_2[c].clone();
                NodeTerm {
                    node: lm.columns[c].clone(),
                    contribution: &coefficient * pairing.abs(),
                    coefficient,
                    pairing,
                }
            })
            .collect())
    }

    /// Thurston norm; the node-and-leaf sum and the node-only sum are both
    /// evaluated and compared.
    pub fn thurston_norm(&self, phi: &CohomologyClass) -> Result<Rational> {
        if self.r() == 1 {
            let unit = CohomologyClass::from_ints(&[1]);
            if self.thurston_all_vertices(&unit)?.is_negative() {
                return Err(Error::Unknot);
            }
        }
        let full = self.thurston_all_vertices(phi)?;
        let nodes: Rational = self.node_terms(phi)?.into_iter().map(|t| t.contribution).sum();
        if full != nodes {
            return Err(Error::Inconsistent(format!(
                "Thurston norm sums disagree at {phi}: {} over all vertices, {} over nodes",
                rational::format(&full),
                rational::format(&nodes)
            )));
        }
        Ok(nodes)
    }

    /// Alexander norm as the width of the Newton polytope of `Δ`.
    pub fn alexander_width(&self, phi: &CohomologyClass) -> Result<Rational> {
        phi.check_len(self.r())?;
        let delta = self.alexander()?;
        if delta.is_zero() {
            return Ok(Rational::zero());
        }
        width(self.support_polytope()?, phi.coords())
    }

    /// Alexander norm as the sum of the widths of the zonotope segments.
    pub fn alexander_decomposed(&self, phi: &CohomologyClass) -> Result<Rational> {
        let mut total: Rational = self.node_terms(phi)?.into_iter().map(|t| t.contribution).sum();
        if self.r() == 1 {
            total += phi.coords()[0].abs();
        }
        Ok(total)
    }

    /// Alexander norm; the polytope width and the segment decomposition are
    /// both evaluated and compared.
    pub fn alexander_norm(&self, phi: &CohomologyClass) -> Result<Rational> {
        let w = self.alexander_width(phi)?;
        let s = self.alexander_decomposed(phi)?;
        if w != s {
            return Err(Error::Inconsistent(format!(
                "Alexander norm evaluations disagree at {phi}: width {}, decomposition {}",
                rational::format(&w),
                rational::format(&s)
            )));
        }
        Ok(w)
    }

    pub fn norm_report(&self, phi: &CohomologyClass) -> Result<NormReport> {
        let per_node = self.node_terms(phi)?;
        let thurston = self.thurston_norm(phi)?;
        let alexander = self.alexander_norm(phi)?;
        let fibered = self.is_fibered(phi)?;
        let (coincide, knot_offset) = if self.r() == 1 {
            let offset = &alexander - &thurston;
            (offset == phi.coords()[0].abs(), Some(offset))
        } else {
            (alexander == thurston, None)
        };
        Ok(NormReport { phi: phi.clone(), per_node, thurston, alexander, fibered, coincide, knot_offset })
    }

    /// Divisibility `d` of `φ` and the genus `g` of each fiber component from
    /// `‖φ‖_T = d (2g + r - 2)`.
    pub fn fiber_genus(&self, phi: &CohomologyClass) -> Result<FiberGenus> {
        let divisibility =
            phi.divisibility().ok_or_else(|| Error::InvalidClass(format!("{phi} is not integral")))?;
        if divisibility.is_zero() {
            return Err(Error::ZeroClass);
        }
        let t = self.thurston_norm(phi)?;
        let r = rational::int(self.r() as i64);
        let genus =
            (t / Rational::from_integer(divisibility.clone()) - r + rational::int(2)) / rational::int(2);
        let integral = genus.is_integer() && !genus.is_negative();
        Ok(FiberGenus { divisibility, genus, integral })
    }
}

fn link(d: &SpliceDiagram) -> Result<GraphLink> {
    GraphLink::new(d.clone())
}

pub fn thurston_norm(d: &SpliceDiagram, phi: &CohomologyClass) -> Result<Rational> {
    link(d)?.thurston_norm(phi)
}

pub fn alexander_norm(d: &SpliceDiagram, phi: &CohomologyClass) -> Result<Rational> {
    link(d)?.alexander_norm(phi)
}

pub fn norm_report(d: &SpliceDiagram, phi: &CohomologyClass) -> Result<NormReport> {
    link(d)?.norm_report(phi)
}

pub fn fiber_genus(d: &SpliceDiagram, phi: &CohomologyClass) -> Result<FiberGenus> {
    link(d)?.fiber_genus(phi)
}
