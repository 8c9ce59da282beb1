//! Fibered classes, characteristic hyperplanes and the fibered-facet check
//! on the reduced unit ball.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::class::CohomologyClass;
use crate::diagram::SpliceDiagram;
use crate::error::{Error, Result};
use crate::geometry::{centroid, facets, Polytope};
use crate::graphlink::GraphLink;
use crate::rational::{self, Rational};

/// `H_i = {φ : <φ, l_i> = 0}` for one node `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub node: String,
    pub normal: Vec<i64>,
    /// Normal in essential coordinates.
    #[serde(serialize_with = "rational::serialize_bigints")]
    pub reduced: Vec<BigInt>,
    /// `reduced` divided by its content, first nonzero entry positive.
    #[serde(serialize_with = "rational::serialize_bigints")]
    pub primitive: Vec<BigInt>,
}

impl Hyperplane {
    pub fn contains(&self, phi: &CohomologyClass) -> bool {
        phi.pair(&self.normal).is_zero()
    }

    /// `<φ̃, reduced>` for a reduced class.
    pub fn reduced_value(&self, reduced_phi: &[Rational]) -> Rational {
        self.reduced.iter().zip(reduced_phi).fold(Rational::zero(), |acc, (n, x)| acc + x * n)
    }
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::from(1),
        _ => BigInt::from(1),
    };
    v.iter().map(|x| x / &g * &sign).collect()
}

impl GraphLink {
    /// Whether `φ` pairs nontrivially with every node column. The same test
    /// over nodes and leaves is evaluated as well and must agree.
    pub fn is_fibered(&self, phi: &CohomologyClass) -> Result<bool> {
        phi.check_len(self.r())?;
        let lm = self.linking();
        let nonzero = |c: usize| !phi.pair(&lm.column(c)).is_zero();
        let nodes = (0..lm.node_count).all(nonzero);
        let all = (0..lm.columns.len()).all(nonzero);
        if nodes != all {
            return Err(Error::Inconsistent(format!(
                "fibration criteria disagree at {phi}: nodes only {nodes}, nodes and leaves {all}"
            )));
        }
        Ok(nodes)
    }

    pub fn characteristic_hyperplanes(&self) -> Result<Vec<Hyperplane>> {
        let lm = self.linking();
        let reduction = self.reduction()?;
        Ok((0..lm.node_count)
            .map(|c| {
                let normal = lm.column(c);
                let reduced = reduction.reduce_direction(&normal);
                Hyperplane { node: lm.columns[c].clone(), primitive: primitive(&reduced), normal, reduced }
            })
            .collect())
    }

    pub fn classify_facets(&self) -> Result<FacetReport> {
        let ball = self.unit_ball()?.clone();
        let hyperplanes = self.characteristic_hyperplanes()?;
        let reduction = self.reduction()?;
        let mut out = Vec::new();
        for f in facets(&ball)? {
            let sample = centroid(&ball, &f.vertices);
            let lifted = CohomologyClass::new(reduction.lift_class(&sample));
            let fibered = self.is_fibered(&lifted)?;
            let crossing = hyperplanes
                .iter()
                .filter(|h| meets_interior(&ball, &f.vertices, h))
                .map(|h| h.node.clone())
                .collect();
            out.push(FacetClass {
                normal: f.normal,
                vertices: f.vertices,
                sample,
                lifted,
                fibered,
                crossing,
            });
        }
        let vertex_hyperplanes = ball
            .vertices()
            .iter()
            .map(|v| {
                hyperplanes.iter().filter(|h| h.reduced_value(v).is_zero()).map(|h| h.node.clone()).collect()
            })
            .collect();
        Ok(FacetReport { ball, facets: out, vertex_hyperplanes })
    }
}

/// A hyperplane through the origin meets the relative interior of a facet
/// exactly when the facet's vertices lie strictly on both sides of it, or
/// all on it.
fn meets_interior(ball: &Polytope, vertices: &[usize], h: &Hyperplane) -> bool {
    let values: Vec<Rational> = vertices.iter().map(|&i| h.reduced_value(&ball.vertices()[i])).collect();
    let pos = values.iter().any(|x| x.is_positive());
    let neg = values.iter().any(|x| x.is_negative());
    (pos && neg) || values.iter().all(Zero::is_zero)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetClass {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub normal: Vec<Rational>,
    /// Indices into the ball's vertex list.
    pub vertices: Vec<usize>,
    /// Vertex centroid, in reduced coordinates.
    #[serde(serialize_with = "rational::serialize_vec")]
    pub sample: Vec<Rational>,
    /// `sample` lifted to a full class.
    pub lifted: CohomologyClass,
    pub fibered: bool,
    /// Nodes whose reduced hyperplane passes through the facet's interior.
    pub crossing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub ball: Polytope,
    pub facets: Vec<FacetClass>,
    /// For each ball vertex, the nodes whose reduced hyperplane contains it.
    pub vertex_hyperplanes: Vec<Vec<String>>,
}

impl FacetReport {
    pub fn all_fibered(&self) -> bool {
        self.facets.iter().all(|f| f.fibered)
    }

    pub fn interior_crossings(&self) -> usize {
        self.facets.iter().map(|f| f.crossing.len()).sum()
    }
}

fn link(d: &SpliceDiagram) -> Result<GraphLink> {
    GraphLink::new(d.clone())
}

pub fn is_fibered(d: &SpliceDiagram, phi: &CohomologyClass) -> Result<bool> {
    link(d)?.is_fibered(phi)
}

pub fn characteristic_hyperplanes(d: &SpliceDiagram) -> Result<Vec<Hyperplane>> {
    link(d)?.characteristic_hyperplanes()
}

pub fn classify_facets(d: &SpliceDiagram) -> Result<FacetReport> {
    link(d)?.classify_facets()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use crate::diagram::{parse_diagram, random_diagram, RandomParams};
    use crate::rational::int;

    fn phi(v: &[i64]) -> CohomologyClass {
        CohomologyClass::from_ints(v)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn l_en_fibered_classes() {
        let d = parse_diagram(L_EN).unwrap();
        assert!(is_fibered(&d, &phi(&[1, 0, 0])).unwrap());
        assert!(!is_fibered(&d, &phi(&[4, 3, 0])).unwrap());
        assert!(!is_fibered(&d, &phi(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn l_en_hyperplanes() {
        let d = parse_diagram(L_EN).unwrap();
        let hs = characteristic_hyperplanes(&d).unwrap();
        assert_eq!(hs.len(), 2);
        assert_eq!(hs[0].normal, vec![15, -20, -20]);
        assert_eq!(hs[0].primitive, big(&[3, -4]));
        assert_eq!(hs[1].normal, vec![-10, -6, -6]);
        assert_eq!(hs[1].primitive, big(&[5, 3]));
        assert!(hs[0].contains(&phi(&[4, 3, 0])));
    }

    #[test]
    fn l_en_facets() {
        let d = parse_diagram(L_EN).unwrap();
        let report = classify_facets(&d).unwrap();
        assert_eq!(report.facets.len(), 4);
        assert!(report.all_fibered());
        assert_eq!(report.interior_crossings(), 0);
        assert!(report.vertex_hyperplanes.iter().all(|h| h.len() == 1));
    }

    #[test]
    fn trefoil_facets() {
        let d = parse_diagram(TREFOIL).unwrap();
        let hs = characteristic_hyperplanes(&d).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].primitive, big(&[1]));
        let report = classify_facets(&d).unwrap();
        assert_eq!(report.facets.len(), 2);
        assert!(report.all_fibered());
        assert_eq!(report.interior_crossings(), 0);
        assert_eq!(report.facets[1].sample, vec![int(1)]);
    }

    #[test]
    fn hyperplane_membership_matches_node_terms() {
        for seed in 0..40 {
            let g = GraphLink::new(random_diagram(seed, RandomParams::default()).unwrap()).unwrap();
            let hs = g.characteristic_hyperplanes().unwrap();
            assert_eq!(hs.len(), g.diagram().p());
            let r = g.r();
            if r < 2 {
                continue;
            }
            for h in &hs {
                // orthogonal to the normal in the first two coordinates
                let mut v = vec![0; r];
                v[0] = h.normal[1];
                v[1] = -h.normal[0];
                let c = phi(&v);
                let terms = g.node_terms(&c).unwrap();
                let term = terms.iter().find(|t| t.node == h.node).unwrap();
                assert_eq!(h.contains(&c), term.contribution.is_zero());
                assert!(h.contains(&c));
            }
        }
    }
}
