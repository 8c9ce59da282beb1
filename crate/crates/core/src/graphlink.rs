//! A splice diagram bundled with lazily computed invariants.

use std::sync::OnceLock;

use crate::alexander::{evaluate_factors, factors_from, AlexanderFactors};
use crate::diagram::SpliceDiagram;
use crate::error::Result;
use crate::geometry::{
    essential_reduction, unit_ball_from, zonotope_newton, EssentialReduction, Polytope, ReducedNorm,
};
use crate::laurent::LaurentPolynomial;
use crate::linking::{linking_matrix, LinkingMatrix};

/// Caches the linking matrix, Alexander polynomial, polytopes and essential
/// coordinates of one diagram. Safe to share between threads.
#[derive(Debug)]
pub struct GraphLink {
    diagram: SpliceDiagram,
    linking: LinkingMatrix,
    factors: AlexanderFactors,
    alexander: OnceLock<Result<LaurentPolynomial>>,
    support: OnceLock<Result<Polytope>>,
    zonotope: OnceLock<Result<Polytope>>,
    reduction: OnceLock<Result<EssentialReduction>>,
    ball: OnceLock<Result<Polytope>>,
}

fn cached<T: Clone>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl GraphLink {
    pub fn new(diagram: SpliceDiagram) -> Result<Self> {
        let linking = linking_matrix(&diagram)?;
        let factors = factors_from(&diagram, &linking)?;
        Ok(GraphLink {
            diagram,
            linking,
            factors,
            alexander: OnceLock::new(),
            support: OnceLock::new(),
            zonotope: OnceLock::new(),
            reduction: OnceLock::new(),
            ball: OnceLock::new(),
        })
    }

    pub fn diagram(&self) -> &SpliceDiagram {
        &self.diagram
    }

    pub fn linking(&self) -> &LinkingMatrix {
        &self.linking
    }

    pub fn r(&self) -> usize {
        self.diagram.r()
    }

    pub fn factors(&self) -> &AlexanderFactors {
        &self.factors
    }

    /// Canonical Alexander polynomial (zero if the zero factors do not cancel).
    pub fn alexander(&self) -> Result<&LaurentPolynomial> {
        cached(&self.alexander, || {
            let q = evaluate_factors(&self.factors)?;
            if q.is_zero() {
                Ok(q)
            } else {
                q.canonicalize()
            }
        })
    }

    /// Newton polytope of the expanded Alexander polynomial.
    pub fn support_polytope(&self) -> Result<&Polytope> {
        cached(&self.support, || self.alexander()?.support_polytope())
    }

    /// Newton polytope predicted as a zonotope.
    pub fn zonotope(&self) -> Result<&Polytope> {
        cached(&self.zonotope, || zonotope_newton(&self.diagram))
    }

    pub fn reduction(&self) -> Result<&EssentialReduction> {
        cached(&self.reduction, || essential_reduction(&self.linking.node_columns(), self.r()))
    }

    pub fn reduced_norm(&self) -> Result<ReducedNorm> {
        ReducedNorm::from_diagram(&self.diagram, self.reduction()?)
    }

    /// Reduced Thurston-norm unit ball.
    pub fn unit_ball(&self) -> Result<&Polytope> {
        cached(&self.ball, || unit_ball_from(&self.reduced_norm()?))
    }
}

impl From<GraphLink> for SpliceDiagram {
    fn from(g: GraphLink) -> Self {
        g.diagram
    }
}
