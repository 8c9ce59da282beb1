//! Exact computation of Alexander and Thurston norms for Eisenbud-Neumann
//! graph links described by splice diagrams.
//!
//! The pipeline is
//!
//! * [`diagram`]: parse, validate, splice and generate splice diagrams;
//! * [`linking`]: linking numbers and (corrected) valences read off the tree;
//! * [`laurent`] and [`alexander`]: the multivariable Alexander polynomial;
//! * [`geometry`]: Newton polytopes, zonotopes, essential coordinates and the
//!   reduced unit ball;
//! * [`norms`] and [`fibration`]: norm evaluation, fibered classes and facets.
//!
//! All arithmetic is exact. Coefficients are arbitrary precision integers,
//! cohomology classes and polytope coordinates are arbitrary precision
//! rationals.

pub mod alexander;
pub mod class;
pub mod diagram;
pub mod error;
pub mod fibration;
pub mod geometry;
pub mod graphlink;
pub mod laurent;
pub mod linking;
pub mod norms;
pub mod rational;
pub mod verify;

pub use class::CohomologyClass;
pub use diagram::{SpliceDiagram, VertexKind};
pub use error::{Error, Result};
pub use graphlink::GraphLink;
pub use laurent::LaurentPolynomial;
pub use rational::Rational;
