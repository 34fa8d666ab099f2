//! Faces, complexes and the basic simplicial operations (join, link, skeleton,
//! boundary, facet complement, …) on labeled vertex sets.

mod face;
mod fvector;
mod ops;
mod structure;

pub use face::{Face, SignedVertex};
pub use fvector::FVector;
pub use structure::{Complex, ComplexKind};

pub(crate) use structure::FacetIndex;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("malformed face: {0}")]
    MalformedFace(String),
    #[error("vertex sets are not disjoint; shared vertex {0}")]
    NotDisjoint(SignedVertex),
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("complex is not pure (facet {0} has the wrong dimension)")]
    NotPure(Face),
    #[error("ridge {ridge} lies in {count} facets")]
    NotPseudomanifold { ridge: Face, count: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the link of {0} is neither ball-like nor sphere-like")]
    LinkNotBallOrSphere(Face),
}
