//! Centrally symmetric simplicial spheres that are cs-⌈d/2⌉-neighborly.
//!
//! The crate is split into a simplicial-complex kernel ([`complex`]), the
//! inductive family of spheres and balls ([`construction`]), executable checks
//! for every property the construction is supposed to have ([`verify`]) and
//! canonical text formats ([`io`]).

pub mod complex;
pub mod construction;
pub mod io;
pub mod verify;

pub use complex::{Complex, ComplexError, ComplexKind, FVector, Face, SignedVertex};
pub use construction::{ConstructionError, ConstructionKey, ConstructionKind, Constructor};
pub use verify::{BettiVectorZ2, VerificationReport};
