#![no_std]
//! Linear-programming energy bounds for spherical codes whose inner products
//! avoid prescribed open intervals, with machine-checkable certificates.
//!
//! Everything structural is exact: polynomials and ultraspherical expansions
//! live over arbitrary-precision rationals, and potentials that take rational
//! values (even Riesz exponents, polynomial potentials) yield certificates
//! whose every number is a fraction. Potentials that genuinely need real
//! arithmetic (Gaussians, odd Riesz exponents) run the same pipeline over
//! fixed-precision decimal floats with explicit, precision-scaled tolerances.
//!
//! The pipeline: build the Hermite interpolant of a potential at a node
//! multiset adapted to the avoided set, expand it in the ultraspherical
//! basis, classify coefficient signs against an admissibility class, and
//! emit a [`certify::BoundCertificate`] whose checks a verifier can replay
//! from the serialized data alone. [`designs`] carries the reference sharp
//! configuration (a 52 416 000-point 11-design on S⁴⁷) used to show the
//! resulting upper and lower bounds pinch its energy exactly.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certify;
pub mod designs;
pub mod gegenbauer;
pub mod interpolate;
pub mod potentials;
pub mod ratpoly;
pub mod scalar;

mod linalg;

pub use ratpoly::{Rational, RationalPoly};
