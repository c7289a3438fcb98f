//! Computation of the non-properness set S_f and the toric non-properness
//! set S*_f of a polynomial map f: K^n -> K^n (K = R or C) from the convex
//! geometry of the Newton polytopes of its components.
//!
//! The pipeline: exact sparse polynomials over Q ([`poly`]), lattice
//! polytopes and the common-refinement inner normal fan ([`polytope`],
//! [`fan`]), unimodular chain transformations adapted to flags of minimized
//! tuples ([`lattice`]), tuple classification ([`classify`]), restricted
//! transformed systems and symbolic Jacobians ([`system`]), exact and
//! numeric zero-dimensional solving ([`solve`]), and the assembly of the
//! non-properness sets with certificates ([`engine`]). A numeric escape
//! oracle ([`oracle`]) independently confirms emitted components.

pub mod classify;
pub mod engine;
pub mod error;
pub mod fan;
pub mod gauss;
pub mod lattice;
pub mod mat;
pub mod oracle;
pub mod poly;
pub mod polytope;
pub mod report;
pub mod solve;
pub mod system;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
