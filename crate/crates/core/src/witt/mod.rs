//! Truncated Witt vectors: structure polynomials, ring operations, the lift
//! into Galois-ring Laurent series, and homomorphism words.

pub mod hom;
pub mod phi;
pub mod polys;
pub mod vector;

pub use hom::{HomWord, Letter, Word};
pub use vector::{WittRing, WittVector};
