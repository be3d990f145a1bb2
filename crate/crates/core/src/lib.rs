//! E8-changemaker lattices.
//!
//! The crate enumerates E8-changemaker vectors in `E8 ⊕ Zⁿ⁺¹`, computes their
//! orthogonal complements, recognises linear lattices `Λ(p, q)`, builds the
//! standard basis of a complement, and recovers knot invariants from `τ`.
//!
//! [`lattice_core`] is generic over the integer type. Everything above it works
//! with `i64` coordinates, which is enough for every lattice that occurs here.

pub mod changemaker;
pub mod e8;
pub mod error;
pub mod lattice_core;
pub mod linear;
pub(crate) mod polyhedron;
pub mod scalar;
pub mod standard_basis;
pub mod surgery;

pub use changemaker::Tau;
pub use error::{Error, Result};
pub use lattice_core::GramLattice;

/// A lattice with machine-word Gram entries.
pub type Lattice = GramLattice<i64>;
/// A lattice with 128-bit Gram entries, for intermediate products that would
/// overflow `i64`.
pub type WideLattice = GramLattice<i128>;
/// A lattice with arbitrary-precision Gram entries.
pub type BigLattice = GramLattice<num_bigint::BigInt>;
