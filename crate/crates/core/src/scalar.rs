//! The integer scalar abstraction shared by the lattice algorithms.
//!
//! Lattice code is written once against [`Scalar`] and instantiated with
//! `i64`, `i128` or [`num_bigint::BigInt`]. Fixed-width instantiations rely on
//! the workspace building with overflow checks, so an overflow aborts instead
//! of producing a wrong Gram matrix.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integers usable as lattice coordinates and Gram entries.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 always fits a Scalar")
    }

    /// Lossy conversion used only for floating-point guidance.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn to_bigint(&self) -> BigInt;

    /// Converts back from an arbitrary-precision value; `None` when out of range.
    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.to_bigint())
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}
