use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient field for the generic algebra in this crate.
///
/// Everything the library computes is exact, so in practice this is
/// instantiated with [`crate::Rat`]. The trait exists so that the polynomial,
/// free-term and matrix layers can also be exercised over other exact fields
/// (for example `num_rational::Rational64` for small fast checks).
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Eq + Hash + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn of_u64(n: u64) -> Self {
        <Self as FromPrimitive>::from_u64(n).expect("integer is representable in the scalar field")
    }

    fn of_i64(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("integer is representable in the scalar field")
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + Eq + Hash + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}
