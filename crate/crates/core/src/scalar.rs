//! Coefficient traits shared by every polynomial type in the crate.
//!
//! The arithmetic layers are written against these traits rather than a fixed
//! integer type, so the same code serves arbitrary-precision integers
//! (motivic classes), rationals (topological and p-adic specializations) and
//! machine integers in tests.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> {}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Embeds a machine integer into a ring.
pub fn from_i64<R: Ring + FromPrimitive>(n: i64) -> R {
    R::from_i64(n).expect("integer embeds into ring")
}
