//! Generic exact scalar abstraction.
//!
//! The sparse vectors in [`crate::algebra`] and the twist verifier in
//! [`crate::twist`] are generic over the coefficient type.  Two scalars are
//! used in practice: arbitrary-precision rationals (the crate-root alias
//! [`crate::Rational`]) for character values, and
//! [`crate::cyclotomic::Cyclotomic`] numbers for twist coefficients.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

/// An exact field scalar: cloneable, comparable, with ring operations.
///
/// The blanket implementation covers every type with the listed bounds;
/// nothing needs to opt in explicitly.
pub trait Scalar:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Send
        + Sync
{
}
