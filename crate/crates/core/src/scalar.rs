//! Coefficient traits.
//!
//! Everything that carries coefficients (forms, marked sets, exterior
//! elements, Plücker polynomials) is generic over [`Ring`]. Linear algebra
//! needs division and is generic over [`Field`]. Both are thin layers over
//! `num-traits`; the concrete types used by the crate are re-exported from
//! the crate root as aliases.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

/// A field with exact zero test, suitable for Gaussian elimination.
pub trait Field: Ring + std::ops::Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Ring for i64 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += *other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Ring for i128 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += *other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Ring for BigInt {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Debug + Integer + Signed,
{
}

impl<T> Field for Ratio<T> where T: Clone + Debug + Integer + Signed {}

