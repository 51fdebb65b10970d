//! Exact scalar fields: rationals, univariate polynomials in `t`, their
//! fraction field, and dense linear algebra generic over either field.

mod matrix;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use matrix::{echelon_basis, FieldMatrix, Nullspace};
pub use poly::UniPoly;
pub use ratfunc::RatFunc;
pub use rational::{ParseRationalError, Rational};

/// A commutative field with exact equality.
///
/// Every value is kept in a canonical form, so `==` is mathematical equality.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &Rational) -> Self;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rational function has a pole at t = 0")]
    Pole,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
