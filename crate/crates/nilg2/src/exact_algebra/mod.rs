//! Exact scalars and dense linear algebra.
//!
//! Everything above this layer is written against the [`Scalar`] trait so the
//! same exterior-algebra code runs over `Rational`, [`QuadScalar`], [`Poly`]
//! and (for diagnostics only) `f64`.

mod matrix;
mod poly;
mod quad;
mod rational;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use matrix::{Definiteness, Matrix, MatrixError, Rref};
pub use poly::{CompiledPoly, Monomial, Poly};
pub use quad::{QuadError, QuadField, QuadScalar};
pub use rational::{fmt_rational, parse_rational, rat, rational_to_f64, Rational};

/// Commutative ring of exact (or, for `f64`, approximate) coefficients.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}

/// A [`Scalar`] in which every non-zero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {
    fn inv(&self) -> Option<Self>;
}

/// A field with an exact sign test.
pub trait ExactSign: Field {
    fn sign(&self) -> Ordering;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl ExactSign for Rational {
    fn sign(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
}
