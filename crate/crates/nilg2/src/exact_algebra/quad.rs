use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::rational::{fmt_rational, Rational};
use super::{ExactSign, Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("radicand {0} is not positive")]
    NonPositive(String),
    #[error("cannot mix sqrt({0}) and sqrt({1}) in one computation")]
    Mixed(String, String),
}

/// `a + b·√d`, with `d` a positive non-square rational shared by every
/// element of one computation.
///
/// Elements with `b = 0` may carry no radicand at all; they combine freely
/// with any extension. Arithmetic between two different radicands panics,
/// use [`QuadScalar::try_add`] / [`QuadScalar::try_mul`] to get an error
/// instead.
#[derive(Clone, Debug)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: Option<Arc<Rational>>,
}

/// Factory for elements of `Q(√d)`. A perfect-square `d` degenerates to `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadField {
    d: Rational,
    radicand: Option<Arc<Rational>>,
    root: Option<Rational>,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

impl QuadField {
    pub fn new(d: Rational) -> Result<Self, QuadError> {
        if !d.is_positive() {
            return Err(QuadError::NonPositive(fmt_rational(&d)));
        }
        let root = rational_sqrt(&d);
        let radicand = root.is_none().then(|| Arc::new(d.clone()));
        Ok(Self { d, radicand, root })
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// True when `d` is a perfect square and everything stays rational.
    pub fn is_degenerate(&self) -> bool {
        self.root.is_some()
    }

    pub fn sqrt_d(&self) -> QuadScalar {
        match &self.root {
            Some(r) => QuadScalar::rational(r.clone()),
            None => QuadScalar {
                a: Rational::zero(),
                b: Rational::one(),
                d: self.radicand.clone(),
            },
        }
    }

    pub fn element(&self, a: Rational, b: Rational) -> QuadScalar {
        QuadScalar::rational(a) + QuadScalar::rational(b) * self.sqrt_d()
    }
}

impl QuadScalar {
    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: None,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            None
        } else {
            self.d.as_deref()
        }
    }

    /// The rational value, if the irrational part vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let a = super::rational_to_f64(&self.a);
        match &self.d {
            Some(d) if !self.b.is_zero() => {
                a + super::rational_to_f64(&self.b) * super::rational_to_f64(d).sqrt()
            }
            _ => a,
        }
    }

    fn join(&self, other: &Self) -> Result<Option<Arc<Rational>>, QuadError> {
        match (&self.d, &other.d) {
            (Some(x), Some(y)) if x != y => {
                if self.b.is_zero() {
                    Ok(Some(y.clone()))
                } else if other.b.is_zero() {
                    Ok(Some(x.clone()))
                } else {
                    Err(QuadError::Mixed(fmt_rational(x), fmt_rational(y)))
                }
            }
            (Some(x), _) => Ok(Some(x.clone())),
            (None, y) => Ok(y.clone()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.join(other)?;
        Ok(Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.join(other)?;
        let bb = &self.b * &other.b;
        let a = &self.a * &other.a
            + match &d {
                Some(d) if !bb.is_zero() => bb * d.as_ref(),
                _ => Rational::zero(),
            };
        Ok(Self {
            a,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        })
    }

    fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `a² − b²d`.
    fn norm(&self) -> Rational {
        match &self.d {
            Some(d) => &self.a * &self.a - &self.b * &self.b * d.as_ref(),
            None => &self.a * &self.a,
        }
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.d == other.d)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand() {
            None => write!(f, "{}", fmt_rational(&self.a)),
            Some(d) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}√{}",
                    fmt_rational(&self.a),
                    sign,
                    fmt_rational(&self.b.abs()),
                    fmt_rational(d)
                )
            }
        }
    }
}

impl Add for QuadScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("mixed quadratic extensions")
    }
}

impl Sub for QuadScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&-rhs).expect("mixed quadratic extensions")
    }
}

impl Mul for QuadScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("mixed quadratic extensions")
    }
}

impl Neg for QuadScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Div for QuadScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero")
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Scalar for QuadScalar {
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("mixed quadratic extensions")
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("mixed quadratic extensions")
    }

    fn scale(&self, r: &Rational) -> Self {
        Self {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d.clone(),
        }
    }
}

impl Field for QuadScalar {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // d is never a square, so the norm of a non-zero element is non-zero.
        let n = self.norm();
        Some(self.conj().scale(&n.recip()))
    }
}

impl ExactSign for QuadScalar {
    fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || self.d.is_none() {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and b²d wins.
        let d = self.d.as_deref().expect("radicand present");
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * d)) {
            Ordering::Greater => sa,
            _ => sb,
        }
    }
}
