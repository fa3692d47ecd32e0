//! Exterior algebra on a 6- or 7-dimensional space.
//!
//! Forms and multivectors share one sparse representation, [`Multi`], keyed
//! by index subsets stored as bitmasks. Coefficients are any [`Scalar`].

mod mono;
mod parse;
mod subspace;

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use thiserror::Error;

use crate::exact_algebra::{Matrix, Poly, QuadScalar, Rational, Scalar};

pub use mono::{binomial, monomials, Mono};
pub use parse::{parse_form, parse_form_at, ParseError};
pub(crate) use parse::{eval_expr, Cursor};
pub use subspace::FormSubspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("volume form is zero")]
    ZeroVolume,
    #[error("expected a top-degree form on dimension {0}")]
    NotTopDegree(usize),
    #[error("cannot contract into a form of grade 0")]
    GradeZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {}
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorKind {}

/// Homogeneous element of `Λᵏ`, either on the cotangent side ([`KForm`]) or
/// the tangent side ([`KVector`]). Zero coefficients are never stored.
pub struct Multi<S, K> {
    dim: usize,
    grade: usize,
    terms: BTreeMap<Mono, S>,
    kind: PhantomData<K>,
}

impl<S: Clone, K> Clone for Multi<S, K> {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            grade: self.grade,
            terms: self.terms.clone(),
            kind: PhantomData,
        }
    }
}

impl<S: PartialEq, K> PartialEq for Multi<S, K> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.grade == other.grade && self.terms == other.terms
    }
}

pub type KForm<S> = Multi<S, FormKind>;
pub type KVector<S> = Multi<S, VectorKind>;

impl<S: Scalar, K> Multi<S, K> {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Self {
            dim,
            grade,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn monomial(dim: usize, m: Mono, c: S) -> Self {
        let mut f = Self::zero(dim, m.grade());
        f.add_term(m, c);
        f
    }

    /// `e^i` (or `e_i`), 1-based.
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::monomial(dim, Mono::single(i), S::one())
    }

    /// Builds from `(indices, coefficient)` pairs, 1-based indices.
    pub fn from_terms<I>(dim: usize, grade: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, S)>,
    {
        let mut f = Self::zero(dim, grade);
        for (m, c) in terms {
            assert_eq!(m.grade(), grade, "inhomogeneous term");
            f.add_term(m, c);
        }
        f
    }

    /// Coefficients in the order of [`monomials`]`(dim, grade)`.
    pub fn from_coords(dim: usize, grade: usize, coords: &[S]) -> Self {
        Self::from_terms(
            dim,
            grade,
            monomials(dim, grade).into_iter().zip(coords.iter().cloned()),
        )
    }

    pub fn to_coords(&self) -> Vec<S> {
        monomials(self.dim, self.grade)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Mono) -> S {
        self.terms.get(&m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the top-degree monomial `e^{1…n}`.
    pub fn top(&self) -> S {
        self.coeff(Mono::full(self.dim))
    }

    /// Adds `c·e^m` in place.
    pub fn add_term(&mut self, m: Mono, c: S) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        assert_eq!(self.grade, other.grade, "grade mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for (m, c) in &self.terms {
            out.add_term(*m, c.mul_ref(s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for (m, c) in &self.terms {
            out.add_term(*m, c.scale(r));
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Multi<T, K> {
        let mut out = Multi::zero(self.dim, self.grade);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// `a ∧ b`. Panics if the ambient dimensions differ.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut out = Self::zero(self.dim, self.grade + other.grade);
        if out.grade > self.dim {
            return out;
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, negative)) = a.wedge(*b) {
                    let c = ca.mul_ref(cb);
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// Interior product with an element `v` of the dual side.
    ///
    /// `ι_v e^K = Σ_pos (−1)^pos v_{K[pos]} e^{K∖K[pos]}`.
    pub fn interior(&self, v: &[S]) -> Result<Self, ExteriorError> {
        assert_eq!(v.len(), self.dim, "vector length");
        if self.grade == 0 {
            return Err(ExteriorError::GradeZero);
        }
        let mut out = Self::zero(self.dim, self.grade - 1);
        for (m, c) in &self.terms {
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                if let Some((rest, negative)) = m.remove(i + 1) {
                    let t = c.mul_ref(vi);
                    out.add_term(rest, if negative { -t } else { t });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the basis element of index `i` (1-based).
    pub fn interior_basis(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim, self.grade.saturating_sub(1));
        for (m, c) in &self.terms {
            if let Some((rest, negative)) = m.remove(i) {
                out.add_term(rest, if negative { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// The same element viewed in dimension `n`; `None` if some monomial
    /// uses an index above `n`.
    pub fn with_dim(&self, n: usize) -> Option<Self> {
        if self.terms.keys().any(|m| m.indices().any(|i| i > n)) {
            return None;
        }
        Some(Multi {
            dim: n,
            grade: self.grade,
            terms: self.terms.clone(),
            kind: PhantomData,
        })
    }

    /// Converts between the form and multivector side, keeping coefficients.
    pub fn reinterpret<K2>(&self) -> Multi<S, K2> {
        Multi {
            dim: self.dim,
            grade: self.grade,
            terms: self.terms.clone(),
            kind: PhantomData,
        }
    }
}

/// `ι_v a` for a vector `v` and a form `a`.
pub fn contract_vector<S: Scalar>(v: &[S], a: &KForm<S>) -> Result<KForm<S>, ExteriorError> {
    a.interior(v)
}

/// `ι_ξ m` for a covector `ξ` and a multivector `m`.
pub fn contract_covector<S: Scalar>(
    xi: &[S],
    m: &KVector<S>,
) -> Result<KVector<S>, ExteriorError> {
    m.interior(xi)
}

/// `ι_m a` for a multivector `m`, inserting in slot order:
/// `ι_{u∧v} a = a(u, v, ·, …) = ι_v ι_u a`.
pub fn contract_multivector<S: Scalar>(m: &KVector<S>, a: &KForm<S>) -> KForm<S> {
    let mut out = KForm::zero(a.dim, a.grade.saturating_sub(m.grade));
    if m.grade > a.grade {
        return out;
    }
    for (mono, c) in m.terms() {
        let mut x = a.clone();
        for i in mono.indices() {
            x = x.interior_basis(i);
        }
        out = out.add(&x.scale(c));
    }
    out
}

/// The multivector `ρ̂` with `ι_ρ̂ Ω = ρ`.
pub fn hat<S: Scalar>(rho: &KForm<S>, omega: &KForm<Rational>) -> Result<KVector<S>, ExteriorError> {
    let n = omega.dim();
    if omega.grade() != n {
        return Err(ExteriorError::NotTopDegree(n));
    }
    let vol = omega.top();
    if vol == Rational::from_integer(0.into()) {
        return Err(ExteriorError::ZeroVolume);
    }
    let r = n - rho.grade();
    let full = KForm::<Rational>::monomial(n, Mono::full(n), vol);
    let mut out = KVector::zero(n, r);
    for k in monomials(n, r) {
        let image = contract_multivector(&KVector::monomial(n, k, Rational::from_integer(1.into())), &full);
        let (target, s) = image.terms().next().map(|(m, c)| (m, c.clone())).expect("non-zero");
        let c = rho.coeff(target);
        if !c.is_zero() {
            out.add_term(k, c.scale(&s.recip()));
        }
    }
    Ok(out)
}

/// `a(e_{i₁}, …, e_{i_k})` for 1-based indices in any order.
pub fn eval_basis<S: Scalar>(a: &KForm<S>, idx: &[usize]) -> S {
    assert_eq!(idx.len(), a.grade(), "argument count");
    let Some(m) = Mono::from_indices(idx) else {
        return S::zero();
    };
    let inversions = (0..idx.len())
        .flat_map(|i| (i + 1..idx.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| idx[i] > idx[j])
        .count();
    let c = a.coeff(m);
    if inversions % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Pullback `A*a`, where `(A*a)(v, …) = a(Av, …)`.
pub fn pullback<S: Scalar>(a: &KForm<S>, m: &Matrix<S>) -> KForm<S> {
    let n = a.dim();
    assert_eq!((m.rows(), m.cols()), (n, n), "matrix size");
    // A*e^i = Σ_j A_ij e^j
    let images: Vec<KForm<S>> = (0..n)
        .map(|i| KForm::from_coords(n, 1, m.row(i)))
        .collect();
    let mut out = KForm::zero(n, a.grade());
    for (mono, c) in a.terms() {
        let mut t = KForm::monomial(n, Mono::EMPTY, c.clone());
        for i in mono.indices() {
            t = t.wedge(&images[i - 1]);
        }
        out = out.add(&t);
    }
    out
}

/// Coefficient formatting for form literals.
pub trait LiteralCoeff {
    /// Returns (is_negative, magnitude text, magnitude is one).
    fn literal(&self) -> (bool, String, bool);
}

impl LiteralCoeff for Rational {
    fn literal(&self) -> (bool, String, bool) {
        use num_traits::{One, Signed};
        let abs = self.abs();
        (
            self.is_negative(),
            crate::exact_algebra::fmt_rational(&abs),
            abs.is_one(),
        )
    }
}

impl LiteralCoeff for QuadScalar {
    fn literal(&self) -> (bool, String, bool) {
        match self.to_rational() {
            Some(r) => r.literal(),
            None => (false, format!("({self})"), false),
        }
    }
}

impl LiteralCoeff for Poly {
    fn literal(&self) -> (bool, String, bool) {
        use num_traits::One;
        (false, format!("({self})"), self.is_one())
    }
}

impl LiteralCoeff for f64 {
    fn literal(&self) -> (bool, String, bool) {
        (*self < 0.0, format!("{}", self.abs()), self.abs() == 1.0)
    }
}

fn fmt_multi<S: LiteralCoeff, K>(
    x: &Multi<S, K>,
    sep: &str,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if x.terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (m, c)) in x.terms.iter().enumerate() {
        let (neg, mag, one) = c.literal();
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if !one {
            write!(f, "{mag}*")?;
        }
        write!(f, "e{sep}{m}")?;
    }
    Ok(())
}

impl<S: LiteralCoeff> fmt::Display for Multi<S, FormKind> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_multi(self, "", f)
    }
}

impl<S: LiteralCoeff> fmt::Display for Multi<S, VectorKind> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_multi(self, "_", f)
    }
}

impl<S: fmt::Debug, K> fmt::Debug for Multi<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m.to_string(), c)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    fn f(s: &str) -> KForm<Rational> {
        parse_form(s, 7).unwrap()
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(f("e1").wedge(&f("e2")), f("e12"));
        assert!(f("e12").wedge(&f("e12")).is_zero());
        assert_eq!(f("e2").wedge(&f("e1")), f("-e12"));
        assert_eq!(f("e13").wedge(&f("e2")), f("-e123"));
    }

    #[test]
    fn contraction_examples() {
        let e1 = [1, 0, 0, 0, 0, 0, 0].map(|x| rat(x, 1));
        let e3 = [0, 0, 1, 0, 0, 0, 0].map(|x| rat(x, 1));
        assert_eq!(contract_vector(&e1, &f("e12")).unwrap(), f("e2"));
        assert!(contract_vector(&e3, &f("e12")).unwrap().is_zero());
        let v: KVector<Rational> = f("e123").reinterpret();
        let e4 = [0, 0, 0, 1, 0, 0, 0].map(|x| rat(x, 1));
        assert_eq!(
            contract_covector(&e1, &v).unwrap(),
            f("e23").reinterpret::<VectorKind>()
        );
        assert!(contract_covector(&e4, &v).unwrap().is_zero());
        assert_eq!(
            contract_vector(&e1, &KForm::<Rational>::zero(7, 0)),
            Err(ExteriorError::GradeZero)
        );
    }

    #[test]
    fn hat_round_trip_on_basis() {
        let omega = f("e1234567");
        for k in monomials(7, 3) {
            let m = KVector::<Rational>::monomial(7, k, rat(1, 1));
            let rho = contract_multivector(&m, &omega);
            assert_eq!(hat(&rho, &omega).unwrap(), m);
        }
        let h = hat(&f("e4567"), &omega).unwrap();
        assert_eq!(contract_multivector(&h, &omega), f("e4567"));
        assert!(hat(&KForm::<Rational>::zero(7, 4), &omega).unwrap().is_zero());
        assert_eq!(
            hat(&f("e4567"), &KForm::zero(7, 7)),
            Err(ExteriorError::ZeroVolume)
        );
    }

    #[test]
    fn display_round_trips() {
        let s = "-e13 + e24 - 2/5*e56";
        assert_eq!(f(s).to_string(), s);
    }
}
