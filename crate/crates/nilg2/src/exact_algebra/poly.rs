use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, rational_to_f64, Rational};
use super::Scalar;

/// A monomial `∏ a_v^e`, stored as `(v, e)` pairs sorted by variable with
/// every exponent positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(u16, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: u16) -> Self {
        Self(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn factors(&self) -> &[(u16, u16)] {
        &self.0
    }

    /// `self / other`, if `other` divides `self`.
    fn divide(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for &(v, e) in &other.0 {
            let i = out.iter().position(|&(w, _)| w == v)?;
            if out[i].1 < e {
                return None;
            }
            out[i].1 -= e;
        }
        out.retain(|&(_, e)| e > 0);
        Some(Self(out))
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Self(out)
    }
}

/// Pure lex order with `a0 > a1 > …`. The derived `Ord` on [`Monomial`]
/// is only a storage order and is not multiplicative.
fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.0.get(i), b.0.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal if ea != eb => return ea.cmp(&eb),
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

/// Sparse polynomial over `Q` in indeterminates `a0, a1, …`.
///
/// The zero test is exact: a polynomial is zero iff it has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn var(v: u16) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Number of indeterminates needed to evaluate (max index + 1).
    pub fn arity(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v as usize + 1))
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().fold(c.clone(), |acc, &(v, e)| {
                    acc * num_traits::pow(point[v as usize].clone(), e as usize)
                })
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `(c, q)` with `self = c·q²` and `q` monic in lex order (`a0` first),
    /// if such a `q` exists over `Q`.
    pub fn square_root(&self) -> Option<(Rational, Poly)> {
        let (lead, c) = self.leading()?;
        let half: Option<Vec<(u16, u16)>> = lead.0.iter().map(|&(v, e)| (e % 2 == 0).then_some((v, e / 2))).collect();
        let half = Monomial(half?);
        let target = self.scale(&(Rational::one() / c.clone()));
        let mut q = Poly::term(half.clone(), Rational::one());
        let mut last = half.clone();
        loop {
            let r = target.add_ref(&-q.mul_ref(&q));
            let Some((m, cr)) = r.leading() else {
                return Some((c, q));
            };
            let t = m.divide(&half)?;
            if lex_cmp(&t, &last) != Ordering::Less {
                return None;
            }
            q.add_term(t.clone(), cr / Rational::from_integer(2.into()));
            last = t;
        }
    }

    /// Leading term in lex order.
    fn leading(&self) -> Option<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| lex_cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (rational_to_f64(c), m.0.clone()))
                .collect(),
        }
    }
}

/// Floating copy of a [`Poly`] for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(u16, u16)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, m)| {
                m.iter()
                    .fold(*c, |acc, &(v, e)| acc * x[v as usize].powi(e as i32))
            })
            .sum()
    }

    /// Value and gradient at `x`.
    pub fn eval_grad(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut value = 0.0;
        for (c, m) in &self.terms {
            let full = m
                .iter()
                .fold(*c, |acc, &(v, e)| acc * x[v as usize].powi(e as i32));
            value += full;
            for (k, &(v, e)) in m.iter().enumerate() {
                let partial = m.iter().enumerate().fold(*c, |acc, (l, &(w, f))| {
                    if l == k {
                        acc * e as f64 * x[w as usize].powi(f as i32 - 1)
                    } else {
                        acc * x[w as usize].powi(f as i32)
                    }
                });
                grad[v as usize] += partial;
            }
        }
        value
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        format!("a{v}")
                    } else {
                        format!("a{v}^{e}")
                    }
                })
                .collect();
            match (abs.is_one(), vars.is_empty()) {
                (_, true) => write!(f, "{}", fmt_rational(&abs))?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Add for Poly {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for Poly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl Neg for Poly {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.terms.values_mut().for_each(|c| *c = -c.clone());
        self
    }
}

impl Mul for Poly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Scalar for Poly {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Poly::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }
}
