//! Nilpotent Lie algebras given by their Chevalley–Eilenberg differential.

mod catalog;
mod file;
mod gong;

use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_algebra::{fmt_rational, Matrix, Rational, Scalar};
use crate::exterior::{monomials, FormSubspace, KForm, Mono, ParseError};
use crate::kv::KvError;

pub use catalog::{catalog, lookup, CatalogEntry};
pub use file::parse_algebra_file;
pub use gong::{parse_differentials, Admissibility, GongSpec};

pub const DIM: usize = 7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NilpotentError {
    #[error("syntax error: {0}")]
    Syntax(#[from] ParseError),
    #[error("d(de^{index}) != 0: Jacobi identity fails")]
    Jacobi { index: usize },
    #[error("de^{index} involves e^{offending}: not a nilpotent basis")]
    NotNilpotentBasis { index: usize, offending: usize },
    #[error("the structure equations use λ but no value was given")]
    MissingParameter,
    #[error("a value for λ was given but the structure equations have no parameter")]
    UnexpectedParameter,
    #[error("λ = {lambda} is outside the admissible range {range}")]
    Inadmissible { lambda: String, range: &'static str },
    #[error("unknown algebra `{0}`")]
    Unknown(String),
    #[error(transparent)]
    File(#[from] KvError),
}

/// A span of vectors in `g = ℝ⁷`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSpan {
    basis: Vec<Vec<Rational>>,
}

impl VectorSpan {
    pub fn new(vectors: Vec<Vec<Rational>>) -> Self {
        if vectors.is_empty() {
            return Self { basis: vec![] };
        }
        let r = Matrix::from_rows(vectors).rref();
        let basis = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        Self { basis }
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        VectorSpan::new(all).dimension() == self.dimension()
    }

    /// Span of basis vectors `e_i` (1-based).
    pub fn coordinate(indices: &[usize]) -> Self {
        Self::new(indices.iter().map(|&i| unit(i)).collect())
    }
}

/// `e_i` as a coordinate vector, `i` counted from 1.
pub fn unit(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); DIM];
    v[i - 1] = Rational::one();
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralSeries {
    /// `g₀ = 0 ⊂ g₁ ⊂ …` up to the first term equal to `g`.
    pub terms: Vec<VectorSpan>,
    /// Smallest `n` with `g_n = g`; `None` if the series stalls.
    pub step: Option<usize>,
}

/// A 7-dimensional Lie algebra in a nilpotent basis.
#[derive(Debug)]
pub struct LieAlgebra {
    name: String,
    diff: Vec<KForm<Rational>>,
    lambda: Option<Rational>,
    declared_center: Option<Vec<usize>>,
    /// `d(e^I)` for every mask `I`.
    d_mono: Vec<KForm<Rational>>,
    closed: [OnceLock<FormSubspace<Rational>>; DIM + 1],
    exact: [OnceLock<FormSubspace<Rational>>; DIM + 1],
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            diff: self.diff.clone(),
            lambda: self.lambda.clone(),
            declared_center: self.declared_center.clone(),
            d_mono: self.d_mono.clone(),
            closed: self.closed.clone(),
            exact: self.exact.clone(),
        }
    }
}

impl LieAlgebra {
    /// Builds the algebra from `de¹, …, de⁷`, checking the nilpotent-basis
    /// property and `d² = 0`.
    pub fn new(name: impl Into<String>, diff: Vec<KForm<Rational>>) -> Result<Self, NilpotentError> {
        assert_eq!(diff.len(), DIM, "seven differentials");
        for (j, de) in diff.iter().enumerate() {
            assert_eq!((de.dim(), de.grade()), (DIM, 2), "de^j must be a 2-form on ℝ⁷");
            if let Some(m) = de.terms().map(|(m, _)| m).find(|m| m.indices().any(|i| i > j)) {
                return Err(NilpotentError::NotNilpotentBasis {
                    index: j + 1,
                    offending: m.indices().last().expect("non-empty"),
                });
            }
        }
        let mut d_mono: Vec<KForm<Rational>> = Vec::with_capacity(1 << DIM);
        d_mono.push(KForm::zero(DIM, 1));
        for mask in 1u16..(1 << DIM) {
            let m = Mono::from_mask(mask as u8);
            let i = m.indices().next().expect("non-empty");
            let rest = Mono::from_mask(m.mask() & !(1 << (i - 1)));
            let ei = KForm::basis(DIM, i);
            // d(e^i ∧ e^J) = de^i ∧ e^J − e^i ∧ d(e^J)
            let ej = KForm::monomial(DIM, rest, Rational::one());
            let a = diff[i - 1].wedge(&ej);
            let b = ei.wedge(&d_mono[rest.mask() as usize]);
            d_mono.push(a.sub(&b));
        }
        let alg = Self {
            name: name.into(),
            diff,
            lambda: None,
            declared_center: None,
            d_mono,
            closed: Default::default(),
            exact: Default::default(),
        };
        if let Some(i) = (1..=DIM).find(|&i| !alg.ce_d(&alg.diff[i - 1]).is_zero()) {
            return Err(NilpotentError::Jacobi { index: i });
        }
        Ok(alg)
    }

    /// Parses Gong notation, substituting `lambda` into parameter terms.
    pub fn from_gong(
        name: impl Into<String>,
        spec: &GongSpec,
        lambda: Option<&Rational>,
    ) -> Result<Self, NilpotentError> {
        match (spec.has_parameter(), lambda) {
            (true, None) => return Err(NilpotentError::MissingParameter),
            (false, Some(_)) => return Err(NilpotentError::UnexpectedParameter),
            (true, Some(l)) if !spec.admissible.admits(l) => {
                return Err(NilpotentError::Inadmissible {
                    lambda: fmt_rational(l),
                    range: spec.admissible.describe(),
                })
            }
            _ => {}
        }
        let diff = parse_differentials(&spec.raw, lambda)?;
        let mut alg = Self::new(name, diff)?;
        alg.lambda = lambda.cloned();
        Ok(alg)
    }

    pub fn with_declared_center(mut self, center: Vec<usize>) -> Self {
        self.declared_center = Some(center);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lambda(&self) -> Option<&Rational> {
        self.lambda.as_ref()
    }

    pub fn declared_center(&self) -> Option<&[usize]> {
        self.declared_center.as_deref()
    }

    /// `de^i`, 1-based.
    pub fn de(&self, i: usize) -> &KForm<Rational> {
        &self.diff[i - 1]
    }

    pub fn differentials(&self) -> &[KForm<Rational>] {
        &self.diff
    }

    /// Chevalley–Eilenberg differential, extended as an antiderivation.
    pub fn ce_d<S: Scalar>(&self, a: &KForm<S>) -> KForm<S> {
        assert_eq!(a.dim(), DIM, "forms on ℝ⁷ expected");
        let mut out = KForm::zero(DIM, a.grade() + 1);
        for (m, c) in a.terms() {
            for (m2, r) in self.d_mono[m.mask() as usize].terms() {
                out.add_term(m2, c.scale(r));
            }
        }
        out
    }

    /// `[x, y]` from `de^k(x, y) = −e^k([x, y])`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.diff
            .iter()
            .map(|de| {
                let v = de
                    .interior(x)
                    .and_then(|f| f.interior(y))
                    .expect("2-form")
                    .coeff(Mono::EMPTY);
                -v
            })
            .collect()
    }

    pub fn center(&self) -> VectorSpan {
        self.centralizer_of_quotient(&VectorSpan::new(vec![]))
    }

    /// `{X : [X, g] ⊂ prev}`.
    fn centralizer_of_quotient(&self, prev: &VectorSpan) -> VectorSpan {
        let annihilator: Vec<Vec<Rational>> = if prev.dimension() == 0 {
            (1..=DIM).map(unit).collect()
        } else {
            Matrix::from_rows(prev.basis().to_vec()).kernel()
        };
        let brackets: Vec<Vec<Vec<Rational>>> = (1..=DIM)
            .map(|i| (1..=DIM).map(|j| self.bracket(&unit(i), &unit(j))).collect())
            .collect();
        let mut rows = Vec::new();
        for j in 0..DIM {
            for q in &annihilator {
                let row: Vec<Rational> = (0..DIM)
                    .map(|i| {
                        q.iter()
                            .zip(&brackets[i][j])
                            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return VectorSpan::new((1..=DIM).map(unit).collect());
        }
        VectorSpan::new(Matrix::from_rows(rows).kernel())
    }

    pub fn central_series(&self) -> CentralSeries {
        let mut terms = vec![VectorSpan::new(vec![])];
        loop {
            let next = self.centralizer_of_quotient(terms.last().expect("g0"));
            let grew = next.dimension() > terms.last().expect("g0").dimension();
            if !grew {
                return CentralSeries { terms, step: None };
            }
            let full = next.dimension() == DIM;
            terms.push(next);
            if full {
                let step = terms.len() - 1;
                return CentralSeries { terms, step: Some(step) };
            }
        }
    }

    pub fn step(&self) -> Option<usize> {
        self.central_series().step
    }

    /// `true` when the declared center (if any) matches the computed one.
    pub fn center_matches_declared(&self) -> Option<bool> {
        self.declared_center
            .as_ref()
            .map(|c| VectorSpan::coordinate(c) == self.center())
    }

    /// Closed `k`-forms, computed once.
    pub fn closed_forms(&self, k: usize) -> &FormSubspace<Rational> {
        assert!(k <= DIM, "degree out of range");
        self.closed[k].get_or_init(|| {
            if k == DIM {
                return FormSubspace::full(DIM, k);
            }
            let inputs = monomials(DIM, k);
            let outputs = monomials(DIM, k + 1);
            let mut m = Matrix::zeros(outputs.len(), inputs.len());
            for (j, i) in inputs.iter().enumerate() {
                for (out, c) in self.d_mono[i.mask() as usize].terms() {
                    let row = outputs.binary_search(&out).expect("grade k+1");
                    m[(row, j)] = c.clone();
                }
            }
            let forms: Vec<KForm<Rational>> = m
                .kernel()
                .iter()
                .map(|v| KForm::from_coords(DIM, k, v))
                .collect();
            FormSubspace::span(DIM, k, &forms)
        })
    }

    /// Exact `k`-forms `d(Λ^{k−1})`, computed once.
    pub fn exact_forms(&self, k: usize) -> &FormSubspace<Rational> {
        assert!(k <= DIM, "degree out of range");
        self.exact[k].get_or_init(|| {
            if k == 0 {
                return FormSubspace::span(DIM, 0, &[]);
            }
            let forms: Vec<KForm<Rational>> = monomials(DIM, k - 1)
                .iter()
                .map(|m| self.d_mono[m.mask() as usize].clone())
                .collect();
            FormSubspace::span(DIM, k, &forms)
        })
    }

    pub fn is_exact(&self, a: &KForm<Rational>) -> bool {
        self.exact_forms(a.grade()).contains(a)
    }

    pub fn is_closed<S: Scalar>(&self, a: &KForm<S>) -> bool {
        self.ce_d(a).is_zero()
    }
}
