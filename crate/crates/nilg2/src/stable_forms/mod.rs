//! Hitchin's invariants of 3-forms in dimension six and SU(3)-structures.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_algebra::{
    fmt_rational, rat, Definiteness, ExactSign, Matrix, QuadError, QuadField, QuadScalar, Rational, Scalar,
};
use crate::exterior::{eval_basis, monomials, pullback, KForm, Mono};

pub const DIM6: usize = 6;

/// Global sign in `ψ₊ = σ·ψ₋(J·,·,·)`, calibrated on the standard
/// SU(3)-structure (see the `standard_model` test).
pub const SIGMA: i64 = -1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StableError {
    #[error("ψ is not negative-stable: λ = {0}")]
    NotNegative(String),
    #[error("volume form must be a non-zero 6-form")]
    BadVolume,
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// A six-dimensional space with a fixed volume form `Ω₆`.
#[derive(Clone, Debug, PartialEq)]
pub struct SixSpace {
    volume: KForm<Rational>,
}

impl Default for SixSpace {
    fn default() -> Self {
        Self {
            volume: KForm::monomial(DIM6, Mono::full(DIM6), Rational::one()),
        }
    }
}

impl SixSpace {
    pub fn new(volume: KForm<Rational>) -> Result<Self, StableError> {
        if volume.dim() != DIM6 || volume.grade() != DIM6 || volume.is_zero() {
            return Err(StableError::BadVolume);
        }
        Ok(Self { volume })
    }

    pub fn volume(&self) -> &KForm<Rational> {
        &self.volume
    }

    /// Ratio `α/Ω₆` for a top-degree form.
    pub fn ratio<S: Scalar>(&self, top: &KForm<S>) -> S {
        assert_eq!(top.grade(), DIM6, "6-form expected");
        top.top().scale(&self.volume.top().recip())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Negative,
    Positive,
    Unstable,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Negative => "negative",
            Stability::Positive => "positive",
            Stability::Unstable => "unstable",
        }
    }
}

/// `K_ψ`, defined by `ι_{K(v)}Ω₆ = ι_vψ ∧ ψ`.
pub fn hitchin_k<S: Scalar>(psi: &KForm<S>, space: &SixSpace) -> Matrix<S> {
    assert_eq!((psi.dim(), psi.grade()), (DIM6, 3), "3-form on a 6-space expected");
    let inv_vol = space.volume.top().recip();
    let mut k = Matrix::zeros(DIM6, DIM6);
    for j in 1..=DIM6 {
        let xi = psi.interior_basis(j).wedge(psi);
        for i in 1..=DIM6 {
            let c = xi.coeff(Mono::single(i).complement(DIM6));
            if c.is_zero() {
                continue;
            }
            let c = c.scale(&inv_vol);
            k[(i - 1, j - 1)] = if i % 2 == 0 { -c } else { c };
        }
    }
    k
}

/// `λ(ψ) = tr(K²)/6`, so that `K² = λ·Id`.
pub fn hitchin_lambda<S: Scalar>(psi: &KForm<S>, space: &SixSpace) -> S {
    let k = hitchin_k(psi, space);
    let k2 = k.mul(&k).expect("square");
    k2.trace().scale(&rat(1, 6))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HitchinData {
    pub psi: KForm<Rational>,
    pub k: Matrix<Rational>,
    pub lambda: Rational,
    pub stability: Stability,
}

pub fn hitchin_data(psi: &KForm<Rational>, space: &SixSpace) -> HitchinData {
    let k = hitchin_k(psi, space);
    let lambda = k.mul(&k).expect("square").trace() / Rational::from_integer(6.into());
    let stability = match lambda.sign() {
        Ordering::Less => Stability::Negative,
        Ordering::Greater => Stability::Positive,
        Ordering::Equal => Stability::Unstable,
    };
    HitchinData {
        psi: psi.clone(),
        k,
        lambda,
        stability,
    }
}

/// `ψ(M·,·,·)`: the endomorphism acts in the first slot.
pub fn slot_action<S: Scalar>(psi: &KForm<S>, m: &Matrix<S>) -> KForm<S> {
    let n = psi.dim();
    let mut out = KForm::zero(n, psi.grade());
    for mono in monomials(n, psi.grade()) {
        let idx: Vec<usize> = mono.indices().collect();
        let c = slot_value(psi, m, &idx);
        out.add_term(mono, c);
    }
    out
}

fn slot_value<S: Scalar>(psi: &KForm<S>, m: &Matrix<S>, idx: &[usize]) -> S {
    let mut args = idx.to_vec();
    let mut acc = S::zero();
    for r in 1..=psi.dim() {
        let mr = &m[(r - 1, idx[0] - 1)];
        if mr.is_zero() {
            continue;
        }
        args[0] = r;
        acc = acc.add_ref(&mr.mul_ref(&eval_basis(psi, &args)));
    }
    acc
}

/// Number of basis triples on which `ψ(M·,·,·)` fails to be alternating.
pub fn slot_antisymmetry_defect<S: Scalar>(psi: &KForm<S>, m: &Matrix<S>) -> usize {
    let n = psi.dim();
    let mut bad = 0;
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                let t = slot_value(psi, m, &[a, b, c]);
                let swapped_first = slot_value(psi, m, &[b, a, c]);
                let swapped_last = slot_value(psi, m, &[a, c, b]);
                if t != -swapped_first || t != -swapped_last {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Almost-complex structure and ψ₊ induced by a negative-stable ψ₋.
#[derive(Clone, Debug, PartialEq)]
pub struct AcsData {
    pub lambda: Rational,
    pub field: QuadField,
    pub k: Matrix<Rational>,
    /// `J = K/√(−λ)`.
    pub j: Matrix<QuadScalar>,
    /// `σ·ψ₋(J·,·,·)`, before normalization.
    pub psi_plus: KForm<QuadScalar>,
    /// `ψ₋(K·,·,·)`, the rational form that `ψ₊` is a multiple of.
    pub slot_form: KForm<Rational>,
}

pub fn acs_and_psi_plus(psi_minus: &KForm<Rational>, space: &SixSpace) -> Result<AcsData, StableError> {
    let h = hitchin_data(psi_minus, space);
    if h.stability != Stability::Negative {
        return Err(StableError::NotNegative(fmt_rational(&h.lambda)));
    }
    let d = -h.lambda.clone();
    let field = QuadField::new(d.clone())?;
    let inv_sqrt = field.sqrt_d().scale(&d.recip());
    let j = h.k.map(|x| inv_sqrt.scale(x));
    let slot_form = slot_action(psi_minus, &h.k);
    let psi_plus = slot_form.map(|x| inv_sqrt.scale(&(x * Rational::from_integer(SIGMA.into()))));
    Ok(AcsData {
        lambda: h.lambda,
        field,
        k: h.k,
        j,
        psi_plus,
        slot_form,
    })
}

impl AcsData {
    /// The positive multiple of `ψ₊` with `|ψ₊∧ψ₋| = (2/3)|ω³|`.
    ///
    /// The square root cancels, so the result is rational. `None` when
    /// `ψ₊∧ψ₋` or `ω³` vanishes.
    pub fn normalized_psi_plus(
        &self,
        psi_minus: &KForm<Rational>,
        omega: &KForm<Rational>,
    ) -> Option<KForm<Rational>> {
        let p_wedge = self.slot_form.wedge(psi_minus).top();
        let omega3 = omega.wedge(omega).wedge(omega).top();
        if p_wedge.is_zero() || omega3.is_zero() {
            return None;
        }
        let c = rat(2, 3) * omega3.abs() / p_wedge.abs() * Rational::from_integer(SIGMA.into());
        Some(self.slot_form.scale(&c))
    }
}

/// One named condition of the SU(3) check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Su3Data {
    pub omega: KForm<Rational>,
    pub psi_minus: KForm<Rational>,
    pub acs: AcsData,
    /// Normalized ψ₊.
    pub psi_plus: KForm<Rational>,
    /// `h = ω(·, J·)`.
    pub h: Matrix<QuadScalar>,
    /// `+1` if `h` is positive definite, `−1` if negative definite.
    pub h_orientation: i8,
    /// `(ψ₊∧ψ₋)/Ω₆` and `ω³/Ω₆` after normalization.
    pub psi_wedge_ratio: Rational,
    pub omega_cubed_ratio: Rational,
    /// `(σψ₋(J·,·,·) ∧ ψ₋)/Ω₆` before normalization.
    pub raw_psi_wedge_ratio: QuadScalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Su3Report {
    pub clauses: Vec<Clause>,
    pub data: Option<Su3Data>,
}

impl Su3Report {
    pub fn passed(&self) -> bool {
        self.data.is_some() && self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.passed)
    }
}

fn clause(name: &'static str, passed: bool, detail: impl Into<String>) -> Clause {
    Clause {
        name,
        passed,
        detail: detail.into(),
    }
}

/// `h_ij = ω(e_i, J e_j)`.
pub fn compatible_metric<S: Scalar>(omega: &KForm<S>, j: &Matrix<S>) -> Matrix<S> {
    let n = omega.dim();
    let mut h = Matrix::zeros(n, n);
    for a in 1..=n {
        for b in 1..=n {
            let mut acc = S::zero();
            for r in 1..=n {
                let jr = &j[(r - 1, b - 1)];
                if !jr.is_zero() {
                    acc = acc.add_ref(&jr.mul_ref(&eval_basis(omega, &[a, r])));
                }
            }
            h[(a - 1, b - 1)] = acc;
        }
    }
    h
}

/// Checks that `(ω, ψ₋)` defines an SU(3)-structure on the 6-space.
pub fn su3_check(omega: &KForm<Rational>, psi_minus: &KForm<Rational>, space: &SixSpace) -> Su3Report {
    let mut clauses = Vec::new();
    let omega3 = omega.wedge(omega).wedge(omega);
    clauses.push(clause(
        "omega_nondegenerate",
        !omega3.is_zero(),
        format!("ω³/Ω₆ = {}", space.ratio(&omega3)),
    ));
    let mixed = omega.wedge(psi_minus);
    clauses.push(clause(
        "omega_wedge_psi_minus",
        mixed.is_zero(),
        if mixed.is_zero() { "0".to_string() } else { mixed.to_string() },
    ));
    let acs = match acs_and_psi_plus(psi_minus, space) {
        Ok(a) => {
            clauses.push(clause("psi_minus_negative_stable", true, format!("λ = {}", a.lambda)));
            a
        }
        Err(e) => {
            clauses.push(clause("psi_minus_negative_stable", false, e.to_string()));
            return Su3Report { clauses, data: None };
        }
    };
    let h = compatible_metric(&omega.map(QuadScalar::from_rational), &acs.j);
    let symmetric = h.is_symmetric();
    clauses.push(clause("h_symmetric", symmetric, ""));
    let definiteness = if symmetric {
        h.sylvester_definite().ok()
    } else {
        None
    };
    let h_orientation = match definiteness {
        Some(Definiteness::Positive) => 1,
        Some(Definiteness::Negative) => -1,
        _ => 0,
    };
    clauses.push(clause(
        "h_definite",
        h_orientation != 0,
        match h_orientation {
            1 => "positive definite",
            -1 => "negative definite (opposite orientation of Ω₆)",
            _ => "indefinite or degenerate",
        },
    ));
    // ω(K·,K·) = −λ·ω is equivalent to ω(J·,J·) = ω.
    let preserves = pullback(omega, &acs.k) == omega.scale(&(-acs.lambda.clone()));
    clauses.push(clause("J_preserves_omega", preserves, ""));
    let Some(psi_plus) = acs.normalized_psi_plus(psi_minus, omega) else {
        clauses.push(clause("psi_plus_normalizable", false, "ψ₊∧ψ₋ = 0"));
        return Su3Report { clauses, data: None };
    };
    clauses.push(clause(
        "psi_plus_wedge_omega",
        psi_plus.wedge(omega).is_zero(),
        "",
    ));
    let raw_psi_wedge_ratio = space.ratio(&acs.psi_plus.wedge(&psi_minus.map(QuadScalar::from_rational)));
    let data = Su3Data {
        omega: omega.clone(),
        psi_minus: psi_minus.clone(),
        psi_wedge_ratio: space.ratio(&psi_plus.wedge(psi_minus)),
        omega_cubed_ratio: space.ratio(&omega3),
        psi_plus,
        acs,
        h,
        h_orientation,
        raw_psi_wedge_ratio,
    };
    Su3Report {
        clauses,
        data: Some(data),
    }
}
