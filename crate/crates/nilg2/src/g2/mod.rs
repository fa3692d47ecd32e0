//! G₂-forms on ℝ⁷: the bilinear form of a 3-form, `B_ρ` of a 4-form,
//! Hodge duals and (pure) coclosedness.

mod numeric;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact_algebra::{rat, Definiteness, Matrix, Rational, Scalar};
use crate::exterior::{hat, KForm, KVector, Mono};
use crate::nilpotent::LieAlgebra;

pub use numeric::{star_numeric, NumericMetric};

pub const DIM7: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum G2Error {
    #[error("the 3-form is not a G₂-form: b is {0}")]
    NotPositive(&'static str),
    #[error("expected a {0}-form on ℝ⁷")]
    Shape(usize),
}

/// `Ω = e^{1234567}`.
pub fn background_volume() -> KForm<Rational> {
    KForm::monomial(DIM7, Mono::full(DIM7), Rational::from_integer(1.into()))
}

/// `b_ij = (1/6)(ι_{e_i}φ ∧ ι_{e_j}φ ∧ φ)/Ω`.
pub fn b_matrix_3form<S: Scalar>(phi: &KForm<S>) -> Matrix<S> {
    assert_eq!((phi.dim(), phi.grade()), (DIM7, 3), "3-form on ℝ⁷ expected");
    let contractions: Vec<KForm<S>> = (1..=DIM7).map(|i| phi.interior_basis(i)).collect();
    let sixth = rat(1, 6);
    let mut b = Matrix::zeros(DIM7, DIM7);
    for i in 0..DIM7 {
        let left = contractions[i].wedge(phi);
        for j in i..DIM7 {
            let v = left.wedge(&contractions[j]).top().scale(&sixth);
            b[(j, i)] = v.clone();
            b[(i, j)] = v;
        }
    }
    b
}

/// A 3-form whose `b` is definite.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Form {
    pub phi: KForm<Rational>,
    pub b: Matrix<Rational>,
    /// Sign of `det b`, equal to the sign of `v` in `vol_φ = v·Ω`.
    pub orientation: i8,
    pub det_b: Rational,
}

impl G2Form {
    pub fn recognize(phi: &KForm<Rational>) -> Result<Self, G2Error> {
        if (phi.dim(), phi.grade()) != (DIM7, 3) {
            return Err(G2Error::Shape(3));
        }
        let b = b_matrix_3form(phi);
        let orientation = match b.sylvester_definite().expect("symmetric") {
            Definiteness::Positive => 1,
            Definiteness::Negative => -1,
            Definiteness::IndefiniteOrDegenerate => {
                return Err(G2Error::NotPositive("indefinite or degenerate"))
            }
        };
        let det_b = b.det().expect("square");
        Ok(Self {
            phi: phi.clone(),
            b,
            orientation,
            det_b,
        })
    }
}

pub fn is_positive_3form(phi: &KForm<Rational>) -> Option<i8> {
    G2Form::recognize(phi).ok().map(|g| g.orientation)
}

/// `ρ̂` and `B_ρ(v, w) = (1/6)(ι_vρ̂ ∧ ι_wρ̂ ∧ ρ̂)/Ω` on covectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Rho4Data<S> {
    pub rho: KForm<S>,
    pub rho_hat: KVector<S>,
    pub b: Matrix<S>,
}

pub fn b_matrix_4form<S: Scalar>(rho: &KForm<S>, omega: &KForm<Rational>) -> Rho4Data<S> {
    assert_eq!((rho.dim(), rho.grade()), (DIM7, 4), "4-form on ℝ⁷ expected");
    let rho_hat = hat(rho, omega).expect("non-zero volume");
    let contractions: Vec<KVector<S>> = (1..=DIM7).map(|i| rho_hat.interior_basis(i)).collect();
    let sixth = rat(1, 6);
    let mut b = Matrix::zeros(DIM7, DIM7);
    for i in 0..DIM7 {
        let left = contractions[i].wedge(&rho_hat);
        for j in i..DIM7 {
            let v = left.wedge(&contractions[j]).top().scale(&sixth);
            b[(j, i)] = v.clone();
            b[(i, j)] = v;
        }
    }
    Rho4Data {
        rho: rho.clone(),
        rho_hat,
        b,
    }
}

/// `B_ρ(v, v)` for a single covector, without building the full matrix.
pub fn b_quadratic_4form<S: Scalar>(rho: &KForm<S>, omega: &KForm<Rational>, v: &[S]) -> S {
    let rho_hat = hat(rho, omega).expect("non-zero volume");
    let c = rho_hat.interior(v).expect("grade 3");
    c.wedge(&c).wedge(&rho_hat).top().scale(&rat(1, 6))
}

pub fn is_stable_4form(rho: &KForm<Rational>) -> bool {
    let data = b_matrix_4form(rho, &background_volume());
    !data.b.det().expect("square").is_zero()
}

/// Outcome of comparing `B_{*φ}` with `b_φ⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseRelation {
    /// `c` with `B_{*φ} = c·b⁻¹`, if the two are proportional.
    pub factor: Option<Rational>,
    pub holds: bool,
}

/// Checks `g_{*φ} = g_φ⁻¹` through `B_{star} = c·b_φ⁻¹`.
///
/// `B` is taken against the fixed volume `e^{1..7}`, so under `φ ↦ A*φ` the
/// factor scales by `det(A)³`. The relation holds when `c` has the sign of
/// the orientation of `φ`.
///
/// `star` is the candidate dual 4-form of `phi`.
pub fn metric_inverse_relation_check(
    phi: &KForm<Rational>,
    star: &KForm<Rational>,
) -> Result<InverseRelation, G2Error> {
    let g = G2Form::recognize(phi)?;
    let binv = g.b.inverse().expect("definite");
    let big_b = b_matrix_4form(star, &background_volume()).b;
    let factor = proportionality(&big_b, &binv);
    let holds = factor
        .as_ref()
        .is_some_and(|c| if g.orientation > 0 { c.is_positive() } else { c.is_negative() });
    Ok(InverseRelation { factor, holds })
}

/// `c` with `a = c·b`, when one exists and `b ≠ 0`.
pub fn proportionality(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Option<Rational> {
    let (ra, rb) = (a.entries(), b.entries());
    let pivot = rb.iter().position(|x| !x.is_zero())?;
    let c = &ra[pivot] / &rb[pivot];
    ra.iter().zip(rb).all(|(x, y)| *x == &c * y).then_some(c)
}

/// `ω²/2 + ψ₋∧η`.
pub fn star_ansatz(
    omega: &KForm<Rational>,
    psi_minus: &KForm<Rational>,
    eta: &KForm<Rational>,
) -> KForm<Rational> {
    omega
        .wedge(omega)
        .scale(&rat(1, 2))
        .add(&psi_minus.wedge(eta))
}

/// `d(*φ) = 0`.
pub fn is_coclosed(alg: &LieAlgebra, star: &KForm<Rational>) -> bool {
    alg.ce_d(star).is_zero()
}

/// Coclosed and `φ ∧ dφ = 0`.
pub fn is_purely_coclosed(alg: &LieAlgebra, phi: &KForm<Rational>, star: &KForm<Rational>) -> bool {
    is_coclosed(alg, star) && phi.wedge(&alg.ce_d(phi)).is_zero()
}
