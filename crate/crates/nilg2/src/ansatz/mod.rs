//! Coclosed G₂-structures built from an SU(3)-structure `(ω, ψ₋)` on a
//! hyperplane and a covector `η`: `φ = ω∧η + ψ₊`, `*φ = ω²/2 + ψ₋∧η`.

mod classify;
mod data;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_algebra::{fmt_rational, Field, Matrix, QuadScalar, Rational, Scalar};
use crate::exterior::{KForm, Mono, ParseError};
use crate::g2::{metric_inverse_relation_check, star_ansatz, G2Form, InverseRelation};
use crate::kv::KvError;
use crate::nilpotent::{LieAlgebra, NilpotentError, DIM};
use crate::report;
use crate::stable_forms::{su3_check, Clause, SixSpace, DIM6};

pub use classify::{classify, default_samples, ClassEntry, Classification, Outcome};
pub use data::{parse_structure_file, structure_for, structures, StructureData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnsatzError {
    #[error("no central X with ι_Xω = 0, ι_Xψ₋ = 0 and η(X) ≠ 0")]
    NoCoorientation,
    #[error("`{key}`: {source}")]
    Form { key: &'static str, source: ParseError },
    #[error("`{key}` must be a {expected}-form")]
    Grade { key: &'static str, expected: usize },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("no stored structure for `{0}`")]
    NoStructure(String),
    #[error("row is for λ = {row}, not λ = {asked}")]
    ParameterMismatch { row: String, asked: String },
    #[error(transparent)]
    Algebra(#[from] NilpotentError),
    #[error(transparent)]
    File(#[from] KvError),
}

#[derive(Clone, Debug)]
pub struct AnsatzInput {
    pub alg: LieAlgebra,
    pub omega: KForm<Rational>,
    pub psi_minus: KForm<Rational>,
    pub eta: KForm<Rational>,
    /// Inferred when absent.
    pub x: Option<Vec<Rational>>,
}

fn eval_covector(eta: &KForm<Rational>, x: &[Rational]) -> Rational {
    eta.to_coords().iter().zip(x).map(|(a, b)| a * b).sum()
}

/// A central `X` with `ι_Xω = 0`, `ι_Xψ₋ = 0` and `η(X) ≠ 0`.
pub fn infer_x(
    alg: &LieAlgebra,
    omega: &KForm<Rational>,
    psi_minus: &KForm<Rational>,
    eta: &KForm<Rational>,
) -> Result<Vec<Rational>, AnsatzError> {
    let center = alg.center();
    let basis = center.basis();
    if basis.is_empty() {
        return Err(AnsatzError::NoCoorientation);
    }
    let cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|c| {
            let mut col = omega.interior(c).expect("grade 2").to_coords();
            col.extend(psi_minus.interior(c).expect("grade 3").to_coords());
            col
        })
        .collect();
    let rows = cols[0].len();
    let kernel = Matrix::from_cols(&cols, rows).kernel();
    kernel
        .iter()
        .map(|t| {
            (0..DIM)
                .map(|i| basis.iter().zip(t).map(|(c, ti)| &c[i] * ti).sum())
                .collect::<Vec<Rational>>()
        })
        .find(|x| !eval_covector(eta, x).is_zero())
        .ok_or(AnsatzError::NoCoorientation)
}

/// Identification of `Λ(X°)` with forms on a 6-space, through the basis
/// `fⁱ = eⁱ − (Xᵢ/X_k)eᵏ` (`i ≠ k`) of the annihilator of `X`, where `k`
/// is the last index with `X_k ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub pivot: usize,
    /// `fⁱ` as covectors on ℝ⁷, in increasing `i`.
    pub frame: Vec<KForm<Rational>>,
}

impl Reduction {
    pub fn new(x: &[Rational]) -> Self {
        let pivot = (1..=DIM).rev().find(|&k| !x[k - 1].is_zero()).expect("X ≠ 0");
        let frame = (1..=DIM)
            .filter(|&i| i != pivot)
            .map(|i| {
                let mut f = KForm::basis(DIM, i);
                f.add_term(Mono::single(pivot), -(&x[i - 1] / &x[pivot - 1]));
                f
            })
            .collect();
        Self { pivot, frame }
    }

    fn six_index(&self, i: usize) -> usize {
        if i < self.pivot {
            i
        } else {
            i - 1
        }
    }

    /// Coordinates over the frame of a form annihilated by `X`: the
    /// coefficients of monomials avoiding the pivot.
    pub fn reduce(&self, a: &KForm<Rational>) -> KForm<Rational> {
        let terms = a.terms().filter(|(m, _)| !m.contains(self.pivot)).map(|(m, c)| {
            let idx: Vec<usize> = m.indices().map(|i| self.six_index(i)).collect();
            (Mono::from_indices(&idx).expect("distinct"), c.clone())
        });
        KForm::from_terms(DIM6, a.grade(), terms)
    }

    pub fn lift(&self, a: &KForm<Rational>) -> KForm<Rational> {
        let mut out = KForm::zero(DIM, a.grade());
        for (m, c) in a.terms() {
            let term = m
                .indices()
                .fold(KForm::monomial(DIM, Mono::from_mask(0), Rational::one()), |acc, i| {
                    acc.wedge(&self.frame[i - 1])
                });
            out = out.add(&term.scale(c));
        }
        out
    }

    /// The 6×7 matrix whose rows are the frame covectors.
    pub fn frame_matrix(&self) -> Matrix<Rational> {
        Matrix::from_rows(self.frame.iter().map(KForm::to_coords).collect())
    }
}

/// `b = v·(h + η⊗η)` with `h` lifted along the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricCheck {
    pub factor: Option<QuadScalar>,
    /// `v⁹ = det b`.
    pub ninth_power: bool,
}

impl MetricCheck {
    pub fn holds(&self) -> bool {
        self.factor.is_some() && self.ninth_power
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureCertificate {
    pub algebra: String,
    pub lambda: Option<Rational>,
    pub omega: KForm<Rational>,
    pub psi_minus: KForm<Rational>,
    pub eta: KForm<Rational>,
    pub x: Option<Vec<Rational>>,
    pub eta_of_x: Option<Rational>,
    pub preconditions: Vec<Clause>,
    pub su3: Vec<Clause>,
    /// `−λ(ψ₋)`: `J` and the unnormalized `ψ₊` live in `ℚ(√d)`.
    pub field_d: Option<Rational>,
    pub h_orientation: i8,
    /// `(ψ₊∧ψ₋)/Ω₆` and `ω³/Ω₆`.
    pub normalization: Option<(Rational, Rational)>,
    pub psi_plus: Option<KForm<Rational>>,
    /// `dψ₋`, `ω∧dω − ψ₋∧dη`, `ω²∧dη + 2ψ₊∧dω`.
    pub residuals: Option<[KForm<Rational>; 3]>,
    pub phi: Option<KForm<Rational>>,
    pub star: Option<KForm<Rational>>,
    /// Sign of `b` and `det b`.
    pub positivity: Option<(i8, Rational)>,
    pub coclosed: bool,
    pub purely_coclosed: bool,
    pub star_exact: Option<bool>,
    pub metric: Option<MetricCheck>,
    pub inverse_relation: Option<InverseRelation>,
    /// First failing stage.
    pub failure: Option<String>,
}

impl StructureCertificate {
    fn new(input: &AnsatzInput) -> Self {
        Self {
            algebra: input.alg.name().to_string(),
            lambda: input.alg.lambda().cloned(),
            omega: input.omega.clone(),
            psi_minus: input.psi_minus.clone(),
            eta: input.eta.clone(),
            x: None,
            eta_of_x: None,
            preconditions: vec![],
            su3: vec![],
            field_d: None,
            h_orientation: 0,
            normalization: None,
            psi_plus: None,
            residuals: None,
            phi: None,
            star: None,
            positivity: None,
            coclosed: false,
            purely_coclosed: false,
            star_exact: None,
            metric: None,
            inverse_relation: None,
            failure: None,
        }
    }

    fn fail(mut self, stage: impl Into<String>) -> Self {
        self.failure = Some(stage.into());
        self
    }

    pub fn residuals_vanish(&self) -> bool {
        self.residuals.as_ref().is_some_and(|r| r.iter().all(KForm::is_zero))
    }

    /// All residuals vanish, `φ` is definite and the conclusions were
    /// re-verified.
    pub fn valid(&self) -> bool {
        self.failure.is_none()
            && self.residuals_vanish()
            && self.positivity.is_some()
            && self.coclosed
            && self.purely_coclosed
    }

    pub fn verdict(&self) -> &'static str {
        if self.valid() {
            "valid"
        } else {
            "invalid"
        }
    }

    pub fn to_json(&self) -> Value {
        let clauses = |cs: &[Clause]| -> Value {
            cs.iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect()
        };
        let opt_form = |f: &Option<KForm<Rational>>| f.as_ref().map(report::form);
        json!({
            "algebra": self.algebra,
            "lambda": self.lambda.as_ref().map(report::rational),
            "verdict": self.verdict(),
            "failure": self.failure,
            "omega": report::form(&self.omega),
            "psi_minus": report::form(&self.psi_minus),
            "eta": report::form(&self.eta),
            "X": self.x.as_ref().map(|x| report::vector(x)),
            "eta_of_X": self.eta_of_x.as_ref().map(report::rational),
            "preconditions": clauses(&self.preconditions),
            "su3": clauses(&self.su3),
            "field_d": self.field_d.as_ref().map(report::rational),
            "h_orientation": self.h_orientation,
            "normalization": self.normalization.as_ref().map(|(p, o)| json!({
                "psi_plus_wedge_psi_minus": report::rational(p),
                "omega_cubed": report::rational(o),
            })),
            "psi_plus": opt_form(&self.psi_plus),
            "residuals": self.residuals.as_ref().map(|r| json!({
                "d_psi_minus": report::form(&r[0]),
                "omega_d_omega_minus_psi_minus_d_eta": report::form(&r[1]),
                "omega2_d_eta_plus_2_psi_plus_d_omega": report::form(&r[2]),
            })),
            "phi": opt_form(&self.phi),
            "star_phi": opt_form(&self.star),
            "positivity": self.positivity.as_ref().map(|(o, det)| json!({
                "orientation": o,
                "det_b": report::rational(det),
            })),
            "coclosed": self.coclosed,
            "purely_coclosed": self.purely_coclosed,
            "star_phi_exact": self.star_exact,
            "metric_b_proportional_to_h_plus_eta2": self.metric.as_ref().map(|m| json!({
                "factor": m.factor.as_ref().map(report::quad),
                "ninth_power_equals_det_b": m.ninth_power,
            })),
            "inverse_metric_relation": self.inverse_relation.as_ref().map(|r| json!({
                "factor": r.factor.as_ref().map(report::rational),
                "holds": r.holds,
            })),
        })
    }
}

fn clause(name: &'static str, passed: bool, detail: impl Into<String>) -> Clause {
    Clause {
        name,
        passed,
        detail: detail.into(),
    }
}

/// `c` with `a = c·b`.
fn proportional<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> Option<S> {
    let (ra, rb) = (a.entries(), b.entries());
    let pivot = rb.iter().position(|x| !x.is_zero())?;
    let c = ra[pivot].clone() / rb[pivot].clone();
    ra.iter().zip(rb).all(|(x, y)| *x == c.mul_ref(y)).then_some(c)
}

fn metric_check(
    red: &Reduction,
    h6: &Matrix<QuadScalar>,
    orientation: i8,
    eta: &KForm<Rational>,
    g2: &G2Form,
) -> MetricCheck {
    let f = red.frame_matrix().map(QuadScalar::from_rational);
    let h = h6.scale(&QuadScalar::from_i64(orientation.into()));
    let lifted = f.transpose().mul(&h).and_then(|m| m.mul(&f)).expect("shapes");
    let e = eta.to_coords();
    let mut g = lifted;
    for i in 0..DIM {
        for j in 0..DIM {
            g[(i, j)] = g[(i, j)].add_ref(&QuadScalar::from_rational(&(&e[i] * &e[j])));
        }
    }
    let factor = proportional(&g2.b.map(QuadScalar::from_rational), &g);
    let ninth_power = factor.as_ref().is_some_and(|v| {
        let v9 = (0..8).fold(v.clone(), |acc, _| acc.mul_ref(v));
        v9 == QuadScalar::from_rational(&g2.det_b)
    });
    MetricCheck { factor, ninth_power }
}

/// Checks the hypotheses, builds `φ` and `*φ`, and re-verifies the
/// conclusions independently. Stops at the first failing stage and
/// returns what was computed up to that point.
pub fn verify(input: &AnsatzInput) -> StructureCertificate {
    let mut cert = StructureCertificate::new(input);
    let alg = &input.alg;
    let (omega, psi_minus, eta) = (&input.omega, &input.psi_minus, &input.eta);

    let x = match &input.x {
        Some(x) => x.clone(),
        None => match infer_x(alg, omega, psi_minus, eta) {
            Ok(x) => x,
            Err(e) => return cert.fail(format!("preconditions: {e}")),
        },
    };
    let ex = eval_covector(eta, &x);
    let central = alg.center().contains(&x);
    let iota_omega = omega.interior(&x).expect("grade 2");
    let iota_psi = psi_minus.interior(&x).expect("grade 3");
    cert.preconditions = vec![
        clause("X_central", central, report::vector_label(&x)),
        clause("iota_X_omega", iota_omega.is_zero(), iota_omega.to_string()),
        clause("iota_X_psi_minus", iota_psi.is_zero(), iota_psi.to_string()),
        clause("eta_of_X_nonzero", !ex.is_zero(), fmt_rational(&ex)),
    ];
    cert.x = Some(x.clone());
    cert.eta_of_x = Some(ex);
    if let Some(c) = cert.preconditions.iter().find(|c| !c.passed) {
        let name = c.name;
        return cert.fail(format!("preconditions: {name}"));
    }

    let red = Reduction::new(&x);
    let (omega6, psi6) = (red.reduce(omega), red.reduce(psi_minus));
    let su3 = su3_check(&omega6, &psi6, &SixSpace::default());
    cert.su3 = su3.clauses.clone();
    let Some(data) = su3.data.filter(|_| su3.clauses.iter().all(|c| c.passed)) else {
        let names: Vec<&str> = su3.clauses.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        return cert.fail(format!("su3: {}", names.join(", ")));
    };
    cert.field_d = Some(data.acs.field.d().clone());
    cert.h_orientation = data.h_orientation;
    cert.normalization = Some((data.psi_wedge_ratio.clone(), data.omega_cubed_ratio.clone()));
    let psi_plus = red.lift(&data.psi_plus);
    cert.psi_plus = Some(psi_plus.clone());

    let d_omega = alg.ce_d(omega);
    let d_eta = alg.ce_d(eta);
    let omega2 = omega.wedge(omega);
    cert.residuals = Some([
        alg.ce_d(psi_minus),
        omega.wedge(&d_omega).sub(&psi_minus.wedge(&d_eta)),
        omega2.wedge(&d_eta).add(&psi_plus.wedge(&d_omega).scale(&Rational::from_integer(2.into()))),
    ]);

    let phi = omega.wedge(eta).add(&psi_plus);
    let star = star_ansatz(omega, psi_minus, eta);
    cert.phi = Some(phi.clone());
    cert.star = Some(star.clone());
    let g2 = match G2Form::recognize(&phi) {
        Ok(g) => g,
        Err(e) => return cert.fail(format!("positivity: {e}")),
    };
    cert.positivity = Some((g2.orientation, g2.det_b.clone()));
    cert.coclosed = alg.ce_d(&star).is_zero();
    cert.purely_coclosed = cert.coclosed && phi.wedge(&alg.ce_d(&phi)).is_zero();
    cert.star_exact = Some(alg.is_exact(&star));
    cert.metric = Some(metric_check(&red, &data.h, data.h_orientation, eta, &g2));
    cert.inverse_relation = metric_inverse_relation_check(&phi, &star).ok();

    if !cert.residuals_vanish() {
        let names = ["dψ₋", "ω∧dω − ψ₋∧dη", "ω²∧dη + 2ψ₊∧dω"];
        let r = cert.residuals.as_ref().expect("set above");
        let bad: Vec<&str> = names.iter().zip(r).filter(|(_, f)| !f.is_zero()).map(|(n, _)| *n).collect();
        return cert.fail(format!("residuals: {}", bad.join(", ")));
    }
    if !cert.coclosed {
        return cert.fail("conclusion: d*φ ≠ 0");
    }
    if !cert.purely_coclosed {
        return cert.fail("conclusion: φ∧dφ ≠ 0");
    }
    cert
}

/// Verifies the stored row for a catalog algebra.
pub fn verify_catalog(name: &str, lambda: Option<&Rational>) -> Result<StructureCertificate, AnsatzError> {
    let row = structure_for(name, lambda).ok_or_else(|| AnsatzError::NoStructure(name.to_string()))?;
    Ok(verify(&row.instantiate(lambda)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use crate::exterior::parse_form;
    use crate::nilpotent::{lookup, GongSpec};

    fn f(s: &str) -> KForm<Rational> {
        parse_form(s, 7).unwrap()
    }

    #[test]
    fn reduction_round_trip() {
        let x = vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(2, 1), rat(0, 1)];
        let red = Reduction::new(&x);
        assert_eq!(red.pivot, 6);
        for fi in &red.frame {
            assert!(eval_covector(fi, &x).is_zero());
        }
        let six = parse_form("e12 + 3e45 - e36", 6).unwrap();
        let lifted = red.lift(&six);
        assert!(lifted.interior(&x).unwrap().is_zero());
        assert_eq!(red.reduce(&lifted), six);
    }

    #[test]
    fn x_for_stored_rows() {
        let g = lookup("12357A").unwrap().build(None).unwrap();
        let row = structure_for("12357A", None).unwrap().instantiate(None).unwrap();
        let x = infer_x(&g, &row.omega, &row.psi_minus, &row.eta).unwrap();
        assert_eq!(x, crate::nilpotent::unit(7));
        let row = structure_for("12457C", None).unwrap().instantiate(None).unwrap();
        assert_eq!(
            infer_x(&row.alg, &row.omega, &row.psi_minus, &row.eta).unwrap(),
            crate::nilpotent::unit(7)
        );
        let row = structure_for("23457E", None).unwrap().instantiate(None).unwrap();
        assert_eq!(
            infer_x(&row.alg, &row.omega, &row.psi_minus, &row.eta).unwrap(),
            crate::nilpotent::unit(6)
        );
    }

    #[test]
    fn abelian_standard_triple() {
        let g = LieAlgebra::from_gong("abelian", &GongSpec::new("(0^7)"), None).unwrap();
        let input = AnsatzInput {
            alg: g.clone(),
            omega: f("e12 + e34 + e56"),
            psi_minus: f("e136 + e145 + e235 - e246"),
            eta: f("e7"),
            x: None,
        };
        let c = verify(&input);
        assert!(c.valid(), "{:?}", c.failure);
        assert_eq!(c.phi.unwrap(), f("e127 + e347 + e567 + e135 - e146 - e236 - e245"));
        assert!(c.metric.unwrap().holds());
        let bad = AnsatzInput {
            omega: f("e17 + e34 + e56"),
            eta: f("e1"),
            ..input
        };
        assert_eq!(
            infer_x(&g, &bad.omega, &bad.psi_minus, &bad.eta),
            Err(AnsatzError::NoCoorientation)
        );
        assert!(!verify(&bad).valid());
    }
}
