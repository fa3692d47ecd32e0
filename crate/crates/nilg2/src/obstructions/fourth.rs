use num_traits::Zero;

use crate::exact_algebra::{rat, Poly, Rational};
use crate::exterior::KForm;
use crate::g2::{b_quadratic_4form, background_volume};
use crate::nilpotent::{unit, LieAlgebra, DIM};
use crate::report::vector_label;

use super::{Method, ObstructionCertificate, Verdict, Witness};

/// `e₁, …, e₇`, then `±eᵢ ± eⱼ` with leading sign `+`.
pub fn candidate_covectors() -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (1..=DIM).map(unit).collect();
    for i in 0..DIM {
        for j in i + 1..DIM {
            for s in [1, -1] {
                let mut v = vec![rat(0, 1); DIM];
                v[i] = rat(1, 1);
                v[j] = rat(s, 1);
                out.push(v);
            }
        }
    }
    out
}

/// `B_ρ(v, v)` for the generic closed 4-form `ρ = Σ a_α z_α`, as a
/// polynomial in the `a_α`.
pub fn diagonal_entry(alg: &LieAlgebra, v: &[Rational]) -> Poly {
    let generic = alg
        .closed_forms(4)
        .basis()
        .iter()
        .enumerate()
        .fold(KForm::<Poly>::zero(DIM, 4), |acc, (k, z)| {
            acc.add(&z.map(|c| Poly::constant(c.clone()) * Poly::var(k as u16)))
        });
    let v: Vec<Poly> = v.iter().cloned().map(Poly::constant).collect();
    b_quadratic_4form(&generic, &background_volume(), &v)
}

pub(super) fn check_covector(alg: &LieAlgebra, v: &[Rational]) -> (Verdict, Poly) {
    let b = diagonal_entry(alg, v);
    let verdict = if b.is_zero() {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    };
    (verdict, b)
}

pub fn obstruction4(alg: &LieAlgebra, budget: usize) -> ObstructionCertificate {
    let closed_dimension = alg.closed_forms(4).dimension();
    let mut last = None;
    let mut tried = 0;
    for v in candidate_covectors().into_iter().take(budget) {
        tried += 1;
        let (verdict, b) = check_covector(alg, &v);
        if verdict == Verdict::Holds {
            return ObstructionCertificate {
                algebra: alg.name().to_string(),
                method: Method::Fourth,
                verdict,
                rationale: format!(
                    "B_ρ(v, v) vanishes for every closed 4-form ρ at v = {}",
                    vector_label(&v)
                ),
                witness: Witness::Fourth {
                    v: Some(v),
                    diagonal: "0".into(),
                    closed_dimension,
                },
                candidates_tried: tried,
            };
        }
        last = Some((v, b));
    }
    let (diagonal, rationale) = match last {
        Some((v, b)) => (
            b.to_string(),
            format!(
                "B_ρ(v, v) is not identically zero for any of the first {tried} candidates (last: v = {})",
                vector_label(&v)
            ),
        ),
        None => (String::new(), "no candidates tried".to_string()),
    };
    ObstructionCertificate {
        algebra: alg.name().to_string(),
        method: Method::Fourth,
        verdict: Verdict::NotApplicable,
        witness: Witness::Fourth {
            v: None,
            diagonal,
            closed_dimension,
        },
        candidates_tried: tried,
        rationale,
    }
}
