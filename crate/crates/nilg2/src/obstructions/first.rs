use crate::exact_algebra::{rat, Rational};
use crate::exterior::{FormSubspace, KForm};
use crate::nilpotent::{unit, LieAlgebra, VectorSpan, DIM};
use crate::report::vector_label;

use super::{Method, ObstructionCertificate, ObstructionError, Verdict, Witness};

/// First pair `(i, j)` of basis indices with `u_i ∧ u_j ≠ 0`, including
/// `i = j`; `None` means `Λ²U = 0`.
pub fn wedge_square_vanishes(u_basis: &[KForm<Rational>]) -> Option<(usize, usize)> {
    (0..u_basis.len())
        .flat_map(|i| (i..u_basis.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !u_basis[i].wedge(&u_basis[j]).is_zero())
}

fn u_space(alg: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Vec<KForm<Rational>> {
    let images: Vec<KForm<Rational>> = alg
        .closed_forms(4)
        .basis()
        .iter()
        .map(|z| {
            z.interior(y)
                .and_then(|f| f.interior(x))
                .expect("positive grade")
        })
        .collect();
    FormSubspace::span(DIM, 2, &images).basis()
}

/// Evaluates the first obstruction at a fixed pair.
pub fn obstruction1(
    alg: &LieAlgebra,
    x: &[Rational],
    y: &[Rational],
) -> Result<ObstructionCertificate, ObstructionError> {
    if VectorSpan::new(vec![x.to_vec(), y.to_vec()]).dimension() < 2 {
        return Err(ObstructionError::DependentPair);
    }
    let u_basis = u_space(alg, x, y);
    let failing = wedge_square_vanishes(&u_basis);
    let verdict = if failing.is_none() {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    };
    let rationale = match failing {
        None => format!(
            "U = span{{ι_Xι_Yκ}} for X = {}, Y = {} has dimension {} and Λ²U = 0",
            vector_label(x),
            vector_label(y),
            u_basis.len()
        ),
        Some((i, j)) => format!("u{i} ∧ u{j} ≠ 0"),
    };
    Ok(ObstructionCertificate {
        algebra: alg.name().to_string(),
        method: Method::First,
        verdict,
        witness: Witness::First {
            x: x.to_vec(),
            y: y.to_vec(),
            u_basis,
            failing,
        },
        candidates_tried: 1,
        rationale,
    })
}

/// Vectors with entries in {−1, 0, 1}, support at most `max_support` and
/// first non-zero entry 1, ordered by support size.
fn small_vectors(max_support: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for support in 1..=max_support {
        for mask in 0u32..(1 << DIM) {
            if mask.count_ones() as usize != support {
                continue;
            }
            let idx: Vec<usize> = (0..DIM).filter(|i| mask & (1 << i) != 0).collect();
            for signs in 0u32..(1 << (support - 1)) {
                let mut v = vec![rat(0, 1); DIM];
                v[idx[0]] = rat(1, 1);
                for (k, &i) in idx.iter().enumerate().skip(1) {
                    v[i] = rat(if signs & (1 << (k - 1)) != 0 { -1 } else { 1 }, 1);
                }
                out.push(v);
            }
        }
    }
    out.sort_by_key(|v| v.iter().filter(|x| **x != rat(0, 1)).count());
    out
}

/// Candidate pairs in search order: basis pairs (those with a central
/// member first), then pairs of small integer vectors with a central `Y`
/// first.
pub fn candidate_pairs(alg: &LieAlgebra) -> impl Iterator<Item = (Vec<Rational>, Vec<Rational>)> {
    let center = alg.center();
    let mut basis_pairs: Vec<(usize, usize)> = (1..=DIM)
        .flat_map(|i| (i + 1..=DIM).map(move |j| (i, j)))
        .collect();
    basis_pairs.sort_by_key(|&(i, j)| !(center.contains(&unit(i)) || center.contains(&unit(j))));
    let first = basis_pairs.into_iter().map(|(i, j)| (unit(i), unit(j)));
    let mut vs = small_vectors(3);
    vs.sort_by_key(|v| !center.contains(v));
    let ys = vs.clone();
    let rest = ys.into_iter().flat_map(move |y| {
        let y2 = y.clone();
        vs.clone().into_iter().filter_map(move |x| {
            let basis = |v: &Vec<Rational>| v.iter().filter(|c| **c != rat(0, 1)).count() == 1;
            if (basis(&x) && basis(&y2)) || x == y2 {
                return None;
            }
            if VectorSpan::new(vec![x.clone(), y2.clone()]).dimension() < 2 {
                return None;
            }
            Some((x, y2.clone()))
        })
    });
    first.chain(rest)
}

/// Searches candidate pairs until the obstruction holds or the budget is
/// spent.
pub fn search1(alg: &LieAlgebra, budget: usize) -> ObstructionCertificate {
    let mut last = None;
    for (n, (x, y)) in candidate_pairs(alg).take(budget).enumerate() {
        let mut cert = obstruction1(alg, &x, &y).expect("independent candidates");
        cert.candidates_tried = n + 1;
        if cert.verdict == Verdict::Holds {
            return cert;
        }
        last = Some(cert);
    }
    let mut cert = last.unwrap_or_else(|| obstruction1(alg, &unit(1), &unit(2)).expect("independent"));
    cert.rationale = format!(
        "no pair among the first {budget} candidates gives Λ²U = 0 (last: {})",
        cert.rationale
    );
    cert
}
