//! Checks and oracles shared by the property suite and the acceptance
//! runner. Each check returns `Err` with a description on failure.
#![allow(dead_code)]

use nilg2::exact_algebra::rat;
use nilg2::exterior::{contract_multivector, hat, monomials, parse_form, pullback, KForm};
use nilg2::g2::{b_matrix_3form, b_matrix_4form, background_volume};
use nilg2::nilpotent::LieAlgebra;
use nilg2::stable_forms::{acs_and_psi_plus, hitchin_k, hitchin_lambda, SixSpace};
use nilg2::{Matrix, QuadScalar, Rational};
use num_traits::Zero;
use rand::Rng;

pub const STD_PHI: &str = "e127 + e347 + e567 + e135 - e146 - e236 - e245";
pub const STD_STAR: &str = "e3456 + e1256 + e1234 - e2467 + e2357 + e1457 + e1367";
pub const STD_PSI_MINUS: &str = "e136 + e145 + e235 - e246";

pub type Check = Result<(), String>;

pub fn f(s: &str, dim: usize) -> KForm<Rational> {
    parse_form(s, dim).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn sign(p: usize, q: usize) -> Rational {
    rat(if (p * q) % 2 == 0 { 1 } else { -1 }, 1)
}

pub fn wedge_anticommutes(a: &KForm<Rational>, b: &KForm<Rational>) -> Check {
    let lhs = a.wedge(b);
    let rhs = b.wedge(a).scale(&sign(a.grade(), b.grade()));
    ensure(lhs == rhs, || format!("a∧b ≠ ±b∧a for a = {a}, b = {b}"))
}

pub fn wedge_associates(a: &KForm<Rational>, b: &KForm<Rational>, c: &KForm<Rational>) -> Check {
    ensure(a.wedge(b).wedge(c) == a.wedge(&b.wedge(c)), || {
        format!("(a∧b)∧c ≠ a∧(b∧c) for {a}, {b}, {c}")
    })
}

pub fn interior_antiderivation(v: &[Rational], a: &KForm<Rational>, b: &KForm<Rational>) -> Check {
    if a.grade() + b.grade() == 0 {
        return Ok(());
    }
    let i = |x: &KForm<Rational>| {
        if x.grade() == 0 {
            KForm::zero(x.dim(), 0)
        } else {
            x.interior(v).unwrap()
        }
    };
    let lhs = i(&a.wedge(b));
    let mut rhs = KForm::zero(a.dim(), a.grade() + b.grade() - 1);
    if a.grade() > 0 {
        rhs = rhs.add(&i(a).wedge(b));
    }
    if b.grade() > 0 {
        rhs = rhs.add(&a.wedge(&i(b)).scale(&sign(a.grade(), 1)));
    }
    ensure(lhs == rhs, || format!("ι_v(a∧b) rule fails for a = {a}, b = {b}"))
}

pub fn interiors_anticommute(v: &[Rational], w: &[Rational], a: &KForm<Rational>) -> Check {
    if a.grade() < 2 {
        return Ok(());
    }
    let vw = a.interior(w).unwrap().interior(v).unwrap();
    let wv = a.interior(v).unwrap().interior(w).unwrap();
    ensure(vw.add(&wv).is_zero(), || format!("ι_vι_w + ι_wι_v ≠ 0 on {a}"))
}

pub fn hat_round_trip(rho: &KForm<Rational>, vol: &Rational) -> Check {
    let omega = background_volume().scale(vol);
    let h = hat(rho, &omega).map_err(|e| e.to_string())?;
    ensure(contract_multivector(&h, &omega) == *rho, || format!("ι_ρ̂Ω ≠ ρ for ρ = {rho}"))
}

pub fn b_is_odd(rho: &KForm<Rational>) -> Check {
    let vol = background_volume();
    let b = b_matrix_4form(rho, &vol).b;
    let bn = b_matrix_4form(&rho.neg(), &vol).b;
    ensure(bn == b.scale(&rat(-1, 1)), || format!("B_(-ρ) ≠ -B_ρ for ρ = {rho}"))
}

/// `J² = −Id` for the structure induced by `A*ψ₋` with `ψ₋` standard.
pub fn j_squares_to_minus_one(a: &Matrix<Rational>) -> Check {
    let psi = pullback(&f(STD_PSI_MINUS, 6), a);
    let acs = acs_and_psi_plus(&psi, &SixSpace::default()).map_err(|e| e.to_string())?;
    let j2 = acs.j.mul(&acs.j).unwrap();
    ensure(j2 == Matrix::identity(6).scale(&QuadScalar::rational(rat(-1, 1))), || {
        format!("J² ≠ -Id for ψ₋ = {psi}")
    })
}

pub fn k_squares_to_lambda(psi: &KForm<Rational>) -> Check {
    let s = SixSpace::default();
    let k = hitchin_k(psi, &s);
    let lambda = hitchin_lambda(psi, &s);
    ensure(k.mul(&k).unwrap() == Matrix::identity(6).scale(&lambda), || {
        format!("K² ≠ λ·Id for ψ = {psi}")
    })
}

pub fn b_is_a_congruence(phi: &KForm<Rational>, a: &Matrix<Rational>) -> Check {
    let b = b_matrix_3form(phi);
    let expected = a.transpose().mul(&b).unwrap().mul(a).unwrap().scale(&a.det().unwrap());
    ensure(b_matrix_3form(&pullback(phi, a)) == expected, || format!("b(A*φ) ≠ det A·AᵀbA for φ = {phi}"))
}

pub fn d_squared_vanishes(g: &LieAlgebra, a: &KForm<Rational>) -> Check {
    ensure(g.ce_d(&g.ce_d(a)).is_zero(), || format!("d² ≠ 0 on {a} in {}", g.name()))
}

// Brute-force Hitchin invariants from dense alternating tensors.

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        // Insert n-1 at each position; moving it left past k entries adds k inversions.
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let moved = p.len() - pos;
            out.push((q, if moved % 2 == 0 { s } else { -s }));
        }
    }
    out
}

/// Dense `ψ_{ijk}` of a 3-form on ℝ⁶.
fn dense3(psi: &KForm<Rational>) -> Vec<Rational> {
    let mut t = vec![rat(0, 1); 216];
    for (m, c) in psi.terms() {
        let idx: Vec<usize> = m.indices().map(|i| i - 1).collect();
        for (p, s) in permutations(3) {
            let (i, j, k) = (idx[p[0]], idx[p[1]], idx[p[2]]);
            t[36 * i + 6 * j + k] = c * rat(s, 1);
        }
    }
    t
}

/// `K` from `(ι_{e_i}ψ ∧ ψ)_{I}` summed over all 120 orderings of each
/// 5-index set, then `ι_u e^{123456}` solved one coordinate at a time.
pub fn oracle_k(psi: &KForm<Rational>) -> Matrix<Rational> {
    let t = dense3(psi);
    let perms = permutations(5);
    let mut k = Matrix::zeros(6, 6);
    for i in 0..6 {
        for j in 0..6 {
            let rest: Vec<usize> = (0..6).filter(|&x| x != j).collect();
            let mut sum = rat(0, 1);
            for (p, s) in &perms {
                let q: Vec<usize> = p.iter().map(|&x| rest[x]).collect();
                let alpha = &t[36 * i + 6 * q[0] + q[1]];
                let rest3 = &t[36 * q[2] + 6 * q[3] + q[4]];
                sum += alpha * rest3 * rat(*s, 1);
            }
            let beta = sum / rat(12, 1);
            k[(j, i)] = if j % 2 == 0 { beta } else { -beta };
        }
    }
    k
}

pub fn oracle_lambda(psi: &KForm<Rational>) -> Rational {
    let k = oracle_k(psi);
    k.mul(&k).unwrap().trace() / rat(6, 1)
}

pub fn oracle_agrees(psi: &KForm<Rational>) -> Check {
    let s = SixSpace::default();
    ensure(hitchin_k(psi, &s) == oracle_k(psi), || format!("K differs from the oracle for {psi}"))?;
    ensure(hitchin_lambda(psi, &s) == oracle_lambda(psi), || format!("λ differs from the oracle for {psi}"))
}

// Seeded generators for the acceptance runner.

pub fn random_form<R: Rng>(rng: &mut R, dim: usize, grade: usize, density: f64) -> KForm<Rational> {
    let mut terms = Vec::new();
    for m in monomials(dim, grade) {
        if rng.gen_bool(density) {
            terms.push((m, rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))));
        }
    }
    KForm::from_terms(dim, grade, terms)
}

pub fn random_integer_form<R: Rng>(rng: &mut R, dim: usize, grade: usize) -> KForm<Rational> {
    let terms = monomials(dim, grade)
        .into_iter()
        .map(|m| (m, rat(rng.gen_range(-3..=3), 1)));
    KForm::from_terms(dim, grade, terms)
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=2))).collect()
}

/// An invertible matrix with small rational entries.
pub fn random_gl<R: Rng>(rng: &mut R, n: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2), rng.gen_range(1..=2))).collect())
                .collect(),
        );
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}
