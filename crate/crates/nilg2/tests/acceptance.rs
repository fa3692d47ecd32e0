//! Acceptance runner: one line per criterion.
//!
//! Criteria with a documented, analysed failure are listed in
//! `EXPECTED_FAILURES`. They print XFAIL only when the failure is exactly
//! the documented one; any other failure, or a pass (XPASS), fails the run.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use nilg2::ansatz::{classify, default_samples, verify_catalog, Classification, Outcome};
use nilg2::exact_algebra::{rat, rational_to_f64};
use nilg2::exterior::{monomials, pullback, FormSubspace, KForm};
use nilg2::g2::{b_matrix_4form, background_volume, metric_inverse_relation_check, proportionality, star_numeric, G2Form};
use nilg2::nilpotent::{catalog, lookup, unit, LieAlgebra};
use nilg2::obstructions::{auto, diagonal_entry, obstruction4, Method, SearchConfig, Verdict, Witness};
use nilg2::{Matrix, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

const FIVE_STEP_VERIFIED: [&str; 25] = [
    "12357A", "12357B", "12357B1", "12357C", "12457A", "12457B", "12457C", "12457D", "12457E", "12457G",
    "12457H", "12457I", "12457J", "12457J1", "12457K", "12457L1", "12457N", "12457N1", "12457N2", "13457D",
    "13457F", "23457C", "23457D", "23457E", "23457G",
];

const EXCLUDED: [(&str, Method); 11] = [
    ("13457A", Method::First),
    ("13457B", Method::First),
    ("13457C", Method::First),
    ("23457A", Method::Second),
    ("12457F", Method::Third),
    ("12457L", Method::Third),
    ("13457E", Method::Third),
    ("13457G", Method::Third),
    ("13457I", Method::Third),
    ("23457B", Method::Fourth),
    ("23457F", Method::Fourth),
];

const SIX_STEP: [&str; 9] = [
    "123457A", "123457B", "123457C", "123457D", "123457E", "123457F", "123457H", "123457H1", "123457I",
];

/// Algebras on which the third obstruction cannot hold: closed 3-forms
/// with `λ < 0` exist inside `H`.
const UNOBSTRUCTABLE: [&str; 2] = ["12457F", "12457L"];

const EXPECTED_FAILURES: [u8; 3] = [1, 3, 10];

struct Report {
    passed: bool,
    /// The failure is exactly the documented one.
    documented: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Report {
    Report {
        passed: true,
        documented: false,
        detail: detail.into(),
    }
}

fn fail(documented: bool, detail: impl Into<String>) -> Report {
    Report {
        passed: false,
        documented,
        detail: detail.into(),
    }
}

fn set<'a>(it: impl IntoIterator<Item = &'a str>) -> BTreeSet<&'a str> {
    it.into_iter().collect()
}

fn alg(name: &str) -> LieAlgebra {
    lookup(name).unwrap().build(None).unwrap()
}

fn criterion1(c: &Classification, elapsed: Duration) -> Report {
    let status = c.algebra_status();
    let five: Vec<_> = status.iter().filter(|s| s.1 == 5).collect();
    let with = |label: &str| -> BTreeSet<&str> { five.iter().filter(|s| s.2 == label).map(|s| s.0).collect() };
    let (verified, obstructed, incomplete) = (with("verified"), with("obstructed"), with("incomplete"));
    let positive = c.entries.iter().all(|e| match &e.outcome {
        Outcome::Obstructed(cert) => cert.verdict.holds(),
        Outcome::Verified(cert) => cert.residuals_vanish(),
        _ => true,
    });
    let expected_obstructed = set(EXCLUDED.iter().map(|e| e.0));
    let detail = format!(
        "{} five-step algebras: {} verified, {} obstructed, incomplete {:?}; {:.2}s",
        five.len(),
        verified.len(),
        obstructed.len(),
        incomplete,
        elapsed.as_secs_f64()
    );
    if five.len() == 36
        && verified == set(FIVE_STEP_VERIFIED)
        && obstructed == expected_obstructed
        && positive
        && elapsed < Duration::from_secs(300)
    {
        return pass(detail);
    }
    let documented = verified == set(FIVE_STEP_VERIFIED)
        && incomplete == set(UNOBSTRUCTABLE)
        && obstructed == &expected_obstructed - &set(UNOBSTRUCTABLE)
        && positive;
    fail(documented, detail)
}

fn criterion2(c: &Classification) -> Report {
    let status = c.algebra_status();
    let verified: BTreeSet<&str> = status.iter().filter(|s| s.1 == 6 && s.2 == "verified").map(|s| s.0).collect();
    let mut problems = Vec::new();
    for l in [rat(0, 1), rat(2, 1), rat(1, 2)] {
        match verify_catalog("123457I", Some(&l)) {
            Ok(cert) if cert.valid() && cert.residuals_vanish() => {}
            Ok(cert) => problems.push(format!("123457I({l}): {:?}", cert.failure)),
            Err(e) => problems.push(format!("123457I({l}): {e}")),
        }
    }
    let detail = format!("{} of 9 six-step algebras verified; 123457I at 0, 2, 1/2", verified.len());
    if verified == set(SIX_STEP) && problems.is_empty() {
        pass(detail)
    } else {
        fail(false, format!("{detail}; {problems:?}"))
    }
}

fn criterion3() -> Report {
    let cfg = SearchConfig::default();
    let mut wrong = Vec::new();
    for (name, expected) in EXCLUDED {
        match auto(&alg(name), &cfg) {
            Ok(c) if c.method == expected => {}
            Ok(c) => wrong.push((name, format!("{} instead of {expected}", c.method))),
            Err(_) => wrong.push((name, "no method holds".to_string())),
        }
    }
    if wrong.is_empty() {
        return pass("auto matches on all 11 excluded algebras");
    }
    let documented = set(wrong.iter().map(|w| w.0)) == set(UNOBSTRUCTABLE)
        && wrong.iter().all(|w| w.1 == "no method holds");
    let detail: Vec<String> = wrong.iter().map(|(n, w)| format!("{n}: {w}")).collect();
    fail(
        documented,
        format!("{} of 11 match; {}", 11 - wrong.len(), detail.join(", ")),
    )
}

fn criterion4() -> Report {
    let e1 = unit(1);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["23457B", "23457F"] {
        let g = alg(name);
        let c = obstruction4(&g, SearchConfig::default().covector_budget);
        let v = match &c.witness {
            Witness::Fourth { v, .. } => v.clone(),
            _ => None,
        };
        if c.verdict != Verdict::Holds || v.as_deref() != Some(&e1[..]) {
            return fail(false, format!("{name}: {} at {v:?}", c.verdict.as_str()));
        }
        if !diagonal_entry(&g, &e1).is_zero() {
            return fail(false, format!("{name}: B(e1, e1) is not identically zero"));
        }
        // Spot check against the full matrix at random closed 4-forms.
        let basis = g.closed_forms(4).basis();
        for _ in 0..5 {
            let rho = basis
                .iter()
                .fold(KForm::zero(7, 4), |acc, z| acc.add(&z.scale(&rat(rng.gen_range(-9..=9), 1))));
            if !b_matrix_4form(&rho, &background_volume()).b[(0, 0)].is_zero() {
                return fail(false, format!("{name}: B_ρ(e1, e1) ≠ 0 at ρ = {rho}"));
            }
        }
    }
    pass("v = e1 for 23457B and 23457F; B(e1, e1) ≡ 0 over the closed 4-forms")
}

fn criterion5(c: &Classification) -> Report {
    let mut count = 0;
    for e in &c.entries {
        let Outcome::Verified(cert) = &e.outcome else { continue };
        let g = lookup(e.algebra).unwrap().build(e.lambda.as_ref()).unwrap();
        let image: Vec<KForm<Rational>> = monomials(7, 3)
            .into_iter()
            .map(|m| g.ce_d(&KForm::monomial(7, m, rat(1, 1))))
            .collect();
        let star = cert.star.as_ref().unwrap();
        if FormSubspace::span(7, 4, &image).contains(star) || cert.star_exact != Some(false) {
            return fail(false, format!("{}: *φ is exact", e.name));
        }
        count += 1;
    }
    if count >= 34 {
        pass(format!("*φ ∉ d(Λ³) for all {count} verified structures"))
    } else {
        fail(false, format!("only {count} verified structures"))
    }
}

fn criterion6() -> Report {
    let mut instances = 0;
    for e in catalog() {
        let lambdas: Vec<Option<Rational>> = match e.family {
            None => vec![None],
            Some(a) => default_samples().into_iter().filter(|l| a.admits(l)).map(Some).collect(),
        };
        for l in lambdas {
            let g = match e.build(l.as_ref()) {
                Ok(g) => g,
                Err(err) => return fail(false, format!("{}: {err}", e.name)),
            };
            for k in 0..=7 {
                for m in monomials(7, k) {
                    if d_squared_vanishes(&g, &KForm::monomial(7, m, rat(1, 1))).is_err() {
                        return fail(false, format!("{}: d² ≠ 0 on e{m}", g.name()));
                    }
                }
            }
            if g.step() != Some(e.step) || g.center_matches_declared() != Some(true) {
                return fail(false, format!("{}: step {:?} or center mismatch", g.name(), g.step()));
            }
            instances += 1;
        }
    }
    pass(format!("{} algebras, {instances} instances: d² = 0, step and center match", catalog().len()))
}

fn criterion7() -> Report {
    let phi = f(STD_PHI, 7);
    let star = f(STD_STAR, 7);
    let g = match G2Form::recognize(&phi) {
        Ok(g) => g,
        Err(e) => return fail(false, e.to_string()),
    };
    if g.b != Matrix::identity(7) || g.det_b != rat(1, 1) {
        return fail(false, "standard φ: b ≠ Id");
    }
    if phi.wedge(&star) != background_volume().scale(&rat(7, 1)) {
        return fail(false, "standard φ: φ∧*φ ≠ 7Ω");
    }
    let big_b = b_matrix_4form(&star, &background_volume()).b;
    match proportionality(&big_b, &Matrix::identity(7)) {
        Some(c) if c.is_positive() => {}
        other => return fail(false, format!("B_(*φ) not a positive multiple of Id: {other:?}")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = vec![(phi.clone(), star.clone())];
    for _ in 0..10 {
        let a = random_gl(&mut rng, 7);
        cases.push((pullback(&phi, &a), pullback(&star, &a)));
    }
    for (i, (p, s)) in cases.iter().enumerate() {
        match metric_inverse_relation_check(p, s) {
            Ok(r) if r.holds => {}
            other => return fail(false, format!("case {i}: {other:?}")),
        }
    }
    pass("b = Id, vol = Ω, B_(*φ) ∝ Id; inverse relation on standard + 10 GL(7,Q) images")
}

fn criterion8() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let psi = random_integer_form(&mut rng, 6, 3);
        if let Err(e) = oracle_agrees(&psi).and_then(|_| k_squares_to_lambda(&psi)) {
            return fail(false, format!("form {i}: {e}"));
        }
    }
    pass("100 random integer 3-forms: K and λ match the brute-force oracle, K² = λ·Id")
}

fn criterion9() -> Report {
    const N: usize = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let grade = |rng: &mut ChaCha8Rng| rng.gen_range(0..=7);
    type Prop = Box<dyn FnMut(&mut ChaCha8Rng) -> Check>;
    let props: Vec<(&str, Prop)> = vec![
        (
            "wedge anticommutativity",
            Box::new(move |r| {
                let (p, q) = (grade(r), grade(r));
                wedge_anticommutes(&random_form(r, 7, p, 0.3), &random_form(r, 7, q, 0.3))
            }),
        ),
        (
            "contraction antiderivation",
            Box::new(|r| {
                let (p, q) = (r.gen_range(0..=7), r.gen_range(0..=7));
                let v = random_vector(r, 7);
                interior_antiderivation(&v, &random_form(r, 7, p, 0.3), &random_form(r, 7, q, 0.3))
            }),
        ),
        (
            "ι_vι_w + ι_wι_v = 0",
            Box::new(|r| {
                let p = r.gen_range(2..=7);
                let (v, w) = (random_vector(r, 7), random_vector(r, 7));
                interiors_anticommute(&v, &w, &random_form(r, 7, p, 0.4))
            }),
        ),
        ("B_(-ρ) = -B_ρ", Box::new(|r| b_is_odd(&random_form(r, 7, 4, 0.3)))),
        ("J² = -Id", Box::new(|r| j_squares_to_minus_one(&random_gl(r, 6)))),
    ];
    let mut done = Vec::new();
    for (name, mut prop) in props {
        for i in 0..N {
            if let Err(e) = prop(&mut rng) {
                return fail(false, format!("{name}, instance {i}: {e}"));
            }
        }
        done.push(name);
    }
    pass(format!("{N} exact instances each: {}", done.join(", ")))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn criterion10(c: &Classification) -> Report {
    // Round trip: ** = id on 2- and 3-forms in dimension 7.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut round_trip = 0.0f64;
    for _ in 0..5 {
        let phi = pullback(&f(STD_PHI, 7), &random_gl(&mut rng, 7));
        for k in [2, 3] {
            for m in monomials(7, k) {
                let a = KForm::<f64>::monomial(7, m, 1.0);
                let back = star_numeric(&phi, &star_numeric(&phi, &a).unwrap()).unwrap();
                round_trip = round_trip.max(max_diff(&back.to_coords(), &a.to_coords()));
            }
        }
    }
    if round_trip > TOL {
        return fail(false, format!("** ≠ id: max error {round_trip:.2e}"));
    }

    // Ansatz dual against the numeric Hodge dual.
    let (mut worst, mut worst_name) = (0.0f64, String::new());
    let (mut fit_residual, mut fit_range) = (0.0f64, (f64::INFINITY, 0.0f64));
    let mut bad = 0;
    let mut total = 0;
    for e in &c.entries {
        let Outcome::Verified(cert) = &e.outcome else { continue };
        total += 1;
        let phi = cert.phi.as_ref().unwrap();
        let numeric = star_numeric(phi, &phi.map(rational_to_f64)).unwrap().to_coords();
        let exact: Vec<f64> = cert.star.as_ref().unwrap().to_coords().iter().map(rational_to_f64).collect();
        let d = max_diff(&numeric, &exact);
        if d > TOL {
            bad += 1;
        }
        if d > worst {
            worst = d;
            worst_name = e.name.clone();
        }
        // Least-squares fit of the numeric dual to a·(ω²/2 − ψ₋∧η).
        let alt: Vec<f64> = cert
            .omega
            .wedge(&cert.omega)
            .scale(&rat(1, 2))
            .sub(&cert.psi_minus.wedge(&cert.eta))
            .to_coords()
            .iter()
            .map(rational_to_f64)
            .collect();
        let a = numeric.iter().zip(&alt).map(|(x, y)| x * y).sum::<f64>() / alt.iter().map(|y| y * y).sum::<f64>();
        let scaled: Vec<f64> = alt.iter().map(|y| a * y).collect();
        fit_residual = fit_residual.max(max_diff(&numeric, &scaled));
        fit_range = (fit_range.0.min(a), fit_range.1.max(a));
    }
    let detail = format!(
        "** = id within {round_trip:.1e}; ansatz *φ differs from the numeric dual on {bad}/{total} \
         (worst {worst:.3e} at {worst_name}); numeric dual = a·(ω²/2 - ψ₋∧η) with a ∈ [{:.4}, {:.4}], \
         fit residual {fit_residual:.1e}",
        fit_range.0, fit_range.1
    );
    if bad == 0 {
        pass(detail)
    } else {
        fail(bad == total && total > 0 && fit_residual < 1e-8 && fit_range.0 > 0.0, detail)
    }
}

fn main() {
    let start = Instant::now();
    let classification = classify(&default_samples(), &SearchConfig::default());
    let elapsed = start.elapsed();

    let reports: Vec<(u8, Report)> = vec![
        (1, criterion1(&classification, elapsed)),
        (2, criterion2(&classification)),
        (3, criterion3()),
        (4, criterion4()),
        (5, criterion5(&classification)),
        (6, criterion6()),
        (7, criterion7()),
        (8, criterion8()),
        (9, criterion9()),
        (10, criterion10(&classification)),
    ];

    let mut broken = 0;
    for (n, r) in &reports {
        let expected = EXPECTED_FAILURES.contains(n);
        let label = match (r.passed, expected, r.documented) {
            (true, false, _) => "PASS",
            (true, true, _) => "XPASS",
            (false, true, true) => "XFAIL",
            (false, _, _) => "FAIL",
        };
        if label == "XPASS" || label == "FAIL" {
            broken += 1;
        }
        println!("criterion {n:>2}: {label:<5} {}", r.detail);
    }
    let passed = reports.iter().filter(|r| r.1.passed).count();
    println!(
        "{passed}/10 passed, {} expected failures, {broken} unexpected results",
        reports.len() - passed - broken
    );
    if broken > 0 {
        std::process::exit(1);
    }
}
