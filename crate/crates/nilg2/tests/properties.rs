mod common;

use common::*;
use nilg2::exact_algebra::rat;
use nilg2::exterior::{monomials, KForm};
use nilg2::nilpotent::catalog;
use nilg2::{Matrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn form(dim: usize, grade: usize) -> impl Strategy<Value = KForm<Rational>> {
    let n = monomials(dim, grade).len();
    prop::collection::vec((0..n, coeff()), 0..6).prop_map(move |terms| {
        let monos = monomials(dim, grade);
        KForm::from_terms(dim, grade, terms.into_iter().map(|(i, c)| (monos[i], c)))
    })
}

fn any_form(dim: usize) -> impl Strategy<Value = KForm<Rational>> {
    (0..=dim).prop_flat_map(move |k| form(dim, k))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coeff(), dim)
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |e| Matrix::from_rows(e.chunks(n).map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()))
        .prop_filter("invertible", |m| !m.det().unwrap().is_zero())
}

fn integer_3form_on_6() -> impl Strategy<Value = KForm<Rational>> {
    prop::collection::vec(-3i64..=3, 20).prop_map(|c| {
        KForm::from_terms(6, 3, monomials(6, 3).into_iter().zip(c.into_iter().map(|x| rat(x, 1))))
    })
}

fn check(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_graded_commutative(a in any_form(7), b in any_form(7)) {
        check(wedge_anticommutes(&a, &b))?;
    }

    #[test]
    fn wedge_is_associative(a in any_form(7), b in any_form(7), c in any_form(7)) {
        check(wedge_associates(&a, &b, &c))?;
    }

    #[test]
    fn interior_is_an_antiderivation(v in vector(7), a in any_form(7), b in any_form(7)) {
        check(interior_antiderivation(&v, &a, &b))?;
    }

    #[test]
    fn interior_products_anticommute(v in vector(7), w in vector(7), a in any_form(7)) {
        check(interiors_anticommute(&v, &w, &a))?;
    }

    #[test]
    fn hat_inverts_contraction(rho in any_form(7), p in 1i64..=5, q in 1i64..=3) {
        check(hat_round_trip(&rho, &rat(p, q)))?;
    }

    #[test]
    fn b_of_four_forms_is_odd(rho in form(7, 4)) {
        check(b_is_odd(&rho))?;
    }

    #[test]
    fn j_squares_to_minus_identity(a in matrix(6)) {
        check(j_squares_to_minus_one(&a))?;
    }

    #[test]
    fn k_squares_to_lambda_identity(psi in integer_3form_on_6()) {
        check(k_squares_to_lambda(&psi))?;
    }

    #[test]
    fn hitchin_invariants_match_the_brute_force_oracle(psi in integer_3form_on_6()) {
        check(oracle_agrees(&psi))?;
    }

    #[test]
    fn b_of_three_forms_is_a_congruence(a in matrix(7)) {
        check(b_is_a_congruence(&f(STD_PHI, 7), &a))?;
    }

    #[test]
    fn d_squared_is_zero(i in 0..catalog().len(), a in any_form(7)) {
        let e = &catalog()[i];
        let g = e.build(e.family.map(|_| rat(2, 1)).as_ref()).unwrap();
        check(d_squared_vanishes(&g, &a))?;
    }
}
