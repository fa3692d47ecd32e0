use nilg2::exact_algebra::rat;
use nilg2::exterior::{monomials, KForm};
use nilg2::nilpotent::{catalog, Admissibility};
use nilg2::Rational;

fn samples(family: Option<Admissibility>) -> Vec<Option<Rational>> {
    match family {
        None => vec![None],
        Some(a) => [rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(78, 331), rat(5, 1)]
            .into_iter()
            .filter(|l| a.admits(l))
            .map(Some)
            .collect(),
    }
}

#[test]
fn every_entry_builds_with_declared_center_and_step() {
    for e in catalog() {
        for l in samples(e.family) {
            let g = e.build(l.as_ref()).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(g.center_matches_declared(), Some(true), "{}", g.name());
            assert_eq!(g.step(), Some(e.step), "{}", g.name());
        }
    }
}

#[test]
fn d_squared_vanishes_on_all_monomials() {
    for e in catalog() {
        for l in samples(e.family) {
            let g = e.build(l.as_ref()).unwrap();
            for k in 0..7 {
                for m in monomials(7, k) {
                    let a = KForm::monomial(7, m, rat(1, 1));
                    assert!(g.ce_d(&g.ce_d(&a)).is_zero(), "{} {m:?}", g.name());
                }
            }
        }
    }
}

#[test]
fn exact_inside_closed() {
    for e in catalog().iter().filter(|e| !e.is_family()) {
        let g = e.build(None).unwrap();
        for k in 0..=7 {
            let closed = g.closed_forms(k);
            assert!(g.exact_forms(k).basis().iter().all(|f| closed.contains(f)), "{} k={k}", e.name);
        }
    }
}

#[test]
fn second_obstruction_shape_for_23457a() {
    let g = nilg2::nilpotent::lookup("23457A").unwrap().build(None).unwrap();
    for z in g.closed_forms(4).basis() {
        assert!(z.terms().all(|(m, _)| m.contains(1) || m.contains(2)));
    }
}
