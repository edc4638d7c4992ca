use std::cmp::Ordering;
use std::collections::BTreeSet;

use hilbreg::numerical::binomial;
use hilbreg::term::{borel_closure, compare_degrevlex, elevations, is_borel_set, monomial_basis, Term};
use proptest::prelude::*;

fn t(s: &str, n: usize) -> Term {
    Term::parse(s, n).unwrap()
}

fn term_strategy(n: usize, deg: u32) -> impl Strategy<Value = Term> {
    let size = monomial_basis(n, deg).len();
    (0..size).prop_map(move |k| monomial_basis(n, deg).terms()[k].clone())
}

#[test]
fn spec_examples() {
    assert_eq!(compare_degrevlex(&t("x2^2", 3), &t("x3*x1", 3)).unwrap(), Ordering::Greater);
    assert_eq!(compare_degrevlex(&t("x1^2", 3), &t("x3*x0", 3)).unwrap(), Ordering::Greater);
    let b: Vec<String> = monomial_basis(3, 2).iter().map(Term::to_string).collect();
    assert_eq!(b, ["x3^2", "x3*x2", "x2^2", "x3*x1", "x2*x1", "x1^2", "x3*x0", "x2*x0", "x1*x0", "x0^2"]);
    assert_eq!(monomial_basis(0, 5).terms(), &[t("x0^5", 0)]);
    let e: BTreeSet<Term> = ["x2*x1", "x2^2", "x3*x0", "x3*x2"].iter().map(|s| t(s, 3)).collect();
    assert_eq!(elevations(&t("x2*x0", 3)), e);
    assert!(!is_borel_set([t("x3*x0", 3)].iter()).unwrap());
    let closure: Vec<String> = borel_closure([t("x3*x0", 3)].iter()).unwrap().iter().map(Term::to_string).collect();
    assert_eq!(closure, ["x3^2", "x3*x2", "x3*x1", "x3*x0"]);
}

#[test]
fn basis_sizes_exhaustive() {
    for n in 0..=5usize {
        for d in 0..=8u32 {
            let b = monomial_basis(n, d);
            assert_eq!(num_bigint::BigInt::from(b.len()), binomial(n as i64 + d as i64, n as i64));
            let mut sorted = b.terms().to_vec();
            sorted.sort_by(|u, v| compare_degrevlex(v, u).unwrap());
            assert_eq!(sorted, b.terms());
        }
    }
}

proptest! {
    #[test]
    fn degrevlex_is_a_strict_total_order(
        (u, v, w) in (1usize..=4, 0u32..=4).prop_flat_map(|(n, d)| (term_strategy(n, d), term_strategy(n, d), term_strategy(n, d)))
    ) {
        let uv = compare_degrevlex(&u, &v).unwrap();
        prop_assert_eq!(uv, compare_degrevlex(&v, &u).unwrap().reverse());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        if uv == Ordering::Greater && compare_degrevlex(&v, &w).unwrap() == Ordering::Greater {
            prop_assert_eq!(compare_degrevlex(&u, &w).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn elevations_keep_degree(u in (1usize..=4, 1u32..=4).prop_flat_map(|(n, d)| term_strategy(n, d))) {
        for e in elevations(&u) {
            prop_assert_eq!(e.degree(), u.degree());
            prop_assert!(compare_degrevlex(&e, &u).unwrap() == Ordering::Greater);
        }
    }

    #[test]
    fn closure_is_borel_idempotent_monotone(
        (n, d, picks) in (1usize..=3, 1u32..=3).prop_flat_map(|(n, d)| {
            let size = monomial_basis(n, d).len();
            (Just(n), Just(d), proptest::collection::vec(any::<bool>(), size))
        }),
        extra in any::<usize>(),
    ) {
        let basis = monomial_basis(n, d);
        let m: Vec<Term> = basis.iter().zip(&picks).filter(|(_, &p)| p).map(|(t, _)| t.clone()).collect();
        prop_assume!(!m.is_empty());
        let c = borel_closure(m.iter()).unwrap();
        prop_assert!(is_borel_set(c.iter()).unwrap());
        prop_assert_eq!(borel_closure(c.iter()).unwrap(), c.clone());
        let mut bigger = m.clone();
        bigger.push(basis.terms()[extra % basis.len()].clone());
        let cb = borel_closure(bigger.iter()).unwrap();
        prop_assert!(c.iter().all(|t| cb.contains(t)));
    }
}
