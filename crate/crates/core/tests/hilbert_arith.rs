mod common;

use common::{corpus, corpus_cases, poly};
use hilbreg::borel::{enumerate_borel, BorelIdeal};
use hilbreg::hilbert::{gotzmann_decomposition, gotzmann_number, hilbert_function, is_admissible, macaulay_growth, HilbertContext};
use hilbreg::term::{borel_closure, monomial_basis};
use hilbreg::IntegerPolynomial;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn spec_examples() {
    assert_eq!(gotzmann_number(&poly("2t+2")).unwrap(), 3);
    assert_eq!(gotzmann_number(&poly("5")).unwrap(), 5);
    assert!(!is_admissible(&poly("2t-3")));
    assert_eq!(macaulay_growth(&BigInt::from(4), 2).unwrap(), BigInt::from(5));
    // t + 1 points of P^1 ... growth of a full degree is the next full degree
    assert_eq!(macaulay_growth(&BigInt::from(10), 2).unwrap(), BigInt::from(20));
}

#[test]
fn linear_polynomials_follow_the_closed_form() {
    // a t + b admissible iff b >= -a(a-3)/2, with r = a(a-1)/2 + b
    for a in 1..=5i64 {
        for b in -8..=8i64 {
            let p = IntegerPolynomial::linear(a, b);
            let ok = 2 * b >= -a * (a - 3);
            assert_eq!(is_admissible(&p), ok, "{a}t+{b}");
            if ok {
                assert_eq!(gotzmann_number(&p).unwrap() as i64, a * (a - 1) / 2 + b);
            }
        }
    }
}

#[test]
fn context_bookkeeping() {
    for (n, p, rp) in corpus_cases() {
        let r = gotzmann_number(&p).unwrap() as u32;
        for s in rp..=r {
            let Ok(ctx) = HilbertContext::new(n, p.clone(), rp, s) else { continue };
            assert_eq!(ctx.q_s + ctx.p_s, ctx.n_s);
            assert_eq!(ctx.q1_s + ctx.q2_s, ctx.q_s);
            assert_eq!(ctx.q1_at(s) as u64, ctx.q1_s);
        }
    }
}

#[test]
fn macaulay_bound_over_the_corpus() {
    for (n, p, rp) in corpus_cases() {
        for j in enumerate_borel(n, &p, rp).unwrap() {
            for t in 1..=6 {
                let a = hilbert_function(n, j.generators(), t);
                let b = hilbert_function(n, j.generators(), t + 1);
                assert!(b <= macaulay_growth(&a, t).unwrap(), "{:?} at t = {t}", j.generator_strings());
            }
        }
    }
}

#[test]
fn admissible_iff_some_borel_ideal() {
    for (n, p) in corpus() {
        let r = gotzmann_number(&p).unwrap() as u32;
        assert!(!enumerate_borel(n, &p, r).unwrap().is_empty(), "{n} {p}");
    }
}

proptest! {
    #[test]
    fn decomposition_is_non_increasing(a in 0i64..4, b in -3i64..12, c in 0i64..3) {
        let p = IntegerPolynomial::from_i64(&[b, a, c]);
        prop_assume!(!p.is_zero() && is_admissible(&p));
        let d = gotzmann_decomposition(&p).unwrap();
        prop_assert_eq!(d.runs[0].0, p.degree().unwrap());
        prop_assert!(d.runs.windows(2).all(|w| w[0].0 > w[1].0));
    }

    #[test]
    fn hilbert_function_agrees_with_polynomial_from_regularity(
        (n, d, picks) in (1usize..=4, 1u32..=4).prop_flat_map(|(n, d)| {
            let size = monomial_basis(n, d).len();
            (Just(n), Just(d), proptest::collection::vec(proptest::bool::weighted(0.2), size))
        })
    ) {
        let basis = monomial_basis(n, d);
        let m: Vec<_> = basis.iter().zip(&picks).filter(|(_, &p)| p).map(|(t, _)| t.clone()).collect();
        prop_assume!(!m.is_empty());
        let j = BorelIdeal::new(n, borel_closure(m.iter()).unwrap().into_terms()).unwrap();
        let hp = j.hilbert_polynomial().unwrap();
        let reg = j.regularity();
        for t in reg..=reg + 5 {
            prop_assert_eq!(hilbert_function(n, j.generators(), t), hp.eval_int(t as i64).unwrap());
        }
    }
}
