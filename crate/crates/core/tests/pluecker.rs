mod common;

use common::{borel, corpus_cases, poly, q};
use hilbreg::borel::{classify_multiindex, enumerate_borel, multiindex_of, IndexClass, MultiIndex};
use hilbreg::group::{act_on_subspace, default_group_sample, random_invertible};
use hilbreg::hilbert::HilbertContext;
use hilbreg::linalg::Matrix;
use hilbreg::marked::{from_row, ideal_rank_profile};
use hilbreg::pluecker::coords::{pluecker_coordinates, GrassmannPoint, PlueckerVector};
use hilbreg::pluecker::exterior::{delta, delta_at, evaluate, variable_multiply, wedge_of_vectors, ExteriorElement};
use hilbreg::pluecker::families::{equation_plan, equations, Family, Layout};
use hilbreg::pluecker::membership::{
    charts, complement_linear_forms, complement_values, evaluate_families, membership_test, monomial_point, Verdict,
};
use hilbreg::pluecker::subsets::{colex_rank, complement, mask_of, positions};
use hilbreg::points::{orbit_point, perturb, random_subspace, skew_lines};
use hilbreg::term::monomial_basis;
use hilbreg::Rational;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(n: usize, p: &str, rp: u32, s: u32) -> HilbertContext {
    HilbertContext::new(n, poly(p), rp, s).unwrap()
}

fn big(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

fn rank(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows, cols).unwrap().rank()
}

/// `a = λ b` for some nonzero `λ`.
fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    let nz_a = a.iter().any(|x| !x.is_zero());
    let nz_b = b.iter().any(|x| !x.is_zero());
    if nz_a != nz_b {
        return false;
    }
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn dense(e: &ExteriorElement<BigInt>, slots: &[u128]) -> Vec<BigInt> {
    slots.iter().map(|m| e.coeff(*m).cloned().unwrap_or_default()).collect()
}

/// `e ∈ ∧^m L`, by rank against the wedges of `m` basis vectors.
fn in_wedge_power(e: &ExteriorElement<BigInt>, l: &GrassmannPoint) -> bool {
    let m = e.grade();
    let rows = l.integer_rows();
    let slots: Vec<u128> = (0..l.ambient()).combinations(m).map(|h| mask_of(&h)).collect();
    let span: Vec<Vec<Rational>> = rows
        .iter()
        .cloned()
        .combinations(m)
        .map(|vs| big(&dense(&wedge_of_vectors(&vs), &slots)))
        .collect();
    let r = rank(span.clone(), slots.len());
    let mut with = span;
    with.push(big(&dense(e, &slots)));
    rank(with, slots.len()) == r
}

fn random_point(n: usize, s: u32, q: usize, rng: &mut ChaCha8Rng) -> GrassmannPoint {
    random_subspace(n, s, q, rng).unwrap()
}

#[test]
fn monomial_points_have_a_single_coordinate() {
    for (n, p, rp) in corpus_cases().into_iter().filter(|c| c.0 <= 2 || c.2 <= 2) {
        for j in enumerate_borel(n, &p, rp).unwrap() {
            let c = pluecker_coordinates(&monomial_point(&j, rp).unwrap());
            let nz = c.nonzero();
            assert_eq!(nz.len(), 1, "{:?}", j.generator_strings());
            assert_eq!(nz[0].0, multiindex_of(&j, rp).unwrap().indices());
        }
    }
}

#[test]
fn line_in_three_space_gives_signed_entries() {
    let rows = Matrix::from_rows(vec![vec![q(2), q(-7), q(5)]], 3).unwrap();
    let c = pluecker_coordinates(&GrassmannPoint::new(2, 1, rows).unwrap());
    let got = [c.get(&[1, 2]), c.get(&[0, 2]), c.get(&[0, 1])].map(Clone::clone);
    let want = [2, 7, 5].map(BigInt::from);
    assert!(proportional(&got, &want), "{got:?}");
}

#[test]
fn row_operations_rescale_all_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, s, dim) in [(2, 2, 3), (3, 2, 4), (3, 2, 5)] {
        let l = random_point(n, s, dim, &mut rng);
        let g = loop {
            let m = random_invertible(&mut rng, dim - 1);
            if !m.det().unwrap().is_zero() {
                break m;
            }
        };
        let l2 = GrassmannPoint::new(n, s, g.mul(l.rows()).unwrap()).unwrap();
        let (a, b) = (pluecker_coordinates(&l), pluecker_coordinates(&l2));
        assert!(proportional(&a.coords, &b.coords));
    }
}

#[test]
fn delta_of_a_line_is_in_the_line() {
    let sym = delta(&[0, 1, 2], 1, 2, 3).unwrap();
    assert_eq!(sym.len(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let l = random_point(2, 1, 1, &mut rng);
        let e = evaluate(&sym, &pluecker_coordinates(&l));
        assert!(!e.is_zero());
        assert!(in_wedge_power(&e, &l));
    }
}

#[test]
fn full_grade_delta_is_the_wedge_of_the_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, s, dim) in [(2, 1, 2), (2, 2, 3), (3, 2, 4)] {
        let l = random_point(n, s, dim, &mut rng);
        let big_n = l.ambient();
        let all: Vec<usize> = (0..big_n).collect();
        let e = delta_at(&all, dim, &pluecker_coordinates(&l)).unwrap();
        let w = wedge_of_vectors(&l.integer_rows());
        let slots: Vec<u128> = all.iter().copied().combinations(dim).map(|h| mask_of(&h)).collect();
        assert!(proportional(&dense(&e, &slots), &dense(&w, &slots)));
    }
}

#[test]
fn chart_deltas_span_the_subspace() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let c = ctx(3, "2t+2", 2, 2);
    let j = borel(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"]);
    let index: Vec<usize> = multiindex_of(&j, 2).unwrap().indices().iter().map(|i| i - 1).collect();
    let supersets: Vec<Vec<usize>> = (0..c.n_s as usize)
        .filter(|x| !index.contains(x))
        .map(|x| index.iter().copied().chain([x]).sorted().collect())
        .collect();
    assert_eq!(supersets.len() as u64, c.q_s);
    for _ in 0..5 {
        let l = orbit_point(&j, 2, &mut rng).unwrap();
        let pc = pluecker_coordinates(&l);
        let vs: Vec<Vec<Rational>> = supersets
            .iter()
            .map(|k| {
                let e = delta_at(k, 1, &pc).unwrap();
                big(&dense(&e, &(0..10).map(|h| 1u128 << h).collect::<Vec<_>>()))
            })
            .collect();
        assert_eq!(rank(vs.clone(), 10), 4);
        let mut all = vs;
        all.extend(l.rows().to_rows());
        assert_eq!(rank(all, 10), 4);
    }
}

#[test]
fn variable_multiplication_commutes_with_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (n, s) = (3, 2);
    let src = monomial_basis(n, s);
    let dst = monomial_basis(n, s + 1);
    for _ in 0..5 {
        let dim = rng.gen_range(2..=6);
        let l = random_point(n, s, dim, &mut rng);
        let pc = pluecker_coordinates(&l);
        let p = 10 - dim;
        let m = rng.gen_range(1..=2);
        let mut k: Vec<usize> = (0..10).collect();
        while k.len() > p + m {
            k.remove(rng.gen_range(0..k.len()));
        }
        let sym = delta(&k, m, p, 10).unwrap();
        for i in 0..=n {
            let one = evaluate(&variable_multiply(&sym, n, s, i), &pc);
            let other = delta_at(&k, m, &pc).unwrap();
            let mut moved = ExteriorElement::zero(m);
            for (&mask, c) in other.terms() {
                let slots: Vec<usize> = positions(mask)
                    .into_iter()
                    .map(|h| dst.index(&src.terms()[h].mul_var(i)).unwrap())
                    .collect();
                moved.add_term(mask_of(&slots), c.clone());
            }
            assert_eq!(one, moved);
        }
    }
    let x0 = delta(&[0, 1, 2, 3, 4, 5, 6, 7, 9], 1, 8, 10).unwrap();
    let lifted = variable_multiply(&x0, n, s, 0);
    assert!(lifted.coeff(1u128 << 19).is_some());
}

#[test]
fn first_generators_span_the_low_multiples() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (n, p, s) in [(3, "2t+2", 2), (2, "3", 2), (3, "2t+1", 2)] {
        let c = ctx(n, p, s, s);
        let plan = equation_plan(&c).unwrap();
        let lay = &plan.layout;
        for j in enumerate_borel(n, &c.p, s).unwrap() {
            let l = orbit_point(&j, s, &mut rng).unwrap();
            let pc = pluecker_coordinates(&l);
            let width = lay.basis_next.len();
            let from_g1: Vec<Vec<Rational>> = plan.families.g1.iter().map(|g| big(&g.at(lay, &pc))).collect();
            let direct: Vec<Vec<Rational>> = (0..=c.d)
                .flat_map(|h| {
                    l.rows().to_rows().into_iter().map(move |r| {
                        let mut v = vec![Rational::zero(); width];
                        for (k, x) in r.into_iter().enumerate() {
                            let t = lay.basis.terms()[k].mul_var(h);
                            v[lay.basis_next.index(&t).unwrap()] = x;
                        }
                        v
                    })
                })
                .collect();
            let rd = rank(direct.clone(), width);
            assert_eq!(rank(from_g1.clone(), width), rd);
            let mut both = from_g1;
            both.extend(direct);
            assert_eq!(rank(both, width), rd);
        }
    }
}

#[test]
fn equations_vanish_at_the_borel_point() {
    let c = ctx(3, "2t+2", 2, 2);
    let eqs = equations(&c).unwrap();
    let j = borel(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"]);
    let pc = pluecker_coordinates(&monomial_point(&j, 2).unwrap());
    assert!(eqs.violated(&pc).is_empty());
    let s = &eqs.summary;
    assert_eq!((s.q2_next, s.arity), (8, 9));
    assert_eq!(c.q_at(3) - s.q2_next as i64, 4);
}

#[test]
fn degree_audit_over_the_corpus() {
    let mut audited = 0;
    for (n, p, rp) in corpus_cases() {
        let Ok(c) = HilbertContext::new(n, p.clone(), rp, rp) else { continue };
        let Ok(plan) = equation_plan(&c) else { continue };
        if plan.summary.estimated_products > 5_000_000 {
            continue;
        }
        let eqs = plan.expand().unwrap();
        for (f, bound, structural) in [
            (Family::A, c.d + 1, plan.summary.degree_a),
            (Family::B, c.d + 2, plan.summary.degree_b),
            (Family::C, c.d + 2, plan.summary.degree_c),
        ] {
            assert!(eqs.family(f).all(|e| e.is_homogeneous()));
            if let Some(deg) = eqs.max_degree(f) {
                assert_eq!(deg, bound, "{n} {p} {rp} {f:?}");
                assert_eq!(structural, Some(bound));
            } else {
                assert!(structural.is_none_or(|k| k <= bound));
            }
        }
        audited += 1;
    }
    assert!(audited >= 10, "only {audited} contexts audited");
}

#[test]
fn identity_forms_are_the_chart_variables() {
    let c = ctx(3, "2t+2", 2, 2);
    let forms = complement_linear_forms(&c, &default_group_sample(3, 0, 0)).unwrap();
    let j = borel(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"]);
    let want = colex_rank(&multiindex_of(&j, 2).unwrap().indices().iter().map(|i| i - 1).collect::<Vec<_>>());
    let id: Vec<_> = forms.iter().filter(|f| f.group_index == 0).collect();
    assert!(id.iter().any(|f| f.form.terms.len() == 1 && f.form.terms[0].0 == want));
    // permutations move one variable to another
    assert!(forms.iter().all(|f| f.form.terms.len() == 1 && num_traits::Signed::abs(&f.form.terms[0].1) == Rational::one()));
}

#[test]
fn plane_lies_in_the_identity_complement() {
    let c = ctx(3, "2t+2", 2, 2);
    let y = borel(3, &["x3"]);
    let pc = pluecker_coordinates(&monomial_point(&y, 2).unwrap());
    let nz = pc.nonzero();
    assert_eq!(nz.len(), 1);
    let class = classify_multiindex(&MultiIndex::new(3, 2, nz[0].0.clone()).unwrap(), &c.p, 2).unwrap();
    assert_eq!(class, IndexClass::InS);
    let forms = complement_linear_forms(&c, &default_group_sample(3, 0, 0)).unwrap();
    let id: Vec<_> = forms.into_iter().filter(|f| f.group_index == 0).collect();
    assert!(complement_values(&id, &pc).iter().all(Zero::is_zero));
}

#[test]
fn transported_forms_match_direct_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = ctx(3, "2t+2", 2, 2);
    let mut sample = default_group_sample(3, 11, 3);
    sample.push(random_invertible(&mut rng, 3));
    let forms = complement_linear_forms(&c, &sample).unwrap();
    let cs = charts(&c).unwrap();
    for _ in 0..3 {
        let l = random_point(3, 2, 4, &mut rng);
        let pc = pluecker_coordinates(&l);
        for (gi, g) in sample.iter().enumerate() {
            let moved = GrassmannPoint::new(3, 2, act_on_subspace(g, l.rows(), 3, 2).unwrap()).unwrap();
            let direct = pluecker_coordinates(&moved);
            let via: Vec<Rational> = complement_values(
                &forms.iter().filter(|f| f.group_index == gi).cloned().collect::<Vec<_>>(),
                &pc,
            );
            let want: Vec<Rational> = cs.iter().map(|ch| Rational::from_integer(direct.get(&ch.subset).clone())).collect();
            let ok = (0..via.len()).all(|i| (0..via.len()).all(|j| &via[i] * &want[j] == &via[j] * &want[i]));
            assert!(ok && via.iter().any(|x| !x.is_zero()) == want.iter().any(|x| !x.is_zero()));
        }
    }
}

#[test]
fn equation_values_agree_with_numeric_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = ctx(3, "2t+2", 2, 2);
    let eqs = equations(&c).unwrap();
    let j = borel(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"]);
    for k in 0..12 {
        let l = match k % 3 {
            0 => orbit_point(&j, 2, &mut rng).unwrap(),
            1 => random_point(3, 2, 4, &mut rng),
            _ => perturb(&orbit_point(&j, 2, &mut rng).unwrap(), &mut rng).unwrap(),
        };
        let numeric = evaluate_families(&c, &l).unwrap();
        let symbolic = eqs.violated(&pluecker_coordinates(&l));
        assert_eq!(numeric.violated == 0, symbolic.is_empty(), "point {k}");
    }
}

#[test]
fn rescaled_coordinates_keep_every_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c = ctx(3, "2t+2", 2, 2);
    let eqs = equations(&c).unwrap();
    let sample = default_group_sample(3, 0, 2);
    let j = borel(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"]);
    for k in 0..6 {
        let l = if k % 2 == 0 { orbit_point(&j, 2, &mut rng).unwrap() } else { random_point(3, 2, 4, &mut rng) };
        let pc = pluecker_coordinates(&l);
        for lambda in [-3i64, 7] {
            let scaled: PlueckerVector = pc.scaled(&BigInt::from(lambda));
            assert_eq!(eqs.violated(&pc).len(), eqs.violated(&scaled).len());
            let rows = Matrix::from_rows(
                l.rows().to_rows().into_iter().map(|r| r.into_iter().map(|x| x * q(lambda)).collect()).collect(),
                10,
            )
            .unwrap();
            let a = membership_test(&l, &c, &sample).unwrap().verdict.name();
            let b = membership_test(&GrassmannPoint::new(3, 2, rows).unwrap(), &c, &sample).unwrap().verdict.name();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn points_of_the_hilbert_scheme_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let sample = default_group_sample(3, 0, 3);
    for (p, extra) in [("2t+2", true), ("2t+1", false)] {
        let c = ctx(3, p, 2, 2);
        let mut points = Vec::new();
        for j in enumerate_borel(3, &c.p, 2).unwrap() {
            for _ in 0..3 {
                points.push(orbit_point(&j, 2, &mut rng).unwrap());
            }
        }
        if extra {
            for _ in 0..3 {
                points.push(skew_lines(2, &mut rng).unwrap());
            }
        }
        for l in points {
            let r = membership_test(&l, &c, &sample).unwrap();
            assert_eq!(r.verdict, Verdict::Member, "{p}");
            assert_eq!(r.oracle_member, Some(true));
        }
    }
}

fn profile_at_next(l: &GrassmannPoint) -> usize {
    let basis = monomial_basis(l.n(), l.s());
    let gens: Vec<_> = l.rows().to_rows().iter().map(|r| from_row(l.n(), r, &basis)).collect();
    ideal_rank_profile(l.n(), l.s(), &gens, l.s() + 1).unwrap()[1].1
}

#[test]
fn random_subspaces_violate_the_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = ctx(3, "2t+2", 2, 2);
    let sample = default_group_sample(3, 0, 3);
    let mut seen = 0;
    while seen < 20 {
        let l = random_point(3, 2, 4, &mut rng);
        assert_ne!(profile_at_next(&l), 12);
        let r = membership_test(&l, &c, &sample).unwrap();
        if r.verdict == Verdict::InComplement {
            continue;
        }
        assert!(matches!(r.verdict, Verdict::EquationsViolated(ref w) if !w.is_empty()));
        seen += 1;
    }
}

#[test]
fn perturbed_members_that_lose_flatness_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let c = ctx(3, "2t+2", 2, 2);
    let sample = default_group_sample(3, 0, 3);
    let j = borel(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"]);
    let mut broken = 0;
    for _ in 0..10 {
        let l = perturb(&orbit_point(&j, 2, &mut rng).unwrap(), &mut rng).unwrap();
        let r = membership_test(&l, &c, &sample).unwrap();
        if profile_at_next(&l) > c.q_at(3) as usize {
            broken += 1;
            assert!(matches!(r.verdict, Verdict::EquationsViolated(ref w) if !w.is_empty()));
        } else {
            assert_eq!(r.verdict, Verdict::Member);
        }
    }
    assert!(broken > 0);
}

#[test]
fn layout_of_the_two_line_context() {
    let lay = Layout::new(&ctx(3, "2t+2", 2, 2)).unwrap();
    assert_eq!((lay.big_n, lay.p, lay.q, lay.d), (10, 6, 4, 1));
    assert_eq!(complement(&lay.pure, 10).len(), 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluated_deltas_lie_in_the_wedge_power(
        shape in 0usize..3,
        seed in any::<u64>(),
        m in 1usize..=3,
    ) {
        let (n, s) = [(2, 1), (2, 2), (3, 2)][shape];
        let big_n = monomial_basis(n, s).len();
        prop_assume!(m < big_n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(m..big_n);
        let l = random_point(n, s, dim, &mut rng);
        let pc = pluecker_coordinates(&l);
        let p = big_n - dim;
        let mut k: Vec<usize> = (0..big_n).collect();
        while k.len() > p + m {
            k.remove(rng.gen_range(0..k.len()));
        }
        let e = delta_at(&k, m, &pc).unwrap();
        prop_assert!(in_wedge_power(&e, &l));
    }
}
