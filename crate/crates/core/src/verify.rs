//! Reproduction of the worked examples as a list of named checks.

use serde::Serialize;

use crate::borel::{classify_multiindex, enumerate_borel, ideal_from_multiindex, BorelIdeal, IndexClass, MultiIndex};
use crate::error::Result;
use crate::group::default_group_sample;
use crate::hilbert::{gotzmann_number, HilbertContext};
use crate::marked::ideal_rank_profile;
use crate::numerical::IntegerPolynomial;
use crate::pluecker::families::{equation_plan, generator_families};
use crate::pluecker::membership::{membership_test, monomial_point, Verdict};
use crate::polynomial::Polynomial;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, run: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (passed, detail) = match run() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn poly(s: &str) -> IntegerPolynomial {
    IntegerPolynomial::parse(s).expect("literal polynomial")
}

/// Every check, with the Gotzmann number computed by `gotzmann`.
pub fn example_checks(gotzmann: impl Fn(&IntegerPolynomial) -> Result<u64>) -> Vec<Check> {
    let mut out = Vec::new();
    let g = &gotzmann;
    out.push(check("gotzmann 2t+2 = 3", || {
        let r = g(&poly("2t+2"))?;
        Ok((r == 3, format!("r = {r}")))
    }));
    out.push(check("gotzmann 2t+1 = 2", || {
        let r = g(&poly("2t+1"))?;
        Ok((r == 2, format!("r = {r}")))
    }));
    out.push(check("gotzmann of a constant c is c, 1 <= c <= 10", || {
        let got = (1..=10)
            .map(|c| g(&IntegerPolynomial::constant(c)))
            .collect::<Result<Vec<_>>>()?;
        Ok((got == (1..=10).collect::<Vec<u64>>(), format!("{got:?}")))
    }));
    out.push(check("gotzmann of at+b is a(a-1)/2+b", || {
        let mut ok = true;
        let mut detail = Vec::new();
        for (a, b) in [(2i64, 2i64), (2, 1), (3, 1), (3, 3)] {
            let r = g(&IntegerPolynomial::linear(a, b))?;
            ok &= r as i64 == a * (a - 1) / 2 + b;
            detail.push(format!("{a}t+{b}: {r}"));
        }
        Ok((ok, detail.join(", ")))
    }));

    out.push(check("2t+2 in P^3, s = 2: Grassmannian (6, 10), q(2) = 4, q(3) = 12", || {
        let ctx = HilbertContext::new(3, poly("2t+2"), 2, 2)?;
        let q3 = ctx.q_at(3);
        let ok = (ctx.p_s, ctx.n_s, ctx.q_s, q3) == (6, 10, 4, 12);
        Ok((ok, format!("p(2) = {}, N(2) = {}, q(2) = {}, q(3) = {q3}", ctx.p_s, ctx.n_s, ctx.q_s)))
    }));
    out.push(check("(x3) in degree 2: rk I_3 = 10, Hilbert polynomial (t^2+3t+2)/2", || {
        let y = BorelIdeal::parse(3, &["x3"])?;
        let gens: Vec<Polynomial<_>> = y
            .truncation(2)?
            .iter()
            .map(|t| Polynomial::monomial(t.clone(), num_rational::BigRational::from_integer(1.into())))
            .collect();
        let profile = ideal_rank_profile(3, 2, &gens, 3)?;
        let hp = y.hilbert_polynomial()?;
        let ok = profile[1].1 == 10 && hp == poly("1/2t^2+3/2t+1");
        Ok((ok, format!("rk I_3 = {}, hilbert polynomial {hp}", profile[1].1)))
    }));
    out.push(check("(x3) in degree 2 is InComplement for 2t+2", || {
        let ctx = HilbertContext::new(3, poly("2t+2"), 2, 2)?;
        let l = monomial_point(&BorelIdeal::parse(3, &["x3"])?, 2)?;
        let r = membership_test(&l, &ctx, &default_group_sample(3, 0, 5))?;
        Ok((r.verdict == Verdict::InComplement, r.verdict.name().into()))
    }));
    out.push(check("(x3^2, x3x2, x2^2, x3x1) is Borel, 2-regular with polynomial 2t+2", || {
        let j = BorelIdeal::parse(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"])?;
        let all = enumerate_borel(3, &poly("2t+2"), 2)?;
        let ok = all.contains(&j) && j.hilbert_polynomial()? == poly("2t+2") && j.regularity() == 2;
        Ok((ok, format!("{} ideals enumerated", all.len())))
    }));
    out.push(check("(x3^2, x3x2, x2^2, x3x1) in degree 2 is a Member", || {
        let ctx = HilbertContext::new(3, poly("2t+2"), 2, 2)?;
        let j = BorelIdeal::parse(3, &["x3^2", "x3*x2", "x2^2", "x3*x1"])?;
        let r = membership_test(&monomial_point(&j, 2)?, &ctx, &default_group_sample(3, 0, 5))?;
        Ok((r.verdict == Verdict::Member && r.oracle_member == Some(true), r.verdict.name().into()))
    }));

    out.push(check("2t+1 in P^3, s = 2: Grassmannian (5, 10)", || {
        let ctx = HilbertContext::new(3, poly("2t+1"), 2, 2)?;
        Ok(((ctx.p_s, ctx.n_s) == (5, 10), format!("p(2) = {}, N(2) = {}", ctx.p_s, ctx.n_s)))
    }));
    out.push(check("index {6..10} gives (x3^2, x3x2, x2^2, x3x1, x2x1), polynomial t+3, class InS", || {
        let index = MultiIndex::new(3, 2, (6..=10).collect())?;
        let want = BorelIdeal::parse(3, &["x3^2", "x3*x2", "x2^2", "x3*x1", "x2*x1"])?;
        let Some(j) = ideal_from_multiindex(&index).borel else {
            return Ok((false, "not Borel".into()));
        };
        let hp = j.hilbert_polynomial()?;
        let class = classify_multiindex(&index, &poly("2t+1"), 2)?;
        let ok = j == want && hp == poly("t+3") && class == IndexClass::InS;
        Ok((ok, format!("{:?}, {hp}, {class:?}", j.generator_strings())))
    }));

    out.push(check("E' = 210 and E = 125970 for 2t+2 in P^3", || {
        let ctx = HilbertContext::new(3, poly("2t+2"), 2, 2)?;
        let e = ctx.e.clone().unwrap_or_default();
        let ok = ctx.e_prime == 210.into() && e == 125970.into();
        Ok((ok, format!("E' = {}, E = {e}", ctx.e_prime)))
    }));
    out.push(check("multipliers: x0, x1 for G1 and x2, x3 for G2, G3 (2t+2)", || {
        let ctx = HilbertContext::new(3, poly("2t+2"), 2, 2)?;
        let fam = generator_families(&ctx)?;
        let vars = |gs: &[crate::pluecker::families::Generator]| {
            let mut v: Vec<usize> = gs
                .iter()
                .flat_map(|g| match g {
                    crate::pluecker::families::Generator::Single { var, .. } => vec![*var],
                    crate::pluecker::families::Generator::Difference { i, ibar, .. } => vec![*i, *ibar],
                })
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let ok = vars(&fam.g1) == [0, 1] && vars(&fam.g2) == [2, 3] && vars(&fam.g3) == [2, 3];
        Ok((ok, format!("G1 {:?}, G2 {:?}, G3 {:?}", vars(&fam.g1), vars(&fam.g2), vars(&fam.g3))))
    }));
    out.push(check("equations for 2t+1 in P^3 have degree <= 3", || {
        let ctx = HilbertContext::new(3, poly("2t+1"), 2, 2)?;
        let s = equation_plan(&ctx)?.summary;
        let max = [s.degree_a, s.degree_b, s.degree_c].into_iter().flatten().max().unwrap_or(0);
        Ok((max <= 3 && s.degree_a.unwrap_or(0) <= 2, format!("A {:?}, B {:?}, C {:?}", s.degree_a, s.degree_b, s.degree_c)))
    }));
    out
}

pub fn verify_paper() -> Vec<Check> {
    example_checks(gotzmann_number)
}
