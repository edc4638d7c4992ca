//! Generators of `I_{s+1}` built from the `δ` elements, and the three
//! families of equations in the Plücker variables.
//!
//! Equations are the coefficients of wedges
//! `x_0 δ^(m_0)_{K_0} ∧ ... ∧ x_d δ^(m_d)_{K_d}` (family A, total grade
//! `q''(s+1) + 1`) and of the grade-`q''(s+1)` wedges multiplied by one more
//! element of `I^(2)_{s+1}` (families B and C).

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::HilbertContext;
use crate::term::{monomial_basis, Term, TermList};

use super::coords::{PlueckerPolynomial, PlueckerVector};
use super::exterior::{delta, delta_at, variable_map, ExteriorElement};
use super::subsets::{choose, shuffle_sign};

/// Largest `C(N(s), p(s) + 1)` for which equations are produced.
pub const MAX_B1: u64 = 10_000;
/// Largest wedge arity `q''(s+1) + 1`.
pub const MAX_ARITY: u64 = 12;
/// Largest estimated number of coefficient products when expanding.
pub const MAX_PRODUCTS: u128 = 50_000_000;

/// Degree bookkeeping shared by the generator sets and the equations.
#[derive(Clone, Debug)]
pub struct Layout {
    pub n: usize,
    pub d: usize,
    pub s: u32,
    pub big_n: usize,
    pub p: usize,
    pub q: usize,
    /// `q''(s + 1)`.
    pub q2_next: usize,
    pub basis: TermList,
    pub basis_next: TermList,
    /// Positions of the degree-`s` terms in `x_{d+1}, ..., x_n` only.
    pub pure: Vec<usize>,
    /// `maps[i][k]`: position of `x_i * basis[k]` in degree `s + 1`.
    pub maps: Vec<Vec<usize>>,
}

impl Layout {
    pub fn new(ctx: &HilbertContext) -> Result<Self> {
        let basis = monomial_basis(ctx.n, ctx.s);
        let basis_next = monomial_basis(ctx.n, ctx.s + 1);
        if basis_next.len() > 128 {
            return Err(Error::SizeGuardExceeded(format!(
                "{} terms of degree {} (wedge slots are limited to 128)",
                basis_next.len(),
                ctx.s + 1
            )));
        }
        let q2_next = ctx.q2_at(ctx.s + 1);
        if q2_next < 0 {
            return Err(Error::InvalidContext(format!("q''({}) = {q2_next} is negative", ctx.s + 1)));
        }
        let pure = basis
            .iter()
            .enumerate()
            .filter(|(_, u)| (0..=ctx.d).all(|i| u.exponent(i) == 0))
            .map(|(k, _)| k)
            .collect();
        let maps = (0..=ctx.n).map(|i| variable_map(ctx.n, ctx.s, i)).collect();
        Ok(Layout {
            n: ctx.n,
            d: ctx.d,
            s: ctx.s,
            big_n: ctx.n_s as usize,
            p: ctx.p_s as usize,
            q: ctx.q_s as usize,
            q2_next: q2_next as usize,
            basis,
            basis_next,
            pure,
            maps,
        })
    }

    /// Positions outside the pure block, i.e. terms in `(x_0, ..., x_d)`.
    pub fn mixed(&self) -> Vec<usize> {
        (0..self.big_n).filter(|k| !self.pure.contains(k)).collect()
    }

    pub fn term(&self, k: usize) -> &Term {
        &self.basis.terms()[k]
    }
}

/// An element `x_var δ^(m)_K` of a wedge product; `K` 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub var: usize,
    pub m: usize,
    pub k: Vec<usize>,
}

impl Factor {
    pub fn symbolic(&self, lay: &Layout) -> ExteriorElement<PlueckerPolynomial> {
        delta(&self.k, self.m, lay.p, lay.big_n)
            .expect("validated factor")
            .relabel(&lay.maps[self.var])
    }
}

/// A degree-`s+1` generator of `I_{s+1}` built from `δ^(1)` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    /// `x_var δ^(1)_K`.
    Single { var: usize, k: Vec<usize> },
    /// `x_i δ^(1)_{A ∪ u} - sign * x_ibar δ^(1)_{A ∪ v}` with `x_i u = x_ibar v`,
    /// the sign chosen so that the `D[A]` terms at that common slot cancel.
    Difference {
        i: usize,
        u: usize,
        ibar: usize,
        v: usize,
        a: Vec<usize>,
        sign: i32,
    },
}

fn with(a: &[usize], x: usize) -> Vec<usize> {
    let mut k = a.to_vec();
    k.push(x);
    k.sort_unstable();
    k
}

impl Generator {
    pub fn symbolic(&self, lay: &Layout) -> ExteriorElement<PlueckerPolynomial> {
        match self {
            Generator::Single { var, k } => Factor { var: *var, m: 1, k: k.clone() }.symbolic(lay),
            Generator::Difference { i, u, ibar, v, a, sign } => {
                let left = Factor { var: *i, m: 1, k: with(a, *u) }.symbolic(lay);
                let right = Factor { var: *ibar, m: 1, k: with(a, *v) }.symbolic(lay);
                if *sign > 0 {
                    left.add(&right.neg())
                } else {
                    left.add(&right)
                }
            }
        }
    }

    /// The generator evaluated at a point, as a coefficient vector in degree `s + 1`.
    pub fn at(&self, lay: &Layout, point: &PlueckerVector) -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); lay.basis_next.len()];
        let mut put = |var: usize, k: &[usize], scale: i32| {
            let e = delta_at(k, 1, point).expect("validated generator");
            for (&mask, c) in e.terms() {
                let slot = lay.maps[var][mask.trailing_zeros() as usize];
                if scale > 0 {
                    out[slot] += c;
                } else {
                    out[slot] -= c;
                }
            }
        };
        match self {
            Generator::Single { var, k } => put(*var, k, 1),
            Generator::Difference { i, u, ibar, v, a, sign } => {
                put(*i, &with(a, *u), 1);
                put(*ibar, &with(a, *v), -sign);
            }
        }
        out
    }

    pub fn describe(&self, lay: &Layout) -> String {
        let k1 = |k: &[usize]| k.iter().map(|x| (x + 1).to_string()).join(",");
        match self {
            Generator::Single { var, k } => format!("x{var}*delta1[{}]", k1(k)),
            Generator::Difference { i, u, ibar, v, a, sign } => format!(
                "x{i}*delta1[{}] {} x{ibar}*delta1[{}]  ({}*{} = {}*{})",
                k1(&with(a, *u)),
                if *sign > 0 { "-" } else { "+" },
                k1(&with(a, *v)),
                Term::var(lay.n, *i),
                lay.term(*u),
                Term::var(lay.n, *ibar),
                lay.term(*v)
            ),
        }
    }
}

/// The generating sets `B1`, `G1`, `G2`, `G3`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorFamilies {
    /// Every `K` with `|K| = p(s) + 1`.
    pub b1: Vec<Vec<usize>>,
    /// `x_h δ^(1)_K`, `h <= d`, all `K`: generates `I^(1)_{s+1}`.
    pub g1: Vec<Generator>,
    /// `x_h δ^(1)_K`, `h > d`, `K` avoiding the pure block.
    pub g2: Vec<Generator>,
    /// Differences cancelling a pure slot.
    pub g3: Vec<Generator>,
}

pub fn check_size(lay: &Layout) -> Result<()> {
    let b1 = choose(lay.big_n, lay.p + 1);
    let arity = lay.q2_next as u64 + 1;
    if b1 > MAX_B1 || arity > MAX_ARITY {
        return Err(Error::SizeGuardExceeded(format!(
            "C(N(s), p(s)+1) = {b1} (limit {MAX_B1}), wedge arity q''(s+1)+1 = {arity} (limit {MAX_ARITY})"
        )));
    }
    Ok(())
}

pub fn generator_families(ctx: &HilbertContext) -> Result<GeneratorFamilies> {
    let lay = Layout::new(ctx)?;
    check_size(&lay)?;
    Ok(families_for(&lay))
}

pub fn families_for(lay: &Layout) -> GeneratorFamilies {
    let b1: Vec<Vec<usize>> = (0..lay.big_n).combinations(lay.p + 1).collect();
    let g1 = (0..=lay.d)
        .flat_map(|h| b1.iter().map(move |k| Generator::Single { var: h, k: k.clone() }))
        .collect();
    let mixed = lay.mixed();
    let g2 = (lay.d + 1..=lay.n)
        .flat_map(|h| {
            mixed
                .iter()
                .copied()
                .combinations(lay.p + 1)
                .map(move |k| Generator::Single { var: h, k })
        })
        .collect();
    let mut g3 = Vec::new();
    let pairs = pure_pairs(lay);
    for a in mixed.iter().copied().combinations(lay.p) {
        for &(i, u, ibar, v) in &pairs {
            let sign = shuffle_sign(&a, &[u]) * shuffle_sign(&a, &[v]);
            g3.push(Generator::Difference { i, u, ibar, v, a: a.clone(), sign });
        }
    }
    GeneratorFamilies { b1, g1, g2, g3 }
}

/// `(i, u, ibar, v)` with `i < ibar` both above `d`, `u, v` pure and `x_i u = x_ibar v`.
fn pure_pairs(lay: &Layout) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for &u in &lay.pure {
        for i in lay.d + 1..=lay.n {
            let w = lay.term(u).mul_var(i);
            for ibar in i + 1..=lay.n {
                if w.exponent(ibar) == 0 {
                    continue;
                }
                let vt = w.div(&Term::var(lay.n, ibar)).expect("divisible");
                let v = lay.basis.index(&vt).expect("degree s");
                out.push((i, u, ibar, v));
            }
        }
    }
    out
}

/// All `(m_0, ..., m_d)` with `0 <= m_i <= q(s)` and the given sum.
pub fn compositions(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=left.min(max) {
            cur.push(m);
            go(left - m, parts - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max, &mut Vec::new(), &mut out);
    out
}

/// Every wedge `x_0 δ^(m_0)_{K_0} ∧ ... ∧ x_d δ^(m_d)_{K_d}` of total grade
/// `total`; factors with `m_i = 0` are left out.
pub fn wedge_tuples(lay: &Layout, total: usize) -> Vec<Vec<Factor>> {
    let mut out = Vec::new();
    for ms in compositions(total, lay.d + 1, lay.q) {
        let choices: Vec<Vec<Factor>> = ms
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(var, &m)| {
                (0..lay.big_n)
                    .combinations(lay.p + m)
                    .map(|k| Factor { var, m, k })
                    .collect()
            })
            .collect();
        if choices.is_empty() {
            out.push(Vec::new());
            continue;
        }
        for combo in choices.into_iter().multi_cartesian_product() {
            out.push(combo);
        }
    }
    out
}

fn tuple_count(lay: &Layout, total: usize) -> u128 {
    compositions(total, lay.d + 1, lay.q)
        .iter()
        .map(|ms| {
            ms.iter()
                .filter(|&&m| m > 0)
                .map(|&m| choose(lay.big_n, lay.p + m) as u128)
                .product::<u128>()
        })
        .sum()
}

/// Number of coefficient products needed to expand one tuple.
fn tuple_products(lay: &Layout, total: usize) -> u128 {
    compositions(total, lay.d + 1, lay.q)
        .iter()
        .map(|ms| {
            let per: u128 = ms
                .iter()
                .filter(|&&m| m > 0)
                .map(|&m| choose(lay.p + m, m) as u128)
                .product();
            let count: u128 = ms
                .iter()
                .filter(|&&m| m > 0)
                .map(|&m| choose(lay.big_n, lay.p + m) as u128)
                .product();
            per * count
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
}

/// Sizes and degrees of the three families, known before expansion.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub q2_next: usize,
    pub arity: usize,
    pub b1: u64,
    pub g1: usize,
    pub g2: usize,
    pub g3: usize,
    pub tuples_a: u128,
    pub tuples_bc: u128,
    /// Number of `D` factors in every nonzero equation of each family; `None` if the family is empty.
    pub degree_a: Option<usize>,
    pub degree_b: Option<usize>,
    pub degree_c: Option<usize>,
    pub estimated_products: u128,
}

/// Everything needed to produce or evaluate the equations of one context.
#[derive(Clone, Debug)]
pub struct EquationPlan {
    pub layout: Layout,
    pub families: GeneratorFamilies,
    pub tuples_a: Vec<Vec<Factor>>,
    pub tuples_bc: Vec<Vec<Factor>>,
    pub summary: FamilySummary,
}

fn max_factors(tuples: &[Vec<Factor>]) -> Option<usize> {
    tuples.iter().map(Vec::len).max()
}

pub fn equation_plan(ctx: &HilbertContext) -> Result<EquationPlan> {
    let lay = Layout::new(ctx)?;
    check_size(&lay)?;
    let arity = lay.q2_next + 1;
    let count_a = tuple_count(&lay, arity);
    let count_bc = tuple_count(&lay, lay.q2_next);
    if count_a + count_bc > 1_000_000 {
        return Err(Error::SizeGuardExceeded(format!(
            "{count_a} family-A and {count_bc} family-B/C wedge tuples (limit 1000000)"
        )));
    }
    let families = families_for(&lay);
    let tuples_a = wedge_tuples(&lay, arity);
    let tuples_bc = wedge_tuples(&lay, lay.q2_next);
    let extra = (families.g2.len() + families.g3.len()) as u128;
    let estimated_products = tuple_products(&lay, arity)
        + tuple_products(&lay, lay.q2_next) * (1 + extra * 2 * (lay.p as u128 + 1));
    let bc_degree = |g: &[Generator]| {
        if g.is_empty() || tuples_bc.is_empty() {
            None
        } else {
            max_factors(&tuples_bc).map(|k| k + 1)
        }
    };
    let summary = FamilySummary {
        q2_next: lay.q2_next,
        arity,
        b1: families.b1.len() as u64,
        g1: families.g1.len(),
        g2: families.g2.len(),
        g3: families.g3.len(),
        tuples_a: count_a,
        tuples_bc: count_bc,
        degree_a: max_factors(&tuples_a),
        degree_b: bc_degree(&families.g2),
        degree_c: bc_degree(&families.g3),
        estimated_products,
    };
    Ok(EquationPlan {
        layout: lay,
        families,
        tuples_a,
        tuples_bc,
        summary,
    })
}

pub fn wedge_symbolic(lay: &Layout, tuple: &[Factor]) -> ExteriorElement<PlueckerPolynomial> {
    tuple
        .iter()
        .fold(ExteriorElement::unit(), |acc, f| acc.wedge(&f.symbolic(lay)))
}

/// One expanded equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Equation {
    pub family: Family,
    pub poly: PlueckerPolynomial,
}

/// Expanded equations, primitive and deduplicated within each family.
#[derive(Clone, Debug)]
pub struct EquationSet {
    pub p: usize,
    pub equations: Vec<Equation>,
    pub summary: FamilySummary,
}

impl EquationPlan {
    pub fn expand(&self) -> Result<EquationSet> {
        if self.summary.estimated_products > MAX_PRODUCTS {
            return Err(Error::SizeGuardExceeded(format!(
                "expanding needs about {} coefficient products (limit {MAX_PRODUCTS}); {} family-A tuples, {} family-B/C tuples, |G2| = {}, |G3| = {}",
                self.summary.estimated_products,
                self.summary.tuples_a,
                self.summary.tuples_bc,
                self.summary.g2,
                self.summary.g3
            )));
        }
        let lay = &self.layout;
        let mut seen = std::collections::BTreeSet::new();
        let mut push = |family: Family, e: &ExteriorElement<PlueckerPolynomial>| {
            for (_, c) in e.terms() {
                seen.insert(Equation { family, poly: c.primitive() });
            }
        };
        for t in &self.tuples_a {
            push(Family::A, &wedge_symbolic(lay, t));
        }
        let g2: Vec<_> = self.families.g2.iter().map(|g| g.symbolic(lay)).collect();
        let g3: Vec<_> = self.families.g3.iter().map(|g| g.symbolic(lay)).collect();
        for t in &self.tuples_bc {
            let w = wedge_symbolic(lay, t);
            for g in &g2 {
                push(Family::B, &w.wedge(g));
            }
            for g in &g3 {
                push(Family::C, &w.wedge(g));
            }
        }
        Ok(EquationSet {
            p: lay.p,
            equations: seen.into_iter().collect(),
            summary: self.summary.clone(),
        })
    }
}

impl EquationSet {
    pub fn family(&self, f: Family) -> impl Iterator<Item = &PlueckerPolynomial> {
        self.equations.iter().filter(move |e| e.family == f).map(|e| &e.poly)
    }

    pub fn max_degree(&self, f: Family) -> Option<usize> {
        self.family(f).map(PlueckerPolynomial::degree).max()
    }

    /// Equations that do not vanish at the point.
    pub fn violated(&self, point: &PlueckerVector) -> Vec<&Equation> {
        self.equations
            .iter()
            .filter(|e| e.poly.eval(point) != BigInt::from(0))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.equations
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "family": e.family,
                        "degree": e.poly.degree(),
                        "terms": e.poly.to_json(self.p),
                    })
                })
                .collect(),
        )
    }
}

pub fn equations(ctx: &HilbertContext) -> Result<EquationSet> {
    equation_plan(ctx)?.expand()
}
