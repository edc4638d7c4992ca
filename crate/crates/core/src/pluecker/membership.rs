//! The complement locus `L̃` and the membership test for `Hilb` inside the
//! Grassmannian.
//!
//! Families are evaluated at a point without expanding them: at a subspace
//! `L` with basis rows `M`, `δ^(m)_K(L)` is a nonzero multiple of the wedge
//! of a basis of `L_K = {v ∈ L : v_j = 0 for j ∉ K}` when `dim L_K = m`, and
//! zero otherwise. A wedge of such factors is then nonzero exactly when the
//! stacked basis vectors are independent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::borel::{enumerate_borel, BorelIdeal, MultiIndex};
use crate::error::{Error, Result};
use crate::group::substitution_matrix;
use crate::hilbert::HilbertContext;
use crate::linalg::Matrix;
use crate::marked::marked_set_from_subspace;

use super::coords::{pluecker_coordinates, GrassmannPoint, LinearForm, PlueckerVector};
use super::families::{check_size, families_for, wedge_tuples, Factor, Family, Generator, Layout};
use super::subsets::{choose, colex_rank, complement, shuffle_sign};

type Rational = BigRational;

/// A chart `𝓘 ∈ 𝒮^{[r',s]}_{p(t)}` with its Borel ideal.
#[derive(Clone, Debug)]
pub struct Chart {
    pub ideal: BorelIdeal,
    pub index: MultiIndex,
    /// 0-based positions of the standard terms.
    pub subset: Vec<usize>,
}

pub fn charts(ctx: &HilbertContext) -> Result<Vec<Chart>> {
    enumerate_borel(ctx.n, &ctx.p, ctx.rprime)?
        .into_iter()
        .map(|j| {
            let index = j.multiindex(ctx.s)?;
            let subset = index.indices().iter().map(|i| i - 1).collect();
            Ok(Chart { ideal: j, index, subset })
        })
        .collect()
}

/// `g · Δ_𝓘` for one group element and chart, in the plain Plücker variables.
#[derive(Clone, Debug)]
pub struct ComplementForm {
    pub group_index: usize,
    pub chart: usize,
    pub form: LinearForm,
}

/// `Δ_𝓘(M A) = Σ_𝓙 sign(𝓘ᶜ,𝓘) sign(𝓙ᶜ,𝓙) det(A[𝓙ᶜ, 𝓘ᶜ]) Δ_𝓙(M)` by Cauchy-Binet.
fn transported_form(a: &Matrix<Rational>, subset: &[usize], p: usize) -> LinearForm {
    let big_n = a.nrows();
    let comp = complement(subset, big_n);
    let outer = shuffle_sign(&comp, subset);
    let mut terms = Vec::new();
    for j in itertools::Itertools::combinations(0..big_n, p) {
        let jc = complement(&j, big_n);
        let minor = a.select_rows(&jc).select_columns(&comp);
        let det = minor.det().expect("square");
        if det.is_zero() {
            continue;
        }
        let sign = outer * shuffle_sign(&jc, &j);
        terms.push((colex_rank(&j), if sign < 0 { -det } else { det }));
    }
    terms.sort_by_key(|(r, _)| *r);
    LinearForm { terms }
}

pub fn complement_linear_forms(ctx: &HilbertContext, sample: &[Matrix<Rational>]) -> Result<Vec<ComplementForm>> {
    let charts = charts(ctx)?;
    let p = ctx.p_s as usize;
    let mut out = Vec::new();
    for (gi, g) in sample.iter().enumerate() {
        if g.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let a = substitution_matrix(g, ctx.n, ctx.s)?;
        for (ci, c) in charts.iter().enumerate() {
            out.push(ComplementForm {
                group_index: gi,
                chart: ci,
                form: transported_form(&a, &c.subset, p),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub family: Family,
    /// Wedge factors `x_var δ^(m)_K`, `K` 1-based.
    pub factors: Vec<String>,
    pub generator: Option<String>,
    /// Degree-`(s+1)` terms of a nonvanishing coefficient.
    pub slots: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witnesses")]
pub enum Verdict {
    Member,
    InComplement,
    EquationsViolated(Vec<Witness>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Member => "Member",
            Verdict::InComplement => "InComplement",
            Verdict::EquationsViolated(_) => "EquationsViolated",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartHit {
    pub group_index: usize,
    pub multiindex: Vec<usize>,
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub chart: Option<ChartHit>,
    /// Marked-basis criterion on the chart found, if any.
    pub oracle_member: Option<bool>,
    /// Nonvanishing family equations counted by wedge (tuple, generator).
    pub violated_wedges: usize,
    /// True when the families were too large and the oracle decided.
    pub fallback: bool,
    pub group_sample_size: usize,
    pub note: String,
}

/// Stop collecting witnesses after this many.
const MAX_WITNESSES: usize = 10;

fn l_k_basis(rows: &Matrix<Rational>, k: &[usize]) -> Matrix<Rational> {
    let kc = complement(k, rows.ncols());
    if kc.is_empty() {
        return rows.clone();
    }
    let coeffs = rows.select_columns(&kc).transpose().nullspace();
    if coeffs.nrows() == 0 {
        return Matrix::zeros(0, rows.ncols());
    }
    coeffs.mul(rows).expect("shapes agree")
}

/// Factor vectors of a wedge in degree `s + 1`, or `None` if some factor vanishes.
fn tuple_vectors(lay: &Layout, rows: &Matrix<Rational>, tuple: &[Factor]) -> Option<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for f in tuple {
        let b = l_k_basis(rows, &f.k);
        if b.nrows() != f.m {
            return None;
        }
        for r in b.to_rows() {
            let mut v = vec![Rational::zero(); lay.basis_next.len()];
            for (h, c) in r.into_iter().enumerate() {
                v[lay.maps[f.var][h]] = c;
            }
            out.push(v);
        }
    }
    Some(out)
}

/// Row echelon basis of independent vectors, reducing further vectors against it.
struct Echelon {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / &r[p];
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    /// Pivot of `v` modulo the span, if `v` is outside it.
    fn pivot_of(&self, v: &[Rational]) -> Option<(usize, Vec<Rational>)> {
        let red = self.reduce(v);
        red.iter().position(|c| !c.is_zero()).map(|p| (p, red))
    }

    /// Add `v`; false if it was dependent.
    fn push(&mut self, v: &[Rational]) -> bool {
        match self.pivot_of(v) {
            Some((p, red)) => {
                self.rows.push(red);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// Echelon form of the vectors if they are independent.
fn independent(vectors: &[Vec<Rational>]) -> Option<Echelon> {
    let mut e = Echelon::new();
    vectors.iter().all(|v| e.push(v)).then_some(e)
}

fn describe_tuple(tuple: &[Factor]) -> Vec<String> {
    tuple
        .iter()
        .map(|f| {
            let k: Vec<String> = f.k.iter().map(|x| (x + 1).to_string()).collect();
            format!("x{}*delta{}[{}]", f.var, f.m, k.join(","))
        })
        .collect()
}

/// Outcome of evaluating the three families at one subspace.
#[derive(Clone, Debug, Default)]
pub struct FamilyEvaluation {
    pub violated: usize,
    pub witnesses: Vec<Witness>,
}

/// Evaluate families A, B, C at `L` without expanding them, i.e. the
/// equations `𝔥_id`; `𝔥_g` at `L` is `𝔥_id` at `g · L`.
pub fn evaluate_families(ctx: &HilbertContext, l: &GrassmannPoint) -> Result<FamilyEvaluation> {
    let lay = Layout::new(ctx)?;
    check_size(&lay)?;
    evaluate_with_layout(&lay, l)
}

fn evaluate_with_layout(lay: &Layout, l: &GrassmannPoint) -> Result<FamilyEvaluation> {
    if l.ambient() != lay.big_n || l.dim() != lay.q {
        return Err(Error::SizeMismatch(format!(
            "point of dimension {} in {} forms, expected {} in {}",
            l.dim(),
            l.ambient(),
            lay.q,
            lay.big_n
        )));
    }
    let rows = l.rows();
    let mut eval = FamilyEvaluation::default();
    let slot_names = |pivots: &[usize]| -> Vec<String> {
        pivots.iter().map(|&c| lay.basis_next.terms()[c].to_string()).collect()
    };
    let record = |eval: &mut FamilyEvaluation, w: Witness| {
        eval.violated += 1;
        if eval.witnesses.len() < MAX_WITNESSES {
            eval.witnesses.push(w);
        }
    };

    for tuple in wedge_tuples(lay, lay.q2_next + 1) {
        if let Some(vs) = tuple_vectors(lay, rows, &tuple) {
            if let Some(e) = independent(&vs) {
                let w = Witness {
                    family: Family::A,
                    factors: describe_tuple(&tuple),
                    generator: None,
                    slots: slot_names(&sorted(e.pivots)),
                };
                record(&mut eval, w);
            }
        }
    }

    let fams = families_for(lay);
    let point = pluecker_coordinates(l);
    let gens: Vec<(Family, &Generator, Vec<Rational>)> = fams
        .g2
        .iter()
        .map(|g| (Family::B, g))
        .chain(fams.g3.iter().map(|g| (Family::C, g)))
        .map(|(f, g)| (f, g, to_rational(&g.at(lay, &point))))
        .filter(|(_, _, v)| v.iter().any(|c| !c.is_zero()))
        .collect();
    if gens.is_empty() {
        return Ok(eval);
    }
    for tuple in wedge_tuples(lay, lay.q2_next) {
        let Some(vs) = tuple_vectors(lay, rows, &tuple) else {
            continue;
        };
        let Some(e) = independent(&vs) else {
            continue;
        };
        for (family, g, v) in &gens {
            if let Some((p, _)) = e.pivot_of(v) {
                let mut piv = e.pivots.clone();
                piv.push(p);
                let w = Witness {
                    family: *family,
                    factors: describe_tuple(&tuple),
                    generator: Some(g.describe(lay)),
                    slots: slot_names(&sorted(piv)),
                };
                record(&mut eval, w);
            }
        }
    }
    Ok(eval)
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

/// First `(g, chart)` in sample order at which `g · L` has a nonzero Plücker
/// coordinate, with the transported rows.
pub fn find_chart(
    ctx: &HilbertContext,
    l: &GrassmannPoint,
    charts: &[Chart],
    sample: &[Matrix<Rational>],
) -> Result<Option<(usize, usize, Matrix<Rational>)>> {
    for (gi, g) in sample.iter().enumerate() {
        let a = substitution_matrix(g, ctx.n, ctx.s)?;
        let moved = l.rows().mul(&a)?;
        for (ci, c) in charts.iter().enumerate() {
            let heads = complement(&c.subset, l.ambient());
            if !moved.select_columns(&heads).det()?.is_zero() {
                return Ok(Some((gi, ci, moved)));
            }
        }
    }
    Ok(None)
}

const SAMPLE_NOTE: &str = "InComplement is decided relative to the sampled group elements only";

pub fn membership_test(
    l: &GrassmannPoint,
    ctx: &HilbertContext,
    sample: &[Matrix<Rational>],
) -> Result<MembershipReport> {
    if l.n() != ctx.n || l.s() != ctx.s {
        return Err(Error::SizeMismatch(format!(
            "point lives in degree {} of {} variables, context in degree {} of {}",
            l.s(),
            l.n() + 1,
            ctx.s,
            ctx.n + 1
        )));
    }
    let charts = charts(ctx)?;
    let mut report = MembershipReport {
        verdict: Verdict::InComplement,
        chart: None,
        oracle_member: None,
        violated_wedges: 0,
        fallback: false,
        group_sample_size: sample.len(),
        note: SAMPLE_NOTE.into(),
    };
    let Some((gi, ci, moved)) = find_chart(ctx, l, &charts, sample)? else {
        return Ok(report);
    };
    let chart = &charts[ci];
    report.chart = Some(ChartHit {
        group_index: gi,
        multiindex: chart.index.indices().to_vec(),
        ideal: chart.ideal.generator_strings(),
    });
    let marked = marked_set_from_subspace(&moved, &chart.ideal, ctx.s)?;
    let oracle = marked.is_marked_basis()?;
    report.oracle_member = Some(oracle);

    let lay = Layout::new(ctx)?;
    match check_size(&lay) {
        Ok(()) => {
            let eval = evaluate_with_layout(&lay, &GrassmannPoint::new(ctx.n, ctx.s, moved)?)?;
            report.violated_wedges = eval.violated;
            report.verdict = if eval.violated == 0 {
                Verdict::Member
            } else {
                Verdict::EquationsViolated(eval.witnesses)
            };
        }
        Err(Error::SizeGuardExceeded(msg)) => {
            report.fallback = true;
            report.note = format!("{SAMPLE_NOTE}; families not evaluated ({msg}), verdict from the marked-basis criterion");
            report.verdict = if oracle { Verdict::Member } else { Verdict::EquationsViolated(Vec::new()) };
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// The point spanned by `J_s`.
pub fn monomial_point(j: &BorelIdeal, s: u32) -> Result<GrassmannPoint> {
    let basis = crate::term::monomial_basis(j.n(), s);
    let heads = j.truncation(s)?;
    let rows = heads
        .iter()
        .map(|h| {
            let mut r = vec![Rational::zero(); basis.len()];
            r[basis.index(h).expect("degree s")] = Rational::one();
            r
        })
        .collect();
    GrassmannPoint::new(j.n(), s, Matrix::from_rows(rows, basis.len())?)
}

/// Number of Plücker coordinates `C(N(s), p(s))`.
pub fn coordinate_count(ctx: &HilbertContext) -> u64 {
    choose(ctx.n_s as usize, ctx.p_s as usize)
}

/// Evaluate every complement form at a point.
pub fn complement_values(forms: &[ComplementForm], point: &PlueckerVector) -> Vec<Rational> {
    forms.iter().map(|f| f.form.eval(point)).collect()
}
