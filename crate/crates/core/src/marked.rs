//! Marked polynomials and marked sets over a truncated strongly stable ideal
//! `J_{>=s}`, head-term reduction and the marked-basis criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::borel::BorelIdeal;
use crate::error::{Error, Result};
use crate::hilbert::n_of;
use crate::linalg::Matrix;
use crate::numerical::{format_rational, parse_rational};
use crate::param::{ParamNames, ParamVar, ParameterPolynomial};
use crate::polynomial::Polynomial;
use crate::scalar::{Field, Ring};
use crate::term::{monomial_basis, Term, TermList};

/// `head - sum(c * tail_term)`; the tail map stores the `c`.
#[derive(Clone, PartialEq)]
pub struct MarkedPolynomial<C> {
    head: Term,
    tail: BTreeMap<Term, C>,
}

impl<C: Ring> MarkedPolynomial<C> {
    pub fn new(head: Term, tail: impl IntoIterator<Item = (Term, C)>) -> Result<Self> {
        let d = head.degree();
        let mut map = BTreeMap::new();
        for (t, c) in tail {
            if t.nvars() != head.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: head.nvars(),
                    found: t.nvars(),
                });
            }
            if t.degree() != d {
                return Err(Error::DegreeMismatch(t.to_string(), t.degree(), d));
            }
            if t == head {
                return Err(Error::TailInIdeal {
                    head: head.to_string(),
                    tail: t.to_string(),
                });
            }
            if !c.is_zero() {
                map.insert(t, c);
            }
        }
        Ok(MarkedPolynomial { head, tail: map })
    }

    pub fn monomial(head: Term) -> Self {
        MarkedPolynomial {
            head,
            tail: BTreeMap::new(),
        }
    }

    pub fn head(&self) -> &Term {
        &self.head
    }

    pub fn tail(&self) -> &BTreeMap<Term, C> {
        &self.tail
    }

    pub fn degree(&self) -> u32 {
        self.head.degree()
    }

    /// The polynomial itself, head coefficient 1.
    pub fn to_polynomial(&self) -> Polynomial<C> {
        let mut p = Polynomial::monomial(self.head.clone(), C::one());
        for (t, c) in &self.tail {
            p.add_term(t.clone(), -c.clone());
        }
        p
    }

    /// `x^eta * self`, marked on `x^eta * head`.
    pub fn mul_term(&self, eta: &Term) -> Self {
        MarkedPolynomial {
            head: self.head.mul(eta),
            tail: self.tail.iter().map(|(t, c)| (t.mul(eta), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MarkedPolynomial<D> {
        MarkedPolynomial {
            head: self.head.clone(),
            tail: self
                .tail
                .iter()
                .map(|(t, c)| (t.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl<C: fmt::Debug> fmt::Debug for MarkedPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {:?}", self.head, self.tail)
    }
}

/// One marked polynomial per term of `J_s`, with tails supported on `N(J)_s`.
#[derive(Clone, PartialEq)]
pub struct MarkedSet<C> {
    j: BorelIdeal,
    s: u32,
    heads: TermList,
    standard: TermList,
    polys: Vec<MarkedPolynomial<C>>,
}

impl<C: fmt::Debug> fmt::Debug for MarkedSet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MarkedSet")
            .field("J", &self.j)
            .field("s", &self.s)
            .field("polys", &self.polys)
            .finish()
    }
}

/// Split `w` into `(alpha, eta)` with `alpha` the product of the `s`
/// largest variables of `w` (with multiplicity).
pub fn split_top(w: &Term, s: u32) -> (Term, Term) {
    let n = w.n();
    let mut alpha = vec![0u32; n + 1];
    let mut left = s;
    for i in (0..=n).rev() {
        let take = w.exponent(i).min(left);
        alpha[i] = take;
        left -= take;
    }
    let alpha = Term::new(alpha);
    let eta = w.div(&alpha).expect("alpha divides w");
    (alpha, eta)
}

impl<C: Ring> MarkedSet<C> {
    /// Validate a marked set on `J_s`. `tails` needs an entry for every head.
    pub fn new(j: &BorelIdeal, s: u32, tails: BTreeMap<Term, BTreeMap<Term, C>>) -> Result<Self> {
        let heads = j.truncation(s)?;
        let standard = j.standard_part(s);
        let mut tails = tails;
        let mut polys = Vec::with_capacity(heads.len());
        for h in heads.iter() {
            let tail = tails
                .remove(h)
                .ok_or_else(|| Error::HeadMissing(h.to_string()))?;
            for t in tail.keys() {
                if t.degree() != s {
                    return Err(Error::DegreeMismatch(t.to_string(), t.degree(), s));
                }
                if j.contains(t) {
                    return Err(Error::TailInIdeal {
                        head: h.to_string(),
                        tail: t.to_string(),
                    });
                }
            }
            polys.push(MarkedPolynomial::new(h.clone(), tail)?);
        }
        if let Some(extra) = tails.keys().next() {
            return Err(Error::NotAHead(extra.to_string()));
        }
        Ok(MarkedSet {
            j: j.clone(),
            s,
            heads,
            standard,
            polys,
        })
    }

    /// All tails zero: the monomial basis of `J_s` itself.
    pub fn monomial(j: &BorelIdeal, s: u32) -> Result<Self> {
        let tails = j
            .truncation(s)?
            .into_terms()
            .into_iter()
            .map(|h| (h, BTreeMap::new()))
            .collect();
        Self::new(j, s, tails)
    }

    pub fn ideal(&self) -> &BorelIdeal {
        &self.j
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn heads(&self) -> &TermList {
        &self.heads
    }

    /// `N(J)_s`, decreasing.
    pub fn standard(&self) -> &TermList {
        &self.standard
    }

    pub fn polys(&self) -> &[MarkedPolynomial<C>] {
        &self.polys
    }

    pub fn poly(&self, head: &Term) -> Result<&MarkedPolynomial<C>> {
        self.heads
            .index(head)
            .map(|k| &self.polys[k])
            .ok_or_else(|| Error::NotAHead(head.to_string()))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MarkedSet<D> {
        MarkedSet {
            j: self.j.clone(),
            s: self.s,
            heads: self.heads.clone(),
            standard: self.standard.clone(),
            polys: self.polys.iter().map(|p| p.map_coeffs(&f)).collect(),
        }
    }

    /// `F^(t)`: every `x^eta f_alpha` of degree `t` with `max(eta) <= min(alpha)`.
    pub fn multiplicative_span(&self, t: u32) -> Result<Vec<MarkedPolynomial<C>>> {
        if t < self.s {
            return Err(Error::BelowRegularity { s: t, reg: self.s });
        }
        let etas = monomial_basis(self.n(), t - self.s);
        let mut out = Vec::new();
        for f in &self.polys {
            let m = f.head.min_var().unwrap_or(0);
            for eta in etas.iter() {
                if eta.max_var().map_or(true, |v| v <= m) {
                    out.push(f.mul_term(eta));
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a homogeneous `f` of degree `>= s` modulo `F^(t)`:
    /// support in `N(J)_t`, difference in the span of `F^(t)`.
    pub fn reduce(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        let Some(t) = f.degree() else {
            if f.is_zero() {
                return Ok(f.clone());
            }
            return Err(Error::Invalid("reduce needs a homogeneous polynomial".into()));
        };
        if t < self.s {
            return Err(Error::BelowRegularity { s: t, reg: self.s });
        }
        let big_n = n_of(self.n(), t);
        let cap = usize::try_from(big_n * 4u32 * big_n_in_ideal_bound(self, t))
            .unwrap_or(usize::MAX);
        let mut g = f.clone();
        let mut steps = 0usize;
        loop {
            let Some(w) = g.support().rev().find(|w| self.j.contains(w)).cloned() else {
                return Ok(g);
            };
            steps += 1;
            if steps > cap {
                return Err(Error::ReductionCap(cap));
            }
            let a = g.remove(&w).expect("present");
            let (alpha, eta) = split_top(&w, self.s);
            let k = self.heads.index(&alpha).expect("Borel: top part lies in J_s");
            for (gamma, c) in &self.polys[k].tail {
                g.add_term(gamma.mul(&eta), a.mul_ref(c));
            }
        }
    }

    /// `reduce(x_i f_alpha) = 0` for every head and every `i > min(alpha)`.
    pub fn is_marked_basis(&self) -> Result<bool> {
        for f in &self.polys {
            let m = f.head.min_var().unwrap_or(0);
            let p = f.to_polynomial();
            for i in m + 1..=self.n() {
                if !self.reduce(&p.mul_var(i))?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The `N(J)_{s+1}` coefficients of every `reduce(x_i f_alpha)`, `i > min(alpha)`.
    pub fn syzygy_residues(&self) -> Result<Vec<(Term, usize, Polynomial<C>)>> {
        let mut out = Vec::new();
        for f in &self.polys {
            let m = f.head.min_var().unwrap_or(0);
            let p = f.to_polynomial();
            for i in m + 1..=self.n() {
                let r = self.reduce(&p.mul_var(i))?;
                if !r.is_zero() {
                    out.push((f.head.clone(), i, r));
                }
            }
        }
        Ok(out)
    }
}

fn big_n_in_ideal_bound<C>(f: &MarkedSet<C>, t: u32) -> u64 {
    crate::borel::truncated_count(f.heads.terms(), t - f.s)
        .try_into()
        .unwrap_or(u64::MAX)
}

impl<F: Field> MarkedSet<F> {
    /// Exact ranks of `I_t`, the span of every `x^eta f_alpha` of degree `t`,
    /// for `s <= t <= t_max`.
    pub fn rank_profile(&self, t_max: u32) -> Result<Vec<(u32, usize)>> {
        let rows: Vec<Polynomial<F>> = self.polys.iter().map(|f| f.to_polynomial()).collect();
        let out = ideal_rank_profile(self.n(), self.s, &rows, t_max)?;
        for &(t, rk) in &out {
            let floor = crate::borel::truncated_count(self.heads.terms(), t - self.s);
            assert!(
                num_bigint::BigInt::from(rk) >= floor,
                "rank of I_{t} fell below rank of J_{t}"
            );
        }
        Ok(out)
    }
}

/// Coefficient row of a degree-`t` form in `basis`.
pub fn to_row<F: Field>(p: &Polynomial<F>, basis: &TermList) -> Vec<F> {
    let mut row = vec![F::zero(); basis.len()];
    for (t, c) in p.iter() {
        row[basis.index(t).expect("degree matches basis")] = c.clone();
    }
    row
}

pub fn from_row<F: Field>(n: usize, row: &[F], basis: &TermList) -> Polynomial<F> {
    Polynomial::from_terms(
        n,
        row.iter()
            .zip(basis.iter())
            .map(|(c, t)| (t.clone(), c.clone())),
    )
}

/// Ranks of the degree-`t` parts of the ideal generated by degree-`s` forms.
pub fn ideal_rank_profile<F: Field>(
    n: usize,
    s: u32,
    generators: &[Polynomial<F>],
    t_max: u32,
) -> Result<Vec<(u32, usize)>> {
    let mut basis = monomial_basis(n, s);
    let rows: Vec<Vec<F>> = generators.iter().map(|g| to_row(g, &basis)).collect();
    let mut current = Matrix::from_rows(rows, basis.len())?.row_basis();
    let mut out = vec![(s, current.nrows())];
    for t in s + 1..=t_max {
        let next_basis = monomial_basis(n, t);
        let mut rows = Vec::new();
        for r in current.to_rows() {
            let p = from_row(n, &r, &basis);
            for i in 0..=n {
                rows.push(to_row(&p.mul_var(i), &next_basis));
            }
        }
        current = Matrix::from_rows(rows, next_basis.len())?.row_basis();
        basis = next_basis;
        out.push((t, current.nrows()));
    }
    Ok(out)
}

/// The marked set spanning the row space of `l` (columns in `monomial_basis(n, s)` order).
pub fn marked_set_from_subspace<F: Field>(
    l: &Matrix<F>,
    j: &BorelIdeal,
    s: u32,
) -> Result<MarkedSet<F>> {
    let basis = monomial_basis(j.n(), s);
    let heads = j.truncation(s)?;
    if l.ncols() != basis.len() {
        return Err(Error::SizeMismatch(format!(
            "{} columns for {} terms of degree {s}",
            l.ncols(),
            basis.len()
        )));
    }
    if l.nrows() != heads.len() {
        return Err(Error::SizeMismatch(format!(
            "{} rows for {} head terms",
            l.nrows(),
            heads.len()
        )));
    }
    let rank = l.rank();
    if rank != heads.len() {
        return Err(Error::RankDeficient {
            rank,
            expected: heads.len(),
        });
    }
    let head_cols: Vec<usize> = heads.iter().map(|h| basis.index(h).expect("same degree")).collect();
    let minor = l.select_columns(&head_cols);
    let inv = minor.inverse().map_err(|_| Error::ChartMiss)?;
    let m = inv.mul(l)?;
    let standard = j.standard_part(s);
    let mut tails = BTreeMap::new();
    for (k, h) in heads.iter().enumerate() {
        let tail: BTreeMap<Term, F> = standard
            .iter()
            .map(|g| (g.clone(), -m[(k, basis.index(g).expect("same degree"))].clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        tails.insert(h.clone(), tail);
    }
    MarkedSet::new(j, s, tails)
}

impl<F: Field> MarkedSet<F> {
    /// Rows of the marked polynomials in `monomial_basis(n, s)` coordinates.
    pub fn to_matrix(&self) -> Matrix<F> {
        let basis = monomial_basis(self.n(), self.s);
        let rows = self.polys.iter().map(|f| to_row(&f.to_polynomial(), &basis)).collect();
        Matrix::from_rows(rows, basis.len()).expect("uniform rows")
    }
}

/// A marked set whose tail coefficients are independent parameters.
#[derive(Clone, Debug)]
pub struct ParametricMarkedSet {
    pub set: MarkedSet<ParameterPolynomial>,
    pub names: ParamNames,
}

impl ParametricMarkedSet {
    pub fn new(j: &BorelIdeal, s: u32) -> Result<Self> {
        let heads = j.truncation(s)?;
        let standard = j.standard_part(s);
        let mut names = ParamNames::new();
        let mut tails = BTreeMap::new();
        for h in heads.iter() {
            let tail: BTreeMap<Term, ParameterPolynomial> = standard
                .iter()
                .map(|g| {
                    let v = names.intern(ParamVar {
                        head: h.clone(),
                        tail: g.clone(),
                    });
                    (g.clone(), ParameterPolynomial::var(v))
                })
                .collect();
            tails.insert(h.clone(), tail);
        }
        Ok(ParametricMarkedSet {
            set: MarkedSet::new(j, s, tails)?,
            names,
        })
    }

    /// Substitute a value for every parameter.
    pub fn evaluate(&self, value: impl Fn(&ParamVar) -> BigRational) -> MarkedSet<BigRational> {
        let values: Vec<BigRational> = self.names.iter().map(|(_, v)| value(v)).collect();
        self.set.map_coeffs(|p| p.eval(|v| values[v as usize].clone()))
    }

    /// Parameter values read off a rational marked set on the same `J_s`.
    pub fn point_of(&self, f: &MarkedSet<BigRational>) -> Vec<BigRational> {
        self.names
            .iter()
            .map(|(_, v)| {
                f.poly(&v.head)
                    .ok()
                    .and_then(|p| p.tail.get(&v.tail).cloned())
                    .unwrap_or_else(BigRational::zero)
            })
            .collect()
    }
}

/// Equations of the marked scheme of `J_{>=s}` in the parameters `c[α][γ]`.
#[derive(Clone, Debug)]
pub struct MarkedSchemeEquations {
    pub names: ParamNames,
    pub equations: Vec<ParameterPolynomial>,
}

impl MarkedSchemeEquations {
    pub fn eval(&self, point: &[BigRational]) -> Vec<BigRational> {
        self.equations
            .iter()
            .map(|e| e.eval(|v| point[v as usize].clone()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.equations
            .iter()
            .map(|e| e.display(&self.names).to_string())
            .collect()
    }
}

pub fn marked_scheme_equations(j: &BorelIdeal, s: u32) -> Result<MarkedSchemeEquations> {
    let param = ParametricMarkedSet::new(j, s)?;
    let mut eqs = BTreeSet::new();
    for (_, _, r) in param.set.syzygy_residues()? {
        for (_, c) in r.iter() {
            eqs.insert(c.primitive());
        }
    }
    Ok(MarkedSchemeEquations {
        names: param.names,
        equations: eqs.into_iter().collect(),
    })
}

struct OrderedTail<'a, F>(&'a BTreeMap<Term, F>, fn(&F) -> String);

impl<F> Serialize for OrderedTail<'_, F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (t, c) in self.0.iter().rev() {
            map.serialize_entry(&t.to_string(), &(self.1)(c))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
#[serde(bound = "")]
struct PolyOut<'a, F> {
    head: String,
    tail: OrderedTail<'a, F>,
}

#[derive(Serialize)]
#[serde(bound = "")]
struct SetOut<'a, F> {
    #[serde(rename = "J")]
    j: &'a BorelIdeal,
    s: u32,
    polys: Vec<PolyOut<'a, F>>,
}

#[derive(Deserialize)]
struct PolyIn {
    head: String,
    #[serde(default)]
    tail: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct SetIn {
    #[serde(rename = "J")]
    j: BorelIdeal,
    s: u32,
    polys: Vec<PolyIn>,
}

fn set_json<F>(f: &MarkedSet<F>, show: fn(&F) -> String) -> serde_json::Value {
    let out = SetOut {
        j: &f.j,
        s: f.s,
        polys: f
            .polys
            .iter()
            .map(|p| PolyOut {
                head: p.head.to_string(),
                tail: OrderedTail(&p.tail, show),
            })
            .collect(),
    };
    serde_json::to_value(out).expect("plain data")
}

impl MarkedSet<BigRational> {
    pub fn to_json(&self) -> serde_json::Value {
        set_json(self, format_rational)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: SetIn = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.j.n();
        let mut tails = BTreeMap::new();
        for p in raw.polys {
            let head = Term::parse(&p.head, n)?;
            let mut tail = BTreeMap::new();
            for (t, c) in p.tail {
                tail.insert(Term::parse(&t, n)?, parse_rational(&c)?);
            }
            if tails.insert(head.clone(), tail).is_some() {
                return Err(Error::Invalid(format!("head {head} listed twice")));
            }
        }
        for h in tails.keys() {
            if !raw.j.contains(h) || h.degree() != raw.s {
                return Err(Error::NotAHead(h.to_string()));
            }
        }
        MarkedSet::new(&raw.j, raw.s, tails)
    }
}

impl ParametricMarkedSet {
    pub fn to_json(&self) -> serde_json::Value {
        let names = &self.names;
        let polys: Vec<serde_json::Value> = self
            .set
            .polys
            .iter()
            .map(|p| {
                let mut tail = serde_json::Map::new();
                for (t, c) in p.tail.iter().rev() {
                    tail.insert(t.to_string(), c.display(names).to_string().into());
                }
                serde_json::json!({ "head": p.head.to_string(), "tail": tail })
            })
            .collect();
        serde_json::json!({ "J": self.set.j, "s": self.set.s, "polys": polys })
    }
}
