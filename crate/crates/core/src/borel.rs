//! Strongly stable (Borel) ideals, the multi-index dictionary between
//! degree-`s` subsets and ideals, and enumeration of the saturated Borel
//! ideals with a given Hilbert polynomial and bounded regularity.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert::{gotzmann_number, hilbert_polynomial};
use crate::numerical::{binomial, IntegerPolynomial};
use crate::term::{elevations, is_borel_set, monomial_basis, Term, TermList};

/// A monomial ideal given by its minimal generators, sorted decreasingly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Term>,
}

impl MonomialIdeal {
    /// The ideal generated by `terms`, with non-minimal generators pruned.
    pub fn new(n: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        for t in &terms {
            if t.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: t.nvars(),
                });
            }
        }
        // divisors have degree <= their multiples, so after sorting by
        // degree a term only needs checking against those kept before it
        terms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        terms.dedup();
        let mut kept: Vec<Term> = Vec::new();
        for t in terms {
            if !kept.iter().any(|g| g.divides(&t)) {
                kept.push(t);
            }
        }
        kept.sort_by(|a, b| b.cmp(a));
        Ok(MonomialIdeal { n, generators: kept })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Term] {
        &self.generators
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.generators.iter().any(|g| g.divides(t))
    }

    /// First elevation of a generator that falls outside the ideal.
    fn missing_elevation(&self) -> Option<Term> {
        self.generators
            .iter()
            .flat_map(elevations)
            .find(|v| !self.contains(v))
    }

    pub fn is_strongly_stable(&self) -> bool {
        self.missing_elevation().is_none()
    }

    /// Degree-`t` terms of the ideal, decreasing.
    pub fn degree_part(&self, t: u32) -> TermList {
        let terms = monomial_basis(self.n, t)
            .into_terms()
            .into_iter()
            .filter(|u| self.contains(u));
        TermList::from_terms(self.n, terms).expect("homogeneous")
    }

    /// Degree-`t` terms outside the ideal, decreasing.
    pub fn standard_part(&self, t: u32) -> TermList {
        let terms = monomial_basis(self.n, t)
            .into_terms()
            .into_iter()
            .filter(|u| !self.contains(u));
        TermList::from_terms(self.n, terms).expect("homogeneous")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A strongly stable monomial ideal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorelIdeal(MonomialIdeal);

impl BorelIdeal {
    /// Minimal generators of the ideal spanned by `terms`, checked for strong stability.
    pub fn new(n: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        Self::try_from(MonomialIdeal::new(n, terms)?)
    }

    /// Parse generators given in text form.
    pub fn parse(n: usize, generators: &[&str]) -> Result<Self> {
        let terms = generators
            .iter()
            .map(|s| Term::parse(s, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, terms)
    }

    pub fn unit(n: usize) -> Self {
        BorelIdeal(MonomialIdeal {
            n,
            generators: vec![Term::one(n)],
        })
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn generators(&self) -> &[Term] {
        &self.0.generators
    }

    pub fn as_monomial(&self) -> &MonomialIdeal {
        &self.0
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.0.contains(t)
    }

    /// Maximal generator degree; 0 for the zero and unit ideals.
    pub fn regularity(&self) -> u32 {
        self.generators().iter().map(Term::degree).max().unwrap_or(0)
    }

    /// Divide every generator by its full power of `x_0`.
    pub fn saturate(&self) -> BorelIdeal {
        let ideal = MonomialIdeal::new(self.n(), self.generators().iter().map(Term::strip_x0))
            .expect("same variables");
        BorelIdeal(ideal)
    }

    pub fn is_saturated(&self) -> bool {
        self.generators().iter().all(|g| g.exponent(0) == 0)
    }

    /// All degree-`s` terms of the ideal, which generate `J_{>=s}` once `s >= reg`.
    pub fn truncation(&self, s: u32) -> Result<TermList> {
        let reg = self.regularity();
        if s < reg {
            return Err(Error::BelowRegularity { s, reg });
        }
        Ok(self.0.degree_part(s))
    }

    /// The ideal generated by the degree-`s` part.
    pub fn truncated_ideal(&self, s: u32) -> Result<BorelIdeal> {
        let part = self.truncation(s)?;
        Ok(BorelIdeal(MonomialIdeal::new(self.n(), part.into_terms())?))
    }

    /// Standard terms `N(J)_t`, decreasing.
    pub fn standard_part(&self, t: u32) -> TermList {
        self.0.standard_part(t)
    }

    /// Positions of `N(J)_s` in the degree-`s` monomial basis.
    pub fn multiindex(&self, s: u32) -> Result<MultiIndex> {
        let reg = self.regularity();
        if s < reg {
            return Err(Error::BelowRegularity { s, reg });
        }
        let basis = monomial_basis(self.n(), s);
        let indices = basis
            .iter()
            .enumerate()
            .filter(|(_, u)| !self.contains(u))
            .map(|(i, _)| i + 1)
            .collect();
        MultiIndex::new(self.n(), s, indices)
    }

    pub fn hilbert_polynomial(&self) -> Result<IntegerPolynomial> {
        hilbert_polynomial(self)
    }

    /// Generators as text.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.to_string()).collect()
    }
}

impl TryFrom<MonomialIdeal> for BorelIdeal {
    type Error = Error;

    fn try_from(ideal: MonomialIdeal) -> Result<Self> {
        match ideal.missing_elevation() {
            Some(v) => Err(Error::NotStronglyStable(v.to_string())),
            None => Ok(BorelIdeal(ideal)),
        }
    }
}

impl fmt::Display for BorelIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for BorelIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    generators: Vec<String>,
}

impl Serialize for BorelIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson {
            n: self.n(),
            generators: self.generator_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BorelIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = IdealJson::deserialize(d)?;
        let gens: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
        BorelIdeal::parse(raw.n, &gens).map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing 1-based positions in the degree-`s` monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MultiIndexJson")]
pub struct MultiIndex {
    n: usize,
    s: u32,
    indices: Vec<usize>,
}

#[derive(Deserialize)]
struct MultiIndexJson {
    n: usize,
    s: u32,
    indices: Vec<usize>,
}

impl TryFrom<MultiIndexJson> for MultiIndex {
    type Error = Error;
    fn try_from(v: MultiIndexJson) -> Result<Self> {
        MultiIndex::new(v.n, v.s, v.indices)
    }
}

impl MultiIndex {
    pub fn new(n: usize, s: u32, indices: Vec<usize>) -> Result<Self> {
        let big_n = binomial(n as i64 + s as i64, n as i64);
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("indices {indices:?} are not strictly increasing")));
        }
        if indices
            .iter()
            .any(|&i| i == 0 || BigInt::from(i) > big_n)
        {
            return Err(Error::Invalid(format!("indices {indices:?} outside [1, {big_n}]")));
        }
        Ok(MultiIndex { n, s, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Minimal generators of the ideal spanned by `terms`.
pub fn minimal_generators(n: usize, terms: impl IntoIterator<Item = Term>) -> Result<BorelIdeal> {
    BorelIdeal::new(n, terms)
}

/// Positions of the standard terms of degree `s`.
pub fn multiindex_of(j: &BorelIdeal, s: u32) -> Result<MultiIndex> {
    j.multiindex(s)
}

/// `J(I)`: the ideal generated by the degree-`s` terms whose position is not in `I`.
#[derive(Clone, Debug)]
pub struct IndexIdeal {
    pub ideal: MonomialIdeal,
    /// Present exactly when `J(I)` is strongly stable.
    pub borel: Option<BorelIdeal>,
}

pub fn ideal_from_multiindex(index: &MultiIndex) -> IndexIdeal {
    let basis = monomial_basis(index.n, index.s);
    let keep: BTreeSet<usize> = index.indices.iter().copied().collect();
    let terms: Vec<Term> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| !keep.contains(&(i + 1)))
        .map(|(_, u)| u.clone())
        .collect();
    let borel = is_borel_set(&terms).expect("one degree");
    let ideal = MonomialIdeal::new(index.n, terms).expect("same variables");
    IndexIdeal {
        borel: borel.then(|| BorelIdeal(ideal.clone())),
        ideal,
    }
}

/// Membership level of a multi-index among the index sets of a working degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexClass {
    /// `J(I)` is not strongly stable.
    NotBorel,
    /// Strongly stable, wrong Hilbert polynomial.
    InS,
    /// Right Hilbert polynomial, but `reg(J(I)^sat)` exceeds the bound.
    InSp,
    /// Right Hilbert polynomial and bounded regularity.
    InSrp,
}

pub fn classify_multiindex(
    index: &MultiIndex,
    p: &IntegerPolynomial,
    rprime: u32,
) -> Result<IndexClass> {
    let Some(j) = ideal_from_multiindex(index).borel else {
        return Ok(IndexClass::NotBorel);
    };
    if &j.hilbert_polynomial()? != p {
        return Ok(IndexClass::InS);
    }
    if j.saturate().regularity() > rprime {
        return Ok(IndexClass::InSp);
    }
    Ok(IndexClass::InSrp)
}

/// Elevation-closed subsets of the degree-`s` terms with a prescribed size,
/// as bitmasks over `monomial_basis(n, s)` (bit `k` = position `k + 1`).
pub struct BorelSets {
    basis: TermList,
    /// `up[k]`: mask of the elementary elevations of term `k`.
    up: Vec<u128>,
}

impl BorelSets {
    pub fn new(n: usize, s: u32) -> Result<Self> {
        let basis = monomial_basis(n, s);
        if basis.len() > 128 {
            return Err(Error::SizeGuardExceeded(format!(
                "{} terms of degree {s} in {} variables (limit 128)",
                basis.len(),
                n + 1
            )));
        }
        let up = basis
            .iter()
            .map(|u| {
                elevations(u)
                    .iter()
                    .map(|v| 1u128 << basis.index(v).expect("same degree"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        Ok(BorelSets { basis, up })
    }

    pub fn basis(&self) -> &TermList {
        &self.basis
    }

    /// Visit every elevation-closed set of exactly `size` terms.
    pub fn for_each(&self, size: usize, mut visit: impl FnMut(u128)) {
        if size <= self.basis.len() {
            self.walk(0, 0, 0, size, &mut visit);
        }
    }

    // Terms are scanned in decreasing order, and every elevation of a term is
    // larger than it, so the membership of all elevations is already decided.
    fn walk(&self, k: usize, mask: u128, count: usize, size: usize, visit: &mut impl FnMut(u128)) {
        if count == size {
            visit(mask);
            return;
        }
        let len = self.basis.len();
        if k == len || count + (len - k) < size {
            return;
        }
        if self.up[k] & !mask == 0 {
            self.walk(k + 1, mask | (1 << k), count + 1, size, visit);
        }
        self.walk(k + 1, mask, count, size, visit);
    }

    pub fn terms_of(&self, mask: u128) -> Vec<Term> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, u)| u.clone())
            .collect()
    }
}

/// `|J_{s+k}|` for the ideal generated by an elevation-closed degree-`s` set:
/// each term of `J_{s+k}` is uniquely `u * m` with `u` a generator and
/// `max(m) <= min(u)`.
pub fn truncated_count(generators: &[Term], k: u32) -> BigInt {
    generators
        .iter()
        .map(|u| {
            let m = u.min_var().unwrap_or(0) as i64;
            binomial(m + k as i64, k as i64)
        })
        .sum()
}

/// All saturated strongly stable ideals with Hilbert polynomial `p` and
/// regularity at most `rprime`, sorted by generator lists.
pub fn enumerate_borel(n: usize, p: &IntegerPolynomial, rprime: u32) -> Result<Vec<BorelIdeal>> {
    let r = gotzmann_number(p)?;
    if rprime == 0 || rprime as u64 > r {
        return Err(Error::DegreeOutOfRange { s: rprime, lo: 1, hi: r.min(u32::MAX as u64) as u32 });
    }
    let sets = BorelSets::new(n, rprime)?;
    let big_n = sets.basis().len() as i64;
    let p_s = p.eval_i64(rprime as i64)?;
    if p_s < 0 || p_s > big_n {
        return Ok(Vec::new());
    }
    let size = (big_n - p_s) as usize;
    // Hilbert function of (B) at rprime + k, k = 0..=n, pins the polynomial
    let targets: Vec<BigInt> = (0..=n as u32)
        .map(|k| {
            let t = (rprime + k) as i64;
            binomial(n as i64 + t, n as i64) - p.eval_int(t).expect("numerical")
        })
        .collect();
    let mut found: BTreeSet<BorelIdeal> = BTreeSet::new();
    sets.for_each(size, |mask| {
        let gens = sets.terms_of(mask);
        let matches = targets
            .iter()
            .enumerate()
            .all(|(k, want)| &truncated_count(&gens, k as u32) == want);
        if matches {
            let ideal = MonomialIdeal::new(n, gens).expect("same variables");
            found.insert(BorelIdeal(ideal).saturate());
        }
    });
    Ok(found.into_iter().collect())
}
