//! Terms (monomials) in `x_0, ..., x_n` under DegRevLex with `x_0 < ... < x_n`,
//! and the elevation moves that define strong stability.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector `(a_0, ..., a_n)` of the term `x_0^a_0 * ... * x_n^a_n`.
///
/// `Ord` is DegRevLex: higher degree is larger; at equal degree the term with
/// the smaller exponent at the first differing variable (counting from `x_0`)
/// is larger. Terms over different numbers of variables are ordered by
/// variable count first so that `Ord` stays total; use [`compare_degrevlex`]
/// to get an error instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: SmallVec<[u32; 6]>,
}

impl Term {
    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Term {
            exps: SmallVec::from_vec(exps.into()),
        }
    }

    pub fn one(n: usize) -> Self {
        Term {
            exps: SmallVec::from_elem(0, n + 1),
        }
    }

    /// The variable `x_i` in `n + 1` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut t = Term::one(n);
        t.exps[i] = 1;
        t
    }

    /// Index of the largest variable, i.e. `n`.
    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Smallest `i` with `x_i | self`.
    pub fn min_var(&self) -> Result<usize> {
        self.exps
            .iter()
            .position(|&e| e > 0)
            .ok_or(Error::DegreeZero)
    }

    /// Largest `i` with `x_i | self`.
    pub fn max_var(&self) -> Result<usize> {
        self.exps
            .iter()
            .rposition(|&e| e > 0)
            .ok_or(Error::DegreeZero)
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Term {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Term {
        let mut t = self.clone();
        t.exps[i] += 1;
        t
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Term) -> Option<Term> {
        if !other.divides(self) {
            return None;
        }
        Some(Term {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// `(x_j / x_i) * self`; `None` if `x_i` does not divide.
    pub fn shift(&self, i: usize, j: usize) -> Option<Term> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut t = self.clone();
        t.exps[i] -= 1;
        t.exps[j] += 1;
        Some(t)
    }

    /// Drop every power of `x_0`.
    pub fn strip_x0(&self) -> Term {
        let mut t = self.clone();
        t.exps[0] = 0;
        t
    }

    /// Parse the text form `x3^2*x1` (or `1`) in `n + 1` variables.
    pub fn parse(s: &str, n: usize) -> Result<Term> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut t = Term::one(n);
        if s == "1" {
            return Ok(t);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        for factor in s.split('*') {
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("bad factor '{factor}' in term '{s}'")))?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e),
                None => (body, "1"),
            };
            let var: usize = var
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in '{factor}'")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
            if var > n {
                return Err(Error::Parse(format!("variable x{var} out of range for n = {n}")));
            }
            t.exps[var] += exp;
        }
        Ok(t)
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .len()
            .cmp(&other.exps.len())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    if a != b {
                        // smaller exponent on the smallest differing variable wins
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// DegRevLex comparison, rejecting terms over different variable sets.
pub fn compare_degrevlex(u: &Term, v: &Term) -> Result<Ordering> {
    if u.nvars() != v.nvars() {
        return Err(Error::DimensionMismatch {
            expected: u.nvars(),
            found: v.nvars(),
        });
    }
    Ok(u.cmp(v))
}

/// Terms of one degree in strictly decreasing DegRevLex order.
///
/// Positions are 1-based, so position `j` holds `x^{alpha(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermList {
    n: usize,
    degree: u32,
    terms: Vec<Term>,
}

impl TermList {
    /// Sort, deduplicate and check homogeneity.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        let mut degree = None;
        for t in &terms {
            if t.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: t.nvars(),
                });
            }
            match degree {
                None => degree = Some(t.degree()),
                Some(d) if d != t.degree() => return Err(Error::MixedDegrees(d, t.degree())),
                _ => {}
            }
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        terms.dedup();
        Ok(TermList {
            n,
            degree: degree.unwrap_or(0),
            terms,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.terms.iter()
    }

    /// The term at 1-based position `j`.
    pub fn at(&self, j: usize) -> Option<&Term> {
        j.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    /// 1-based position of `t`.
    pub fn position(&self, t: &Term) -> Option<usize> {
        self.terms
            .binary_search_by(|probe| t.cmp(probe))
            .ok()
            .map(|i| i + 1)
    }

    /// 0-based index of `t`, for dense vectors over this basis.
    pub fn index(&self, t: &Term) -> Option<usize> {
        self.position(t).map(|j| j - 1)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.position(t).is_some()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

impl<'a> IntoIterator for &'a TermList {
    type Item = &'a Term;
    type IntoIter = std::slice::Iter<'a, Term>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// All `C(n+t, n)` terms of degree `t` in `x_0..x_n`, decreasing.
pub fn monomial_basis(n: usize, t: u32) -> TermList {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n + 1];
    fill(&mut exps, 0, t, &mut out);
    out.sort_unstable_by(|a: &Term, b| b.cmp(a));
    TermList {
        n,
        degree: t,
        terms: out,
    }
}

fn fill(exps: &mut [u32], i: usize, left: u32, out: &mut Vec<Term>) {
    if i + 1 == exps.len() {
        exps[i] = left;
        out.push(Term::new(exps.to_vec()));
        return;
    }
    for e in 0..=left {
        exps[i] = e;
        fill(exps, i + 1, left - e, out);
    }
    exps[i] = 0;
}

/// Elementary elevations `(x_j / x_i) u` for every `x_i | u` and `j > i`.
pub fn elevations(u: &Term) -> BTreeSet<Term> {
    let n = u.n();
    let mut out = BTreeSet::new();
    for i in 0..n {
        if u.exponent(i) == 0 {
            continue;
        }
        for j in i + 1..=n {
            out.insert(u.shift(i, j).expect("x_i divides u"));
        }
    }
    out
}

fn check_homogeneous<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Result<()> {
    let mut degree = None;
    for t in terms {
        match degree {
            None => degree = Some(t.degree()),
            Some(d) if d != t.degree() => return Err(Error::MixedDegrees(d, t.degree())),
            _ => {}
        }
    }
    Ok(())
}

/// Whether a homogeneous set of terms is closed under elevations.
pub fn is_borel_set<'a>(terms: impl IntoIterator<Item = &'a Term> + Clone) -> Result<bool> {
    check_homogeneous(terms.clone())?;
    let set: BTreeSet<&Term> = terms.into_iter().collect();
    Ok(set
        .iter()
        .all(|u| elevations(u).iter().all(|v| set.contains(v))))
}

/// Smallest elevation-closed superset of a homogeneous set of terms.
pub fn borel_closure<'a>(terms: impl IntoIterator<Item = &'a Term> + Clone) -> Result<TermList> {
    check_homogeneous(terms.clone())?;
    let mut closed: BTreeSet<Term> = BTreeSet::new();
    let mut stack: Vec<Term> = terms.into_iter().cloned().collect();
    let n = match stack.first() {
        Some(t) => t.n(),
        None => return TermList::from_terms(0, []),
    };
    while let Some(u) = stack.pop() {
        if closed.contains(&u) {
            continue;
        }
        stack.extend(elevations(&u).into_iter().filter(|v| !closed.contains(v)));
        closed.insert(u);
    }
    TermList::from_terms(n, closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, n: usize) -> Term {
        Term::parse(s, n).unwrap()
    }

    fn texts(list: &TermList) -> Vec<String> {
        list.iter().map(|u| u.to_string()).collect()
    }

    #[test]
    fn degrevlex_examples() {
        assert_eq!(compare_degrevlex(&t("x2^2", 3), &t("x3*x1", 3)), Ok(Ordering::Greater));
        assert_eq!(compare_degrevlex(&t("x1^2", 3), &t("x3*x0", 3)), Ok(Ordering::Greater));
        let u = t("x3*x2*x0", 3);
        assert_eq!(compare_degrevlex(&u, &u), Ok(Ordering::Equal));
        assert!(t("x0^3", 3) > t("x3^2", 3));
        assert!(matches!(
            compare_degrevlex(&t("x1", 1), &t("x1", 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn basis_in_p3_degree_two() {
        let b = monomial_basis(3, 2);
        assert_eq!(
            texts(&b),
            [
                "x3^2", "x3*x2", "x2^2", "x3*x1", "x2*x1", "x1^2", "x3*x0", "x2*x0", "x1*x0",
                "x0^2"
            ]
        );
        assert_eq!(b.position(&t("x1^2", 3)), Some(6));
        assert_eq!(b.position(&t("x3*x0", 3)), Some(7));
        assert_eq!(b.at(1), Some(&t("x3^2", 3)));
        assert_eq!(b.at(0), None);
    }

    #[test]
    fn small_bases() {
        assert_eq!(texts(&monomial_basis(0, 5)), ["x0^5"]);
        assert_eq!(texts(&monomial_basis(2, 1)), ["x2", "x1", "x0"]);
        assert_eq!(texts(&monomial_basis(4, 0)), ["1"]);
    }

    #[test]
    fn min_max_var() {
        assert_eq!(t("x3*x0", 3).min_var(), Ok(0));
        assert_eq!(t("x3*x0", 3).max_var(), Ok(3));
        assert_eq!(t("x2^2*x1", 3).min_var(), Ok(1));
        assert_eq!(Term::one(3).min_var(), Err(Error::DegreeZero));
        assert_eq!(Term::one(3).max_var(), Err(Error::DegreeZero));
    }

    #[test]
    fn elevation_sets() {
        let e: Vec<String> = elevations(&t("x1^2", 2)).iter().map(|u| u.to_string()).collect();
        assert_eq!(e, ["x2*x1"]);

        let got = elevations(&t("x0^3", 3));
        let want: BTreeSet<Term> = ["x1*x0^2", "x2*x0^2", "x3*x0^2"].iter().map(|s| t(s, 3)).collect();
        assert_eq!(got, want);

        // oracle: direct construction over all (i, j) pairs
        let u = t("x2*x0", 3);
        let mut oracle = BTreeSet::new();
        for i in 0..=3 {
            for j in i + 1..=3 {
                if u.exponent(i) > 0 {
                    let mut e = u.exponents().to_vec();
                    e[i] -= 1;
                    e[j] += 1;
                    oracle.insert(Term::new(e));
                }
            }
        }
        assert_eq!(elevations(&u), oracle);
        let want: BTreeSet<Term> = ["x2*x1", "x2^2", "x3*x2", "x3*x0"].iter().map(|s| t(s, 3)).collect();
        assert_eq!(oracle, want);
    }

    #[test]
    fn borel_sets() {
        let a: Vec<Term> = ["x3^2", "x3*x2", "x2^2", "x3*x1", "x2*x1"].iter().map(|s| t(s, 3)).collect();
        assert_eq!(is_borel_set(&a), Ok(true));
        let b: Vec<Term> = ["x3^2", "x3*x2", "x3*x1", "x3*x0"].iter().map(|s| t(s, 3)).collect();
        assert_eq!(is_borel_set(&b), Ok(true));
        assert_eq!(is_borel_set(&[t("x3*x0", 3)]), Ok(false));
        assert_eq!(
            is_borel_set(&[t("x3*x0", 3), t("x3", 3)]),
            Err(Error::MixedDegrees(2, 1))
        );
    }

    #[test]
    fn closures() {
        let c = borel_closure(&[t("x3*x0", 3)]).unwrap();
        assert_eq!(texts(&c), ["x3^2", "x3*x2", "x3*x1", "x3*x0"]);
        let again = borel_closure(c.terms()).unwrap();
        assert_eq!(again, c);
        let c = borel_closure(&[t("x1^2", 2)]).unwrap();
        assert_eq!(texts(&c), ["x2^2", "x2*x1", "x1^2"]);
    }

    #[test]
    fn text_round_trip() {
        for s in ["x3^2*x1", "x0", "1", "x4*x2^3*x0^2"] {
            assert_eq!(t(s, 4).to_string(), s);
        }
        assert_eq!(t("x1 * x3^2", 3).to_string(), "x3^2*x1");
        assert!(Term::parse("y1", 3).is_err());
        assert!(Term::parse("x5", 3).is_err());
    }
}
