//! Sparse polynomials in `x_0, ..., x_n` with coefficients in a [`Ring`].

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Ring;
use crate::term::Term;

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C> {
    n: usize,
    terms: BTreeMap<Term, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(t: Term, c: C) -> Self {
        let mut p = Self::zero(t.n());
        p.add_term(t, c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Term, C)>) -> Self {
        let mut p = Self::zero(n);
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Option<&C> {
        self.terms.get(t)
    }

    /// Terms with coefficients, increasing.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Term, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Term> {
        self.terms.keys()
    }

    pub fn max_term(&self) -> Option<&Term> {
        self.terms.keys().next_back()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Term::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, t: Term, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn remove(&mut self, t: &Term) -> Option<C> {
        self.terms.remove(t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(t, a)| (t.clone(), a.mul_ref(c))))
    }

    pub fn mul_term(&self, m: &Term) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, c)| (t.mul_var(i), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (t, c) in &self.terms {
            for (u, d) in &other.terms {
                out.add_term(t.mul(u), c.mul_ref(d));
            }
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(t, c)| (t.clone(), f(c))))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "({c})*{t}")?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        Term::parse(s, 2).unwrap()
    }

    #[test]
    fn arithmetic_cancels() {
        let a = Polynomial::from_terms(2, [(t("x2*x1"), 1i64), (t("x0^2"), -1)]);
        let b = Polynomial::from_terms(2, [(t("x2*x1"), 1i64)]);
        let d = a.sub(&b);
        assert_eq!(d.len(), 1);
        assert_eq!(d.coeff(&t("x0^2")), Some(&-1));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.max_term(), Some(&t("x2*x1")));
    }

    #[test]
    fn products() {
        let a = Polynomial::from_terms(2, [(t("x1"), 1i64), (t("x0"), 1)]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(&t("x1*x0")), Some(&2));
        assert_eq!(a.mul_var(2).coeff(&t("x2*x1")), Some(&1));
    }
}
