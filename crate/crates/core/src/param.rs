//! Polynomials with rational coefficients in the tail parameters `c[α][γ]`.
//!
//! Variables are plain indices; [`ParamNames`] maps them back to text.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::numerical::format_rational;
use crate::scalar::Ring;
use crate::term::Term;

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type ParamMonomial = SmallVec<[(u32, u32); 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParameterPolynomial {
    terms: BTreeMap<ParamMonomial, BigRational>,
}

fn mono_mul(a: &ParamMonomial, b: &ParamMonomial) -> ParamMonomial {
    let mut out = ParamMonomial::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl ParameterPolynomial {
    pub fn var(v: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SmallVec::from_slice(&[(v, 1)]), BigRational::one());
        ParameterPolynomial { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ParamMonomial::new(), c);
        }
        ParameterPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e).sum())
            .max()
    }

    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        let mut vs: Vec<u32> = self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.into_iter()
    }

    fn add_mono(&mut self, m: ParamMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn eval(&self, value: impl Fn(u32) -> BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for &(v, e) in m {
                let x = value(v);
                for _ in 0..e {
                    prod *= &x;
                }
            }
            total += prod;
        }
        total
    }

    /// Scale so the coefficients are coprime integers with a positive leading one.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let Some(lead) = self.terms.values().next_back() else {
            return self.clone();
        };
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut scale = BigRational::new(den, num);
        if lead < &BigRational::zero() {
            scale = -scale;
        }
        ParameterPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &scale)).collect(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a ParamNames) -> impl fmt::Display + 'a {
        Shown { p: self, names }
    }
}

struct Shown<'a> {
    p: &'a ParameterPolynomial,
    names: &'a ParamNames,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c < &BigRational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_empty() {
                parts.push(format_rational(&abs));
            }
            for &(v, e) in m {
                let name = self.names.name(v);
                parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParameterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for &(v, e) in m {
                write!(f, "*c{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Zero for ParameterPolynomial {
    fn zero() -> Self {
        ParameterPolynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParameterPolynomial {
    fn one() -> Self {
        ParameterPolynomial::constant(BigRational::one())
    }
}

impl Add for ParameterPolynomial {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        self.add_assign_ref(&other);
        self
    }
}

impl Sub for ParameterPolynomial {
    type Output = Self;
    fn sub(mut self, other: Self) -> Self {
        for (m, c) in other.terms {
            self.add_mono(m, -c);
        }
        self
    }
}

impl Neg for ParameterPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        ParameterPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for ParameterPolynomial {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Ring for ParameterPolynomial {
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_mono(m.clone(), c.clone());
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = ParameterPolynomial::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_mono(mono_mul(a, b), c * d);
            }
        }
        out
    }
}

impl From<BigRational> for ParameterPolynomial {
    fn from(c: BigRational) -> Self {
        ParameterPolynomial::constant(c)
    }
}

/// The parameter `c[α][γ]` attached to head `α` and tail term `γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamVar {
    pub head: Term,
    pub tail: Term,
}

impl fmt::Display for ParamVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{}][{}]", self.head, self.tail)
    }
}

/// Index <-> `c[α][γ]` registry.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamNames {
    vars: Vec<ParamVar>,
    index: BTreeMap<ParamVar, u32>,
}

impl ParamNames {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `v`, registering it on first use.
    pub fn intern(&mut self, v: ParamVar) -> u32 {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        let i = self.vars.len() as u32;
        self.vars.push(v.clone());
        self.index.insert(v, i);
        i
    }

    pub fn get(&self, v: &ParamVar) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn var(&self, i: u32) -> &ParamVar {
        &self.vars[i as usize]
    }

    pub fn name(&self, i: u32) -> String {
        self.vars
            .get(i as usize)
            .map_or_else(|| format!("c{i}"), |v| v.to_string())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &ParamVar)> {
        self.vars.iter().enumerate().map(|(i, v)| (i as u32, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn ring_laws_on_small_cases() {
        let x = ParameterPolynomial::var(0);
        let y = ParameterPolynomial::var(1);
        let s = x.clone() + y.clone();
        let sq = s.mul_ref(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.total_degree(), Some(2));
        let back = sq - x.mul_ref(&x) - y.mul_ref(&y) - (x.clone() * y.clone()) - (x * y);
        assert!(back.is_zero());
    }

    #[test]
    fn evaluation_and_display() {
        let mut names = ParamNames::new();
        let h = Term::parse("x2^2", 2).unwrap();
        let a = names.intern(ParamVar { head: h.clone(), tail: Term::parse("x1*x0", 2).unwrap() });
        let b = names.intern(ParamVar { head: h, tail: Term::parse("x0^2", 2).unwrap() });
        let p = ParameterPolynomial::var(a).mul_ref(&ParameterPolynomial::var(b))
            - ParameterPolynomial::constant(q(3));
        assert_eq!(p.eval(|v| if v == a { q(2) } else { q(5) }), q(7));
        assert_eq!(p.display(&names).to_string(), "c[x2^2][x1*x0]*c[x2^2][x0^2] - 3");
        assert_eq!((-p.clone()).primitive(), p.primitive());
    }
}
