//! Points of the Grassmannian, their Plücker coordinates, and polynomials in
//! the Plücker variables `D[I]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use smallvec::SmallVec;

use crate::borel::MultiIndex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numerical::{format_rational, parse_rational};
use crate::scalar::Ring;
use crate::term::monomial_basis;

use super::subsets::{colex_rank, colex_unrank, complement, shuffle_sign};

/// A `q`-dimensional subspace of the degree-`s` forms, given by a basis in
/// the rows of an exact matrix whose columns follow `monomial_basis(n, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannPoint {
    n: usize,
    s: u32,
    rows: Matrix<BigRational>,
}

impl GrassmannPoint {
    pub fn new(n: usize, s: u32, rows: Matrix<BigRational>) -> Result<Self> {
        let big_n = monomial_basis(n, s).len();
        if rows.ncols() != big_n {
            return Err(Error::SizeMismatch(format!(
                "{} columns for {big_n} terms of degree {s}",
                rows.ncols()
            )));
        }
        let rank = rows.rank();
        if rank != rows.nrows() {
            return Err(Error::RankDeficient {
                rank,
                expected: rows.nrows(),
            });
        }
        Ok(GrassmannPoint { n, s, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn rows(&self) -> &Matrix<BigRational> {
        &self.rows
    }

    /// Dimension `q` of the subspace.
    pub fn dim(&self) -> usize {
        self.rows.nrows()
    }

    /// `N(s)`.
    pub fn ambient(&self) -> usize {
        self.rows.ncols()
    }

    /// Rows scaled to coprime integers.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows.to_rows().iter().map(|r| integer_row(r)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .rows
            .to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        serde_json::json!({ "n": self.n, "s": self.s, "rows": rows })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            s: u32,
            rows: Vec<Vec<String>>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = raw
            .rows
            .iter()
            .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let cols = monomial_basis(raw.n, raw.s).len();
        GrassmannPoint::new(raw.n, raw.s, Matrix::from_rows(rows, cols)?)
    }
}

/// Multiply a rational row by the lcm of its denominators and divide by the
/// gcd of the result.
pub fn integer_row(r: &[BigRational]) -> Vec<BigInt> {
    let den = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = r.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Fraction-free determinant.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..k - 1 {
        if m[c][c].is_zero() {
            let Some(p) = (c + 1..k).find(|&i| !m[i][c].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let v = (&m[i][j] * &m[c][c] - &m[i][c] * &m[c][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[c][c].clone();
    }
    sign * &m[k - 1][k - 1]
}

/// Plücker coordinates `D[I]` for all `p`-subsets `I`, indexed by colex rank.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerVector {
    pub big_n: usize,
    pub p: usize,
    pub coords: Vec<BigInt>,
}

impl PlueckerVector {
    /// `I` 0-based and increasing.
    pub fn get(&self, subset: &[usize]) -> &BigInt {
        &self.coords[colex_rank(subset) as usize]
    }

    pub fn at_index(&self, index: &MultiIndex) -> &BigInt {
        let zero_based: Vec<usize> = index.indices().iter().map(|i| i - 1).collect();
        self.get(&zero_based)
    }

    /// Nonzero coordinates as `(1-based multi-index positions, value)`.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| {
                let idx = colex_unrank(r as u64, self.p).into_iter().map(|i| i + 1).collect();
                (idx, c.clone())
            })
            .collect()
    }

    pub fn scaled(&self, lambda: &BigInt) -> Self {
        PlueckerVector {
            big_n: self.big_n,
            p: self.p,
            coords: self.coords.iter().map(|c| c * lambda).collect(),
        }
    }
}

/// `D[I] = sign(I^c, I) * det(rows[:, I^c])`, scaled by clearing row denominators.
pub fn pluecker_coordinates(l: &GrassmannPoint) -> PlueckerVector {
    let big_n = l.ambient();
    let q = l.dim();
    let p = big_n - q;
    let rows = l.integer_rows();
    let total = super::subsets::choose(big_n, p) as usize;
    let mut coords = vec![BigInt::zero(); total];
    for subset in (0..big_n).combinations(p) {
        let comp = complement(&subset, big_n);
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| comp.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let det = bareiss_det(minor);
        if !det.is_zero() {
            let signed = if shuffle_sign(&comp, &subset) < 0 { -det } else { det };
            coords[colex_rank(&subset) as usize] = signed;
        }
    }
    PlueckerVector { big_n, p, coords }
}

/// Sorted colex ranks of the `D` factors, with repetition.
pub type PlueckerMonomial = SmallVec<[u32; 4]>;

/// A polynomial in the Plücker variables with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlueckerPolynomial {
    terms: BTreeMap<PlueckerMonomial, i64>,
}

fn add_checked(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Pluecker coefficient overflow")
}

impl PlueckerPolynomial {
    /// `coeff * D[subset]`, `subset` given by colex rank.
    pub fn var(rank: u32, coeff: i64) -> Self {
        let mut p = Self::default();
        p.add_term(SmallVec::from_slice(&[rank]), coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PlueckerMonomial, i64)>) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, mut m: PlueckerMonomial, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        m.sort_unstable();
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = add_checked(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlueckerMonomial, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal number of `D` factors in a term.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().map(|m| m.len()).all_equal()
    }

    pub fn eval(&self, point: &PlueckerVector) -> BigInt {
        let mut total = BigInt::zero();
        for (m, &c) in &self.terms {
            let mut prod = BigInt::from(c);
            for &v in m {
                let x = &point.coords[v as usize];
                if x.is_zero() {
                    prod = BigInt::zero();
                    break;
                }
                prod *= x;
            }
            total += prod;
        }
        total
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.terms.values().fold(0i64, |acc, &c| acc.gcd(&c));
        let Some((_, &lead)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        let g = if lead < 0 { -g } else { g };
        PlueckerPolynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), c / g)).collect(),
        }
    }

    /// Terms as `(coefficient, factors)`, factors as 1-based multi-index positions.
    pub fn to_json(&self, p: usize) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<Vec<usize>> = m
                    .iter()
                    .map(|&r| colex_unrank(r as u64, p).into_iter().map(|i| i + 1).collect())
                    .collect();
                serde_json::json!({ "coeff": c.to_string(), "vars": vars })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn display(&self, p: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k > 0 {
                out.push_str(&format!(" {sign} "));
            } else if c < 0 {
                out.push('-');
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if abs != 1 || m.is_empty() {
                parts.push(abs.to_string());
            }
            for &r in m {
                let idx = colex_unrank(r as u64, p).into_iter().map(|i| (i + 1).to_string()).join(",");
                parts.push(format!("D[{idx}]"));
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Debug for PlueckerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Zero for PlueckerPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PlueckerPolynomial {
    fn one() -> Self {
        Self::from_terms([(PlueckerMonomial::new(), 1)])
    }
}

impl Add for PlueckerPolynomial {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.add_assign_ref(&o);
        self
    }
}

impl Sub for PlueckerPolynomial {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for PlueckerPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        PlueckerPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for PlueckerPolynomial {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Ring for PlueckerPolynomial {
    fn add_assign_ref(&mut self, o: &Self) {
        for (m, &c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (a, &c) in &self.terms {
            for (b, &d) in &o.terms {
                let mut m: PlueckerMonomial = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, c.checked_mul(d).expect("Pluecker coefficient overflow"));
            }
        }
        out
    }
}

/// A linear form in the Plücker variables with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    /// `(colex rank, coefficient)`, ranks increasing.
    pub terms: Vec<(u64, BigRational)>,
}

impl LinearForm {
    pub fn eval(&self, point: &PlueckerVector) -> BigRational {
        self.terms
            .iter()
            .map(|(r, c)| c * BigRational::from_integer(point.coords[*r as usize].clone()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn to_json(&self, p: usize) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(r, c)| {
                    let i: Vec<usize> = colex_unrank(*r, p).into_iter().map(|x| x + 1).collect();
                    serde_json::json!({ "coeff": format_rational(c), "var": i })
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn line_in_three_space() {
        // N = 3, p = 2: a single vector v
        let rows = Matrix::from_rows(vec![vec![q(2), q(3), q(5)]], 3).unwrap();
        let l = GrassmannPoint { n: 2, s: 1, rows };
        let c = pluecker_coordinates(&l);
        assert_eq!(c.get(&[1, 2]), &BigInt::from(2));
        assert_eq!(c.get(&[0, 2]), &BigInt::from(-3));
        assert_eq!(c.get(&[0, 1]), &BigInt::from(5));
    }

    #[test]
    fn determinant_matches_rational_elimination() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(4)],
            vec![BigInt::from(1), BigInt::from(5), BigInt::from(9)],
        ];
        let r = Matrix::from_rows(
            m.iter().map(|row| row.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect(),
            3,
        )
        .unwrap();
        assert_eq!(BigRational::from_integer(bareiss_det(m)), r.det().unwrap());
    }

    #[test]
    fn polynomial_canonical_form() {
        let a = PlueckerPolynomial::var(3, 2) * PlueckerPolynomial::var(1, 1);
        let b = PlueckerPolynomial::var(1, 1) * PlueckerPolynomial::var(3, 2);
        assert_eq!(a, b);
        assert!((a.clone() - b).is_zero());
        assert_eq!(a.degree(), 2);
        assert_eq!((-a.clone()).primitive(), PlueckerPolynomial::var(1, 1) * PlueckerPolynomial::var(3, 1));
        assert_eq!(a.display(2), "2*D[1,3]*D[1,4]");
    }
}
