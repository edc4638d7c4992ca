#![allow(dead_code)]

use std::collections::BTreeSet;

use hilbreg::borel::{BorelIdeal, IndexClass};
use hilbreg::hilbert::{gotzmann_number, is_admissible};
use hilbreg::linalg::Matrix;
use hilbreg::term::{is_borel_set, monomial_basis, Term};
use hilbreg::{IntegerPolynomial, Rational};
use itertools::Itertools;
use num_traits::{One, Zero};

pub fn poly(s: &str) -> IntegerPolynomial {
    IntegerPolynomial::parse(s).unwrap()
}

pub fn q(a: i64) -> Rational {
    Rational::from_integer(a.into())
}

pub fn borel(n: usize, gens: &[&str]) -> BorelIdeal {
    BorelIdeal::parse(n, gens).unwrap()
}

/// `(n, p)` pairs with `n <= 3`, `deg p <= 1`, `deg p < n`, admissible.
pub fn corpus() -> Vec<(usize, IntegerPolynomial)> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        for c in 1..=4 {
            out.push((n, IntegerPolynomial::constant(c)));
        }
        if n >= 2 {
            for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 0), (2, 0), (3, 1)] {
                out.push((n, IntegerPolynomial::linear(a, b)));
            }
        }
    }
    out.retain(|(_, p)| is_admissible(p));
    out
}

/// `(n, p, r')` for every corpus entry and `1 <= r' <= min(r, 3)`.
pub fn corpus_cases() -> Vec<(usize, IntegerPolynomial, u32)> {
    let mut out = Vec::new();
    for (n, p) in corpus() {
        let r = gotzmann_number(&p).unwrap();
        for rp in 1..=r.min(3) as u32 {
            out.push((n, p.clone(), rp));
        }
    }
    out
}

/// Exhaustive oracle: saturations of the ideals spanned by every Borel subset
/// of degree-`r'` terms, kept when the Hilbert polynomial is `p` and the
/// regularity is at most `r'`.
pub fn brute_force_borel(n: usize, p: &IntegerPolynomial, rprime: u32) -> BTreeSet<Vec<String>> {
    let basis = monomial_basis(n, rprime);
    let mut out = BTreeSet::new();
    let Ok(pv) = p.eval_i64(rprime as i64) else { return out };
    let q = basis.len() as i64 - pv;
    if q < 0 {
        return out;
    }
    for subset in basis.iter().cloned().combinations(q as usize) {
        if !is_borel_set(subset.iter()).unwrap_or(false) && !subset.is_empty() {
            continue;
        }
        let gens: Vec<Term> = if subset.is_empty() { Vec::new() } else { subset };
        let Ok(j) = BorelIdeal::new(n, gens) else { continue };
        let sat = j.saturate();
        if sat.regularity() <= rprime && sat.hilbert_polynomial().map(|h| &h == p).unwrap_or(false) {
            let mut g = sat.generator_strings();
            g.sort();
            out.insert(g);
        }
    }
    out
}

pub fn sorted_gens(j: &BorelIdeal) -> Vec<String> {
    let mut g = j.generator_strings();
    g.sort();
    g
}

/// Matrix whose rows are the unit vectors of the given columns.
pub fn unit_rows(cols: &[usize], width: usize) -> Matrix<Rational> {
    let rows = cols
        .iter()
        .map(|&c| (0..width).map(|k| if k == c { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    Matrix::from_rows(rows, width).unwrap()
}

pub fn is_in_srp(c: IndexClass) -> bool {
    c == IndexClass::InSrp
}
