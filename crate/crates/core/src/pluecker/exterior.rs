//! Exterior algebra on the degree-`t` forms, and the elements `δ^(m)_K`.
//!
//! A basis wedge `e_{h_1} ∧ ... ∧ e_{h_m}` with `h_1 < ... < h_m` is stored
//! as the bit mask of its positions in `monomial_basis(n, t)`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::term::monomial_basis;

use super::coords::{PlueckerPolynomial, PlueckerVector};
use super::subsets::{colex_rank, mask_of, positions, shuffle_sign, wedge_sign};

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorElement<C> {
    grade: usize,
    terms: BTreeMap<u128, C>,
}

impl<C: Ring> ExteriorElement<C> {
    pub fn zero(grade: usize) -> Self {
        ExteriorElement {
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// Empty wedge: the unit of the exterior algebra.
    pub fn unit() -> Self {
        let mut e = Self::zero(0);
        e.terms.insert(0, C::one());
        e
    }

    pub fn grade(&self) -> usize {
        self.grade
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

    pub fn terms(&self) -> impl Iterator<Item = (&u128, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u128) -> Option<&C> {
        self.terms.get(&mask)
    }

    pub fn add_term(&mut self, mask: u128, c: C) {
        debug_assert_eq!(mask.count_ones() as usize, self.grade);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExteriorElement {
            grade: self.grade,
            terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.grade + other.grade);
        for (&a, c) in &self.terms {
            for (&b, d) in &other.terms {
                match wedge_sign(a, b) {
                    0 => {}
                    1 => out.add_term(a | b, c.mul_ref(d)),
                    _ => out.add_term(a | b, -c.mul_ref(d)),
                }
            }
        }
        out
    }

    /// Relabel every wedge slot through an increasing injective map.
    pub fn relabel(&self, map: &[usize]) -> Self {
        ExteriorElement {
            grade: self.grade,
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (mask_of(&positions(m).into_iter().map(|h| map[h]).collect::<Vec<_>>()), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> ExteriorElement<D> {
        let mut out = ExteriorElement::zero(self.grade);
        for (&m, c) in &self.terms {
            out.add_term(m, f(c));
        }
        out
    }
}

/// Positions of `x_i * u` in `monomial_basis(n, s + 1)` for each `u` in
/// `monomial_basis(n, s)`. Multiplication by a variable preserves the term
/// order, so the map is increasing.
pub fn variable_map(n: usize, s: u32, i: usize) -> Vec<usize> {
    let src = monomial_basis(n, s);
    let dst = monomial_basis(n, s + 1);
    src.iter()
        .map(|u| dst.index(&u.mul_var(i)).expect("degree s + 1"))
        .collect()
}

/// `x_i * e` for `e` in the degree-`s` exterior algebra.
pub fn variable_multiply<C: Ring>(e: &ExteriorElement<C>, n: usize, s: u32, i: usize) -> ExteriorElement<C> {
    e.relabel(&variable_map(n, s, i))
}

/// Terms of `δ^(m)_K`: `(ε, K \ H, H)` for every `m`-subset `H` of `K`,
/// where `ε` is the sign of the shuffle sorting `(K \ H, H)`.
pub fn delta_terms(k: &[usize], m: usize) -> Vec<(i32, Vec<usize>, Vec<usize>)> {
    k.iter()
        .copied()
        .combinations(m)
        .map(|h| {
            let rest: Vec<usize> = k.iter().copied().filter(|x| !h.contains(x)).collect();
            (shuffle_sign(&rest, &h), rest, h)
        })
        .collect()
}

fn check_delta(k: &[usize], m: usize, p: usize, big_n: usize) -> Result<()> {
    if k.len() != p + m || m == 0 {
        return Err(Error::SizeMismatch(format!(
            "δ^({m}) needs |K| = p + m = {}, got {}",
            p + m,
            k.len()
        )));
    }
    if k.windows(2).any(|w| w[0] >= w[1]) || k.last().is_some_and(|&x| x >= big_n) {
        return Err(Error::Invalid(format!("K = {k:?} is not an increasing subset of [0, {big_n})")));
    }
    if m > 127 {
        return Err(Error::SizeGuardExceeded(format!("wedge grade {m}")));
    }
    Ok(())
}

/// The universal `δ^(m)_K`, with Plücker variables as coefficients.
/// `K` is 0-based and increasing with `|K| = p + m`.
pub fn delta(k: &[usize], m: usize, p: usize, big_n: usize) -> Result<ExteriorElement<PlueckerPolynomial>> {
    check_delta(k, m, p, big_n)?;
    let mut out = ExteriorElement::zero(m);
    for (eps, rest, h) in delta_terms(k, m) {
        out.add_term(mask_of(&h), PlueckerPolynomial::var(colex_rank(&rest) as u32, eps as i64));
    }
    Ok(out)
}

/// `δ^(m)_K` evaluated at Plücker coordinates.
pub fn delta_at(k: &[usize], m: usize, point: &PlueckerVector) -> Result<ExteriorElement<BigInt>> {
    check_delta(k, m, point.p, point.big_n)?;
    let mut out = ExteriorElement::zero(m);
    for (eps, rest, h) in delta_terms(k, m) {
        let c = point.get(&rest);
        if !c.is_zero() {
            out.add_term(mask_of(&h), if eps < 0 { -c.clone() } else { c.clone() });
        }
    }
    Ok(out)
}

/// Substitute Plücker coordinates into every coefficient.
pub fn evaluate(e: &ExteriorElement<PlueckerPolynomial>, point: &PlueckerVector) -> ExteriorElement<BigInt> {
    e.map_coeffs(|c| c.eval(point))
}

/// The `m x m` minors of a list of vectors, i.e. the coordinates of their wedge.
pub fn wedge_of_vectors(vectors: &[Vec<BigInt>]) -> ExteriorElement<BigInt> {
    let m = vectors.len();
    let mut out = ExteriorElement::unit();
    for v in vectors {
        let mut e = ExteriorElement::zero(1);
        for (h, c) in v.iter().enumerate() {
            if !c.is_zero() {
                e.add_term(1u128 << h, c.clone());
            }
        }
        out = out.wedge(&e);
    }
    debug_assert_eq!(out.grade(), m);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::coords::{pluecker_coordinates, GrassmannPoint};
    use crate::linalg::Matrix;
    use num_rational::BigRational;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn delta_of_a_line_is_the_vector() {
        let rows = Matrix::from_rows(vec![vec![q(2), q(3), q(5)]], 3).unwrap();
        let l = GrassmannPoint::new(2, 1, rows).unwrap();
        let c = pluecker_coordinates(&l);
        let d = delta_at(&[0, 1, 2], 1, &c).unwrap();
        let got: Vec<(u128, BigInt)> = d.terms().map(|(&m, v)| (m, v.clone())).collect();
        assert_eq!(got, vec![(1, 2.into()), (2, 3.into()), (4, 5.into())]);
        let sym = delta(&[0, 1, 2], 1, 2, 3).unwrap();
        assert_eq!(evaluate(&sym, &c), d);
    }

    #[test]
    fn wedge_is_alternating() {
        let v = vec![BigInt::from(1), BigInt::from(2), BigInt::from(0)];
        let w = vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)];
        let vw = wedge_of_vectors(&[v.clone(), w.clone()]);
        let wv = wedge_of_vectors(&[w, v.clone()]);
        assert_eq!(vw, wv.neg());
        assert!(wedge_of_vectors(&[v.clone(), v]).is_zero());
    }

    #[test]
    fn variable_map_is_increasing() {
        for i in 0..=3 {
            let m = variable_map(3, 2, i);
            assert!(m.windows(2).all(|w| w[0] < w[1]));
        }
        let x0 = variable_map(3, 2, 0);
        assert_eq!(x0[9], 19);
    }
}
