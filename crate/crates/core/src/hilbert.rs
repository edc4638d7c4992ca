//! Gotzmann numbers, Macaulay growth, Hilbert functions and polynomials of
//! monomial ideals, and the dimension bookkeeping of a working degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::borel::BorelIdeal;
use crate::error::{Error, Result};
use crate::numerical::{binomial, IntegerPolynomial};
use crate::term::{monomial_basis, Term};

/// Exponents `a_1 >= a_2 >= ... >= a_r >= 0` with
/// `p(t) = sum_i C(t + a_i - i + 1, a_i)`, stored run-length encoded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GotzmannDecomposition {
    /// `(a, multiplicity)`, `a` strictly decreasing.
    pub runs: Vec<(usize, u64)>,
}

impl GotzmannDecomposition {
    /// The Gotzmann number `r`.
    pub fn length(&self) -> u64 {
        self.runs.iter().map(|(_, m)| m).sum()
    }
}

const GOTZMANN_STEP_CAP: u64 = 50_000_000;

/// Greedy Gotzmann decomposition: at step `i` take `a_i = deg` of what remains.
pub fn gotzmann_decomposition(p: &IntegerPolynomial) -> Result<GotzmannDecomposition> {
    let not_admissible = || Error::NotAdmissible(p.to_string());
    if !p.is_numerical() {
        return Err(not_admissible());
    }
    let mut rest = p.clone();
    let mut runs: Vec<(usize, u64)> = Vec::new();
    // index i of the next summand, 1-based
    let mut i: i64 = 1;
    let mut steps = 0u64;
    while !rest.is_zero() {
        if rest.leading_coefficient().is_negative() {
            return Err(not_admissible());
        }
        let a = rest.degree().expect("nonzero");
        if a == 0 {
            let c = rest.leading_coefficient().to_integer().to_u64().ok_or_else(not_admissible)?;
            push_run(&mut runs, 0, c);
            break;
        }
        let term = IntegerPolynomial::binomial_in_t(a as i64 - i + 1, a);
        rest = rest.sub(&term);
        push_run(&mut runs, a, 1);
        i += 1;
        steps += 1;
        if steps > GOTZMANN_STEP_CAP {
            return Err(Error::Invalid(format!("Gotzmann decomposition of {p} is too long")));
        }
    }
    Ok(GotzmannDecomposition { runs })
}

fn push_run(runs: &mut Vec<(usize, u64)>, a: usize, m: u64) {
    match runs.last_mut() {
        Some((last, count)) if *last == a => *count += m,
        _ => runs.push((a, m)),
    }
}

/// The Gotzmann number `r` of an admissible `p`.
pub fn gotzmann_number(p: &IntegerPolynomial) -> Result<u64> {
    gotzmann_decomposition(p).map(|d| d.length())
}

pub fn is_admissible(p: &IntegerPolynomial) -> bool {
    gotzmann_decomposition(p).is_ok()
}

/// The `t`-th Macaulay representation `a = C(k_t, t) + ... + C(k_j, j)`,
/// returned as pairs `(k_i, i)` with `k_t > k_{t-1} > ... > k_j >= j >= 1`.
pub fn macaulay_representation(a: &BigInt, t: u32) -> Result<Vec<(u64, u32)>> {
    if t == 0 {
        return Err(Error::Invalid("Macaulay representation needs t >= 1".into()));
    }
    if a.is_negative() {
        return Err(Error::Invalid("Macaulay representation of a negative number".into()));
    }
    let mut rest = a.clone();
    let mut out = Vec::new();
    let mut i = t;
    while i >= 1 && !rest.is_zero() {
        // largest k with C(k, i) <= rest; C(i, i) = 1 <= rest
        let mut k = i as u64;
        let mut c = BigInt::one();
        loop {
            let next = &c * BigInt::from(k + 1) / BigInt::from(k + 1 - i as u64);
            if next > rest {
                break;
            }
            c = next;
            k += 1;
        }
        rest -= &c;
        out.push((k, i));
        i -= 1;
    }
    Ok(out)
}

/// Macaulay's bound `a^<t>` on the growth of a Hilbert function from degree `t` to `t + 1`.
pub fn macaulay_growth(a: &BigInt, t: u32) -> Result<BigInt> {
    Ok(macaulay_representation(a, t)?
        .into_iter()
        .map(|(k, i)| binomial(k as i64 + 1, i as i64 + 1))
        .sum())
}

/// `N(t) = C(n + t, n)`.
pub fn n_of(n: usize, t: u32) -> BigInt {
    binomial(n as i64 + t as i64, n as i64)
}

/// Number of degree-`t` terms divisible by one of `generators`.
pub fn count_in_ideal(n: usize, generators: &[Term], t: u32) -> usize {
    monomial_basis(n, t)
        .iter()
        .filter(|u| generators.iter().any(|g| g.divides(u)))
        .count()
}

/// `dim (P/J)_t` for the monomial ideal generated by `generators`.
pub fn hilbert_function(n: usize, generators: &[Term], t: u32) -> BigInt {
    n_of(n, t) - BigInt::from(count_in_ideal(n, generators, t))
}

/// Hilbert polynomial of a strongly stable ideal, interpolated at
/// `t = reg, ..., reg + n` and checked at two further points.
pub fn hilbert_polynomial(j: &BorelIdeal) -> Result<IntegerPolynomial> {
    let n = j.n();
    let start = j.regularity();
    let sample = |t: u32| hilbert_function(n, j.generators(), t);
    let points: Vec<(i64, BigInt)> = (start..=start + n as u32)
        .map(|t| (t as i64, sample(t)))
        .collect();
    let poly = IntegerPolynomial::interpolate(&points);
    for t in start + n as u32 + 1..=start + n as u32 + 2 {
        if poly.eval(&BigRational::from_integer(BigInt::from(t))) != BigRational::from_integer(sample(t)) {
            return Err(Error::InterpolationMismatch(t));
        }
    }
    Ok(poly)
}

/// Ambient dimension, Hilbert polynomial and working degree, with everything
/// derived from them.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertContext {
    pub n: usize,
    pub p: IntegerPolynomial,
    /// `deg p`.
    pub d: usize,
    /// Gotzmann number.
    pub r: u64,
    /// Regularity bound.
    pub rprime: u32,
    /// Working degree.
    pub s: u32,
    pub n_s: u64,
    pub p_s: u64,
    pub q_s: u64,
    pub q1_s: u64,
    pub q2_s: u64,
    /// `C(N(s), p(s))`, the number of Plücker coordinates at degree `s`.
    #[serde(serialize_with = "as_decimal")]
    pub e_prime: BigInt,
    /// `C(N(r), p(r))`, when `N(r)` is small enough to bother.
    #[serde(serialize_with = "as_decimal_opt")]
    pub e: Option<BigInt>,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_decimal_opt<S: serde::Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

const E_AFFORDABLE: u64 = 100_000;

impl HilbertContext {
    pub fn new(n: usize, p: IntegerPolynomial, rprime: u32, s: u32) -> Result<Self> {
        let r = gotzmann_number(&p)?;
        let d = p
            .degree()
            .ok_or_else(|| Error::InvalidContext("zero Hilbert polynomial".into()))?;
        if d >= n {
            return Err(Error::InvalidContext(format!("deg p = {d} must be below n = {n}")));
        }
        if rprime == 0 || rprime > s || s as u64 > r {
            return Err(Error::DegreeOutOfRange {
                s,
                lo: rprime.max(1),
                hi: r.min(u32::MAX as u64) as u32,
            });
        }
        let small = |v: BigInt, what: &str| {
            v.to_u64()
                .ok_or_else(|| Error::InvalidContext(format!("{what} out of range")))
        };
        let n_s = small(n_of(n, s), "N(s)")?;
        let p_s = small(p.eval_int(s as i64)?, "p(s)")?;
        if p_s == 0 || p_s >= n_s {
            return Err(Error::InvalidContext(format!(
                "need 0 < p(s) < N(s), got p({s}) = {p_s}, N({s}) = {n_s}"
            )));
        }
        let q_s = n_s - p_s;
        let q1_s = small(binomial((n - d - 1) as i64 + s as i64, (n - d - 1) as i64), "q'(s)")?;
        if q1_s > q_s {
            return Err(Error::InvalidContext(format!("q'(s) = {q1_s} exceeds q(s) = {q_s}")));
        }
        let e_prime = binomial(n_s as i64, p_s as i64);
        let e = match n_of(n, r.min(u32::MAX as u64) as u32).to_u64() {
            Some(n_r) if n_r <= E_AFFORDABLE => {
                let p_r = p.eval_int(r as i64)?;
                p_r.to_i64().map(|p_r| binomial(n_r as i64, p_r))
            }
            _ => None,
        };
        Ok(HilbertContext {
            n,
            d,
            r,
            rprime,
            s,
            n_s,
            p_s,
            q_s,
            q1_s,
            q2_s: q_s - q1_s,
            e_prime,
            e,
            p,
        })
    }

    pub fn n_at(&self, t: u32) -> u64 {
        n_of(self.n, t).to_u64().expect("N(t) fits")
    }

    pub fn p_at(&self, t: u32) -> i64 {
        self.p.eval_i64(t as i64).expect("numerical polynomial")
    }

    pub fn q_at(&self, t: u32) -> i64 {
        self.n_at(t) as i64 - self.p_at(t)
    }

    /// `q'(t) = C(n - d - 1 + t, n - d - 1)`, the number of degree-`t` terms in `x_{d+1}..x_n`.
    pub fn q1_at(&self, t: u32) -> i64 {
        let k = (self.n - self.d - 1) as i64;
        binomial(k + t as i64, k).to_i64().expect("q'(t) fits")
    }

    pub fn q2_at(&self, t: u32) -> i64 {
        self.q_at(t) - self.q1_at(t)
    }
}
