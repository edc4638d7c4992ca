//! Linear changes of coordinates and their action on forms of fixed degree.
//!
//! A matrix `g` acts by `x_i -> sum_j g[i][j] x_j`. Upper triangular `g`
//! only moves variables upwards and therefore fixes every strongly stable
//! ideal.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polynomial::Polynomial;
use crate::term::{monomial_basis, Term};

type Rational = BigRational;

/// Image of the form `f` under `g`.
pub fn act_on_polynomial(g: &Matrix<Rational>, f: &Polynomial<Rational>) -> Polynomial<Rational> {
    let n = f.n();
    let images: Vec<Polynomial<Rational>> = (0..=n)
        .map(|i| {
            Polynomial::from_terms(
                n,
                (0..=n).map(|j| (Term::var(n, j), g[(i, j)].clone())),
            )
        })
        .collect();
    let mut out = Polynomial::zero(n);
    for (t, c) in f.iter() {
        let mut img = Polynomial::monomial(Term::one(n), c.clone());
        for (i, &e) in t.exponents().iter().enumerate() {
            for _ in 0..e {
                img = img.mul(&images[i]);
            }
        }
        out = out.add(&img);
    }
    out
}

/// `N(s) x N(s)` matrix of `g` on degree-`s` forms: row `a` holds the
/// coefficients of the image of the `a`-th basis term, so a subspace given
/// by rows `M` maps to `M * A`.
pub fn substitution_matrix(g: &Matrix<Rational>, n: usize, s: u32) -> Result<Matrix<Rational>> {
    if g.nrows() != n + 1 || g.ncols() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: g.nrows(),
        });
    }
    let basis = monomial_basis(n, s);
    let mut a = Matrix::zeros(basis.len(), basis.len());
    for (r, t) in basis.iter().enumerate() {
        let img = act_on_polynomial(g, &Polynomial::monomial(t.clone(), Rational::one()));
        for (u, c) in img.iter() {
            a[(r, basis.index(u).expect("homogeneous"))] = c.clone();
        }
    }
    Ok(a)
}

pub fn act_on_subspace(g: &Matrix<Rational>, rows: &Matrix<Rational>, n: usize, s: u32) -> Result<Matrix<Rational>> {
    rows.mul(&substitution_matrix(g, n, s)?)
}

pub fn permutation_matrix(perm: &[usize]) -> Matrix<Rational> {
    let k = perm.len();
    let mut m = Matrix::zeros(k, k);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = Rational::one();
    }
    m
}

pub fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let a: i64 = rng.gen_range(-5..=5);
        if nonzero && a == 0 {
            continue;
        }
        let b: i64 = rng.gen_range(1..=3);
        return Rational::new(a.into(), b.into());
    }
}

/// Upper triangular with nonzero diagonal: fixes strongly stable ideals.
pub fn random_upper_triangular(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        m[(i, i)] = small_rational(rng, true);
        for j in i + 1..=n {
            m[(i, j)] = small_rational(rng, false);
        }
    }
    m
}

/// A random invertible matrix with small entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    loop {
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..=n {
            for j in 0..=n {
                m[(i, j)] = small_rational(rng, false);
            }
        }
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Identity first, then every other coordinate permutation, then `randoms`
/// seeded upper triangular matrices.
pub fn default_group_sample(n: usize, seed: u64, randoms: usize) -> Vec<Matrix<Rational>> {
    let mut out = vec![Matrix::identity(n + 1)];
    for perm in (0..=n).permutations(n + 1) {
        if perm.iter().enumerate().any(|(i, &j)| i != j) {
            out.push(permutation_matrix(&perm));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..randoms {
        out.push(random_upper_triangular(&mut rng, n));
    }
    out
}
