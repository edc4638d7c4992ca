//! Seeded sources of test points: orbits of monomial points, random marked
//! bases, subspaces of forms vanishing at points, and random subspaces.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::borel::BorelIdeal;
use crate::error::{Error, Result};
use crate::group::{act_on_subspace, random_invertible, small_rational};
use crate::linalg::Matrix;
use crate::marked::{marked_set_from_subspace, MarkedSet};
use crate::pluecker::coords::GrassmannPoint;
use crate::pluecker::membership::monomial_point;
use crate::term::monomial_basis;

type Rational = BigRational;

const TRIES: usize = 100;

/// `g · J_s` for a random invertible `g`, kept only if it lies in the chart of `J`.
pub fn orbit_point(j: &BorelIdeal, s: u32, rng: &mut ChaCha8Rng) -> Result<GrassmannPoint> {
    let base = monomial_point(j, s)?;
    for _ in 0..TRIES {
        let g = random_invertible(rng, j.n());
        let rows = act_on_subspace(&g, base.rows(), j.n(), s)?;
        if marked_set_from_subspace(&rows, j, s).is_ok() {
            return GrassmannPoint::new(j.n(), s, rows);
        }
    }
    Err(Error::ChartMiss)
}

/// A random marked basis over `J` in degree `s`, from an orbit point.
pub fn random_marked_basis(j: &BorelIdeal, s: u32, rng: &mut ChaCha8Rng) -> Result<MarkedSet<Rational>> {
    let l = orbit_point(j, s, rng)?;
    marked_set_from_subspace(l.rows(), j, s)
}

/// A marked set over `J` with random small tails; usually not a basis.
pub fn random_marked_set(j: &BorelIdeal, s: u32, density: f64, rng: &mut ChaCha8Rng) -> Result<MarkedSet<Rational>> {
    let standard = j.standard_part(s);
    let tails = j
        .truncation(s)?
        .iter()
        .map(|h| {
            let mut tail = std::collections::BTreeMap::new();
            for t in standard.iter() {
                if rng.gen_bool(density) {
                    tail.insert(t.clone(), small_rational(rng, true));
                }
            }
            (h.clone(), tail)
        })
        .collect();
    MarkedSet::new(j, s, tails)
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..=n).map(|_| small_rational(rng, false)).collect()
}

/// `k` distinct points `a + i b` on the line through `a` and `b`.
pub fn points_on_line(a: &[Rational], b: &[Rational], k: usize) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|i| {
            let t = Rational::from_integer(i.into());
            a.iter().zip(b).map(|(x, y)| x + &t * y).collect()
        })
        .collect()
}

/// Degree-`s` forms vanishing at the given points.
pub fn forms_vanishing_at(n: usize, s: u32, points: &[Vec<Rational>]) -> Result<GrassmannPoint> {
    let basis = monomial_basis(n, s);
    let rows = points
        .iter()
        .map(|pt| {
            basis
                .iter()
                .map(|t| {
                    t.exponents()
                        .iter()
                        .enumerate()
                        .fold(Rational::one(), |acc, (i, &e)| acc * num_traits::pow(pt[i].clone(), e as usize))
                })
                .collect()
        })
        .collect();
    let eval = Matrix::from_rows(rows, basis.len())?;
    GrassmannPoint::new(n, s, eval.nullspace())
}

/// Degree-`s` part of the ideal of two random skew lines in `P^3`.
pub fn skew_lines(s: u32, rng: &mut ChaCha8Rng) -> Result<GrassmannPoint> {
    let mut pts = Vec::new();
    for _ in 0..2 {
        let a = random_point(rng, 3);
        let b = random_point(rng, 3);
        pts.extend(points_on_line(&a, &b, s as usize + 1));
    }
    forms_vanishing_at(3, s, &pts)
}

/// A random `q`-dimensional subspace of the degree-`s` forms.
pub fn random_subspace(n: usize, s: u32, q: usize, rng: &mut ChaCha8Rng) -> Result<GrassmannPoint> {
    let big_n = monomial_basis(n, s).len();
    for _ in 0..TRIES {
        let rows = (0..q)
            .map(|_| (0..big_n).map(|_| small_rational(rng, false)).collect())
            .collect();
        let m = Matrix::from_rows(rows, big_n)?;
        if m.rank() == q {
            return GrassmannPoint::new(n, s, m);
        }
    }
    Err(Error::RankDeficient { rank: 0, expected: q })
}

/// Add a small random value to one random entry of the basis.
pub fn perturb(l: &GrassmannPoint, rng: &mut ChaCha8Rng) -> Result<GrassmannPoint> {
    for _ in 0..TRIES {
        let mut rows = l.rows().clone();
        let i = rng.gen_range(0..rows.nrows());
        let j = rng.gen_range(0..rows.ncols());
        let delta = small_rational(rng, true);
        rows[(i, j)] = &rows[(i, j)] + delta;
        if rows.rank() == rows.nrows() && !rows[(i, j)].is_zero() {
            return GrassmannPoint::new(l.n(), l.s(), rows);
        }
    }
    Err(Error::RankDeficient { rank: 0, expected: l.dim() })
}
