//! Strongly stable ideals, marked bases and Plücker equations for Hilbert
//! schemes of bounded regularity.
//!
//! Algebra is written once over [`scalar::Ring`] / [`scalar::Field`]; the
//! aliases below fix the exact rational instance used by the front end.

pub mod borel;
pub mod error;
pub mod group;
pub mod hilbert;
pub mod linalg;
pub mod marked;
pub mod numerical;
pub mod param;
pub mod pluecker;
pub mod points;
pub mod polynomial;
pub mod scalar;
pub mod term;
pub mod verify;

pub use borel::{enumerate_borel, BorelIdeal, MultiIndex};
pub use error::{Error, Result};
pub use hilbert::HilbertContext;
pub use numerical::IntegerPolynomial;
pub use term::Term;

pub type Rational = num_rational::BigRational;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type RationalPolynomial = polynomial::Polynomial<Rational>;
pub type RationalMarkedSet = marked::MarkedSet<Rational>;
pub type ParametricPolynomial = polynomial::Polynomial<param::ParameterPolynomial>;
