//! Plücker coordinates of degree-`s` subspaces and the equations cutting out
//! the Hilbert scheme inside the Grassmannian.

pub mod coords;
pub mod exterior;
pub mod families;
pub mod membership;
pub mod subsets;

pub use coords::{pluecker_coordinates, GrassmannPoint, LinearForm, PlueckerPolynomial, PlueckerVector};
pub use exterior::{delta, delta_at, ExteriorElement};
pub use families::{equation_plan, equations, generator_families, EquationPlan, EquationSet, Family, GeneratorFamilies};
pub use membership::{complement_linear_forms, membership_test, MembershipReport, Verdict};
