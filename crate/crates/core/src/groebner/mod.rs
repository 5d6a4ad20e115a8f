//! Multivariate polynomials, Gröbner bases and elimination.

mod engine;
mod monomial;
mod poly;

pub use engine::{
    division, eliminate, groebner_in, ideal_equal, normal_form, reduced_groebner, reduced_groebner_with, GroebnerBasis,
    GroebnerLimits,
};
pub use monomial::{Exp, InnerOrder, Monomial, MonomialOrder};
pub use poly::{MultiPoly, PolyRing, Term};
