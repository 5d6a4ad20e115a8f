//! Exact scalars: rationals, univariate polynomials, factorization and
//! splitting fields.

pub mod factor;
pub mod field;
mod modp;
pub mod poly;
pub mod tower;

pub use factor::factor_rational;
pub use field::{frac, parse_rational, rat, Field, Rational, Rationals};
pub use poly::{squarefree_part, UniPoly};
pub use tower::{factor_over_field, field_coords, splitting_field, FieldTower, NumberFieldElement};
