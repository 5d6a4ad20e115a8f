//! Defining equations of algebraic matrix groups.

mod algebraic;
mod generate;
mod nilpotent;
mod semisimple;

pub use algebraic::{tangent_space_at_identity, AlgebraicGroup, Limits, Provenance};
pub use generate::{
    generated_group, group_of_lie_algebra, product_closure_step, reductive_group_parts, Generation,
};
pub use nilpotent::{exp_nilpotent, exp_nilpotent_symbolic, log_star_equations, nilpotent_group, PolyMatrix};
pub use semisimple::{lambda_basis, semisimple_group, AssociativeHull, LatticeEquations};
