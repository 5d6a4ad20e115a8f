//! Matrix Lie algebras over the rationals and their structure theory.

mod algebra;
mod structure;

pub use algebra::{structure_constants, LieAlgebra, MatrixSpace};
pub use structure::{
    cartan_subalgebra, centralizer, fitting_one, levi_subalgebra, reductive_decomposition, solvable_radical,
    ReductiveSplit,
};
