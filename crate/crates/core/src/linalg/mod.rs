//! Exact linear algebra: rational matrices, kernels, Smith normal form,
//! lattice saturation and Jordan decomposition.

pub mod jordan;
pub mod matrix;
pub mod smith;
pub mod space;

pub use jordan::{
    characteristic_polynomial, classify, is_nilpotent, is_semisimple, jordan_decomposition, minimal_polynomial,
    JordanPair, MatrixClass,
};
pub use matrix::{kernel, Matrix, MatrixQ};
pub use smith::{hermite_normal_form, saturate_lattice, smith_normal_form, IntMatrix, Lattice, SmithForm};
pub use space::{Coordinates, Space};
