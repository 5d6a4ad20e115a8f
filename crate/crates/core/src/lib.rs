//! Defining equations for connected algebraic matrix groups over the
//! rationals, built from their Lie algebras, and the decomposition of such
//! groups into a reductive part and the unipotent radical.

pub mod arith;
pub mod error;
pub mod groebner;
pub mod group;
pub mod lie;
pub mod linalg;

pub use error::{Error, Limit, Result};
