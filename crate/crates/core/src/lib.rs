//! Ladder operators, orthonormal functions and factorized Hamiltonians for the
//! classical orthogonal polynomials of continuous and discrete variable.

pub mod algebra;
pub mod error;
pub mod factorization;
pub mod families;
pub mod fixtures;
pub mod ladder_poly;
pub mod orthonormal;
pub mod verify;

pub use error::{Error, Result};
