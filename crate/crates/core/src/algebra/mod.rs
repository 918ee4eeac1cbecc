//! Exact arithmetic over the rationals: numbers, polynomials and rational
//! functions in one variable.

pub mod poly;
pub mod ratfn;
pub mod rational;

pub use poly::Poly;
pub use ratfn::RationalFn;
pub use rational::{int, parse_rational, rat, SignedSqrt};
