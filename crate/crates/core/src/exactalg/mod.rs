//! Exact arithmetic: prime fields, polynomials, and rational functions.

pub mod fp;
pub mod poly;
pub mod ratfn;

pub use fp::{Fp, Prime};
pub use poly::Poly;
pub use ratfn::{clear_denominators, RationalFunction};
