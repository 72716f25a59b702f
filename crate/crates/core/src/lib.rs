//! Arbitrary-precision verification of hypergeometric summation theorems.

pub mod gamma;
pub mod series;
pub mod rational;
pub mod real;

pub use rational::{parse_rational, ParseRationalError, Rational};
pub use real::{pi_ctx, sin_pi_rational, to_real, PrecisionContext, PrecisionError, Real};
