//! Exact scalars and linear algebra.

mod cyclotomic;
mod matrix;
pub(crate) mod modular;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use matrix::{
    axpy, embed, greedy_max_independent, is_zero_vector, scale_vector, zero_vector, CoordinateSolver, EchelonBasis,
    ExactMatrix, Vector,
};
pub use rational::{common_denominator, ParseRationalError, Rational};
