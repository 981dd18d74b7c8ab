//! Exact integer and rational linear algebra.

mod matrix;
mod normal_form;
mod rational;

pub use matrix::{content, dot, primitive_integer, IntMatrix};
pub use normal_form::{complete_unimodular, hnf, lattice_basis, left_kernel, saturate, snf, HnfResult, SnfResult};
pub use rational::{integer_kernel, linear_solve, rref, to_rat_vec, Echelon, RatMatrix, RatVector, Solution};

pub type Rat = num_rational::BigRational;
