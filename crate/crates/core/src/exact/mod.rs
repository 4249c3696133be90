//! Exact rational arithmetic and dense linear algebra.
//!
//! Nothing in this crate uses floating point; every scalar is a [`Rational`].

mod matrix;
mod rational;

pub use matrix::{solve_exact, RatMatrix, RatVector};
pub use rational::{q, Rational};
