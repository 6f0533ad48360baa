//! Exact arithmetic kernel: rationals, cyclotomic numbers, rational matrices.

mod cyclotomic;
mod matrix;
mod rational;

pub use cyclotomic::{CycloField, Cyclotomic};
pub use matrix::{commutant_basis, commutant_dimension, RatMatrix, RowEchelon};
pub use rational::{fmt_rational, int, parse_rational, rat, rational_to_i64, Rational};
