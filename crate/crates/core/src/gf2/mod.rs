//! Exact linear algebra over the two-element field.
//!
//! Vectors are dense and bit-packed into machine words; matrices are stored
//! column-major. The complexes handled by this crate have at most a few
//! hundred basis elements, where dense XOR reduction is both the simplest
//! and the fastest option.

mod matrix;
mod subspace;
mod vector;

pub use matrix::{column_reduce, solve, Gf2Matrix, Reduction};
pub use subspace::{Quotient, Subspace};
pub use vector::{Gf2Vector, Ones};
