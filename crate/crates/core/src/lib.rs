//! Structure theory of real matrix groups and matrix Lie algebras.

pub mod battery;
pub mod calculus;
pub mod cartan;
pub mod error;
pub mod json;
pub mod explog;
pub mod jordan;
pub mod liealg;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod replica;
pub mod scalar;
pub mod selftest;
pub mod spectrum;
pub mod triangularize;

pub use error::{NashError, Result};
pub use matrix::{Mat, Matrix, Mode};
pub use scalar::{Field, Q};
