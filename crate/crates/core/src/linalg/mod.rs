//! Dense linear algebra over exact rationals or `f64`.

pub mod index;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use index::{binomial, lex_tuples, IndexTuple};
pub use matrix::Matrix;
pub use scalar::{float_tolerance, set_float_tolerance, Backend, Rational, Scalar, Sign};
