//! Exact scalars and dense linear algebra.
//!
//! Everything downstream is computed over one of two kinds of field: exact
//! rationals, or a prime field GF(p) used when a search needs a finite
//! coefficient space. There is no floating point anywhere in the crate.

mod matrix;
mod scalar;

pub use matrix::{axpy, dot, is_zero_vector, Echelon, Matrix, Rref};
pub use scalar::{
    alternating_sign, format_rational, int, is_negative, is_prime, parse_rational, rat, Field,
    Rational, Scalar,
};
