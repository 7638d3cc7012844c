//! Exact scalars: the [`Scalar`] bound, quadratic surds and small bivariate
//! polynomials. Nothing here falls back to floating point unless the caller
//! instantiates it with a float type.

mod biform;
pub mod scalar;
mod surd;

pub use biform::{BiForm, MAX_DEGREE};
pub use scalar::{fraction_string, parse_fraction, ratio, ExactScalar, Scalar};
pub use surd::Surd;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("radicand {0} is not a square-free integer greater than one")]
    BadRadicand(u64),
}

/// Sign of `x` as -1, 0 or +1.
pub fn surd_sign<T: Scalar>(x: &Surd<T>) -> i8 {
    x.sign()
}

/// Replaces `a²` by `(n(n+1)/2)·b²` throughout `p`.
pub fn biform_reduce<T: Scalar>(p: &BiForm<T>, n: u64) -> BiForm<T> {
    p.reduce_triangular(n)
}
