//! Exact verification of the geometric infinite-descent proofs that √2, √6
//! and the square roots of the triangular numbers T₂…T₅ are irrational.
//!
//! The crate rebuilds each figure with rational coordinates, measures its
//! overlaps and gaps by exact convex clipping, runs the descent maps on
//! integers, and decides exactly (by surd sign tests) for which parameters
//! each construction yields a strictly smaller solution.
//!
//! The arithmetic and geometry layers are generic over [`Scalar`]; the
//! aliases below fix the exact instantiation used by the verification code.

pub mod descent;
pub mod exact_arith;
pub mod geometry;
pub mod number_theory;
pub mod report;

pub use exact_arith::{BiForm, ExactScalar, Scalar, Surd};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

pub type ExactSurd = Surd<Rational>;
pub type ExactBiForm = BiForm<Rational>;
pub type ExactPolygon = geometry::LatticePolygon<Rational>;
pub type ExactArrangement = geometry::Arrangement<Rational>;
pub type ExactCensus = geometry::CoverageCensus<Rational>;

pub type FloatSurd = Surd<f64>;
pub type FloatPolygon = geometry::LatticePolygon<f64>;
