pub mod cli;
pub mod cycles;
pub mod error;
pub mod geometry;
pub mod graphs;
pub mod hom;
pub mod realizations;

use num_rational::BigRational;

/// Exact rational scalar used for parsed input.
pub type Rational = BigRational;
pub type ExactPoint = geometry::Point<Rational>;
pub type ExactGraph = graphs::GeometricGraph<Rational>;
/// Fixed-width integer coordinates, used for sampled and canonical drawings.
pub type IntPoint = geometry::Point<i128>;
pub type IntGraph = graphs::GeometricGraph<i128>;
