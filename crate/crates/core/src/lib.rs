//! Exact obstruction calculus for complex supermanifolds modelled on split
//! holomorphic vector bundles over compact Riemann surfaces.
//!
//! The crate is layered bottom-up:
//!
//! * [`bundle`]: split bundles as multisets of line-bundle classes, with
//!   exterior powers, tensor products and duals.
//! * [`cohomology`]: `h⁰`/`h¹` of line bundles and split bundles on a
//!   genus-`g` curve (exact where the data determines them, intervals
//!   otherwise).
//! * [`cech`]: an independent two-chart Čech oracle on the projective line,
//!   including reduction of 1-cocycles to canonical `H¹` coordinates.
//! * [`superalgebra`]: the exterior algebra over a chart, its even
//!   automorphisms and derivations, and chart changes on the projective line.
//! * [`exotic`]: rank-3 Green groups on the projective line, the connecting
//!   map from global sections of the second obstruction sheaf to the third
//!   obstruction space, and the scalar action of `ℂ^×·1_E`.
//! * [`obstruction`]: obstruction sheaves, obstruction reports and the
//!   good-model classifier.
//! * [`report`]: model specs, analysis documents, sweeps and the oracle
//!   listing consumed by the command-line tool.

pub mod bundle;
pub mod cech;
pub mod cohomology;
pub mod error;
pub mod exotic;
pub mod laurent;
pub mod linalg;
pub mod obstruction;
pub mod report;
pub mod superalgebra;

pub use error::{Error, Result};

/// Exact rational scalars used throughout.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for building the rational `n / d`.
///
/// Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
