//! Combinatorics of simplicial complexes for studying Perles pieces: facet
//! subcomplexes in which every facet has exactly one free ridge.
//!
//! The crate covers complexes given by facets, integral homology and sphere
//! recognition, planarity and connectivity of facet-ridge graphs, the Perles
//! piece search, local constructions that produce pinched pieces, and exact
//! convex-hull checks for point configurations in R^4.

pub mod complex;
pub mod constructions;
pub mod datasets;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod perles;
pub mod planarity;
pub mod realization;
pub mod scan;
pub mod topology;

pub use complex::{build_complex, FVector, Face, PseudomanifoldStatus, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::CombGraph;
pub use homology::{betti_numbers, BettiVector, IntMatrix};
pub use perles::{find_perles_pieces, is_perles_piece, Piece, PieceReport, SearchOptions};
pub use planarity::{is_planar, planarity, PlanarityResult};
pub use realization::{hull_facets, orientation, verify_realization, PointConfiguration, Scalar, Sign};
pub use topology::{certify_sphere, SphereCertificate, SphereStatus};

/// Exact rational scalar used for all verdicts.
pub type Rational = num_rational::BigRational;
/// Point configuration with exact coordinates.
pub type ExactPoints = PointConfiguration<Rational>;
/// Point configuration used inside the realization search.
pub type FloatPoints = PointConfiguration<f64>;
/// Matrix type of the boundary maps used for homology.
pub type IntegerMatrix = IntMatrix<num_bigint::BigInt>;
