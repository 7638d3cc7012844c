//! Exact reconstruction of the square, hexagon and triangle figures.
//!
//! Polygons live in lattice coordinates (orthogonal for the squares, the 60°
//! basis for hexagons and triangles) so every vertex is rational. Areas are
//! reported in lattice units; the Cartesian factor `√3/2` cancels from every
//! identity that is checked.

mod build;
mod census;
mod figure;
mod polygon;

pub use build::{
    build_hexagon6, build_tennenbaum, build_triangular, triangular_gap, triangular_overlap,
    Arrangement, FigureFamily,
};
pub use census::{coverage_census, CoverageCensus, OverlapRegion, Region};
pub use figure::{
    census_to_descent, measured_sides, predicted_sides, verify_figure, FigureReport, IdentityCheck,
};
pub use polygon::{
    convex_intersection, lattice_hexagon, lattice_triangle, orthogonal_square, Basis, LatticePoint,
    LatticePolygon, HEX_DIRECTIONS,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("polygons use different coordinate bases")]
    BasisMismatch,
    #[error("parameters outside the construction window: {0} fails")]
    OutOfWindow(String),
    #[error("triangular index n = {0} must be at least 2")]
    BadIndex(u64),
    #[error("small polygon {0} is not inside the big polygon")]
    NotContained(usize),
    #[error("pieces {0:?} share a region of positive area")]
    DepthExceeded(Vec<usize>),
    #[error("{} figure identities failed", .0.failures().count())]
    Mismatch(FigureReport),
    #[error("measurement failed: {0}")]
    MeasurementFailed(String),
}
