//! Point-in-convex-polygon queries answered by nearest-generator comparison.
//!
//! A convex polygon is converted once into a [`GeneratorSet`]: its centroid
//! plus the mirror image of the centroid across every edge line. A query point
//! is inside exactly when no mirror image is closer to it than the centroid.
//! Two classical engines (sign of offset and ray crossing) share the same
//! batch interface and serve as cross-checks.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the scalar type for the common cases.
//!
//! ```
//! use vpip_core::{to_voronoi, InclusionEngine, Point, Polygon, VoronoiEngine};
//!
//! let square = Polygon::new(vec![
//!     Point::new(0.0, 0.0),
//!     Point::new(1.0, 0.0),
//!     Point::new(1.0, 1.0),
//!     Point::new(0.0, 1.0),
//! ])?;
//! let generators = to_voronoi(&square)?;
//! let engine = VoronoiEngine::new(&generators);
//! assert!(engine.contains(Point::new(0.25, 0.75)));
//! assert!(!engine.contains(Point::new(1.5, 0.5)));
//! # Ok::<(), vpip_core::GeometryError>(())
//! ```

pub mod convert;
pub mod engines;
mod error;
pub mod geometry;
pub mod io;
mod scalar;

pub use convert::{
    edge_coefficients, foot_of_perpendicular, reflect_generator, to_voronoi, to_voronoi_with,
    EdgeCoefficients, GeneratorSet,
};
pub use engines::{
    ray_crossing_contains, ray_crossing_contains_batch, ray_crossing_count, sign_of_offset_contains,
    sign_of_offset_contains_batch, voronoi_contains, voronoi_contains_batch,
    voronoi_contains_batch_euclidean, voronoi_contains_batch_instrumented, voronoi_contains_euclidean,
    EngineKind, InclusionEngine, InclusionMask, PointBatch, RayCrossingEngine, SignOfOffsetEngine,
    SquaredDistanceTable, UnknownEngine, VoronoiEngine, WorkCounts,
};
pub use error::{FormatError, GeometryError};
pub use geometry::{centroid, signed_area, validate_polygon, ConvexPolygon, Orientation, Point2, Tolerances};
pub use scalar::Scalar;

pub type Point = Point2<f64>;
pub type Polygon = ConvexPolygon<f64>;
pub type Generators = GeneratorSet<f64>;
pub type Batch = PointBatch<f64>;
pub type Edge = EdgeCoefficients<f64>;

pub type Point32 = Point2<f32>;
pub type Polygon32 = ConvexPolygon<f32>;
pub type Generators32 = GeneratorSet<f32>;
pub type Batch32 = PointBatch<f32>;
