//! Test-polygon generation, seeded sampling, engine cross-validation and
//! throughput benchmarking on top of `vpip-core`.

pub mod bench;
mod error;
pub mod polygons;
pub mod sampling;
pub mod validation;

pub use bench::{
    read_records, run_benchmark, summarize, write_records, BenchConfig, BenchRecord, BenchRun, Phase,
    SummaryRow,
};
pub use error::HarnessError;
pub use polygons::{generate_regular_polygon, random_convex_polygon};
pub use sampling::{sample_points, SampleBox};
pub use validation::{run_validation, run_validation_with, ValidationReport, BOUNDARY_BAND};
