use thiserror::Error;

/// Errors raised while building polygons, generator sets and batches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {count}")]
    TooFewVertices { count: usize },
    #[error("polygon is not strictly convex at vertex {index}")]
    NotConvex { index: usize },
    #[error("edge {index} has zero length (repeated vertex)")]
    DegenerateEdge { index: usize },
    #[error("coordinate {index} is NaN or infinite")]
    NonFinite { index: usize },
    #[error("inner generator lies on the line of edge {edge}")]
    GeneratorCollision { edge: usize },
    #[error("batch coordinate arrays differ in length ({xs} xs, {ys} ys)")]
    LengthMismatch { xs: usize, ys: usize },
}

/// Errors raised while reading or writing the on-disk formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad magic {found:?}, expected {expected:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("truncated stream: expected {expected} bytes of payload, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
