//! Point-inclusion engines over structure-of-arrays batches.
//!
//! All engines use closed-boundary semantics: a point exactly on the polygon
//! boundary is inside. Batch kernels contain no per-point data-dependent
//! branches; they are evaluated over fixed-size blocks of points.

mod crossing;
mod offset;
mod voronoi;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::geometry::Point2;
use crate::scalar::Scalar;

pub use crossing::{ray_crossing_contains, ray_crossing_contains_batch, ray_crossing_count, RayCrossingEngine};
pub use offset::{sign_of_offset_contains, sign_of_offset_contains_batch, SignOfOffsetEngine};
pub use voronoi::{
    voronoi_contains, voronoi_contains_batch, voronoi_contains_batch_euclidean,
    voronoi_contains_batch_instrumented, voronoi_contains_euclidean, SquaredDistanceTable,
    VoronoiEngine, WorkCounts,
};

/// Points per block in the batch kernels.
pub(crate) const BLOCK: usize = 256;

/// Splits a slice triple into [`BLOCK`]-sized pieces and hands each to
/// `kernel`, the short tail last.
#[inline(always)]
pub(crate) fn for_each_block<T: Copy>(
    xs: &[T],
    ys: &[T],
    out: &mut [bool],
    mut kernel: impl FnMut(&[T], &[T], &mut [bool]),
) {
    assert!(xs.len() == ys.len() && xs.len() == out.len());
    let mut xc = xs.chunks_exact(BLOCK);
    let mut yc = ys.chunks_exact(BLOCK);
    let mut oc = out.chunks_exact_mut(BLOCK);
    for ((x, y), o) in (&mut xc).zip(&mut yc).zip(&mut oc) {
        let x: &[T; BLOCK] = x.try_into().unwrap();
        let y: &[T; BLOCK] = y.try_into().unwrap();
        let o: &mut [bool; BLOCK] = o.try_into().unwrap();
        kernel(x, y, o);
    }
    let (x, y, o) = (xc.remainder(), yc.remainder(), oc.into_remainder());
    if !x.is_empty() {
        kernel(x, y, o);
    }
}

/// Points per task when a batch is split across rayon workers.
const PARALLEL_CHUNK: usize = 16 * 1024;

/// Query points stored as separate coordinate arrays.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointBatch<T> {
    xs: Vec<T>,
    ys: Vec<T>,
}

impl<T: Scalar> PointBatch<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self, GeometryError> {
        if xs.len() != ys.len() {
            return Err(GeometryError::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if let Some(index) = xs
            .iter()
            .zip(&ys)
            .position(|(x, y)| !(x.is_finite() && y.is_finite()))
        {
            return Err(GeometryError::NonFinite { index });
        }
        Ok(Self { xs, ys })
    }

    pub fn from_points(points: &[Point2<T>]) -> Result<Self, GeometryError> {
        let (xs, ys) = points.iter().map(|p| (p.x, p.y)).unzip();
        Self::new(xs, ys)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn get(&self, i: usize) -> Point2<T> {
        Point2::new(self.xs[i], self.ys[i])
    }

    pub fn points(&self) -> impl Iterator<Item = Point2<T>> + '_ {
        self.xs.iter().zip(&self.ys).map(|(&x, &y)| Point2::new(x, y))
    }
}

/// Per-point inclusion results, in batch order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct InclusionMask {
    bits: Vec<bool>,
}

impl InclusionMask {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn count_inside(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Indices where `self` and `other` differ. Panics on length mismatch.
    pub fn differences<'a>(&'a self, other: &'a InclusionMask) -> impl Iterator<Item = usize> + 'a {
        assert_eq!(self.len(), other.len(), "mask lengths differ");
        self.bits
            .iter()
            .zip(&other.bits)
            .enumerate()
            .filter_map(|(i, (a, b))| (a != b).then_some(i))
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }
}

impl From<Vec<bool>> for InclusionMask {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl FromIterator<bool> for InclusionMask {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

/// Common interface of the three engines.
pub trait InclusionEngine<T: Scalar>: Sync {
    /// Which algorithm this engine runs.
    fn kind(&self) -> EngineKind;

    /// Single-point test. May exit early.
    fn contains(&self, p: Point2<T>) -> bool;

    /// Branchless kernel over one contiguous slice of points.
    fn classify_into(&self, xs: &[T], ys: &[T], out: &mut [bool]);

    fn contains_batch(&self, batch: &PointBatch<T>) -> InclusionMask {
        let mut bits = vec![false; batch.len()];
        self.classify_into(batch.xs(), batch.ys(), &mut bits);
        bits.into()
    }

    /// Splits the batch across the current rayon pool. The result does not
    /// depend on how the work is partitioned.
    fn contains_batch_par(&self, batch: &PointBatch<T>) -> InclusionMask {
        let mut bits = vec![false; batch.len()];
        bits.par_chunks_mut(PARALLEL_CHUNK)
            .zip(batch.xs().par_chunks(PARALLEL_CHUNK))
            .zip(batch.ys().par_chunks(PARALLEL_CHUNK))
            .for_each(|((out, xs), ys)| self.classify_into(xs, ys, out));
        bits.into()
    }

    /// Pointwise scalar loop, for cross-checking the batch kernel.
    fn contains_each(&self, batch: &PointBatch<T>) -> InclusionMask {
        batch.points().map(|p| self.contains(p)).collect()
    }
}

/// The available inclusion algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineKind {
    Voronoi,
    SignOfOffset,
    RayCrossing,
}

impl EngineKind {
    pub const ALL: [EngineKind; 3] = [
        EngineKind::Voronoi,
        EngineKind::SignOfOffset,
        EngineKind::RayCrossing,
    ];

    /// Canonical name used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Voronoi => "voronoi",
            EngineKind::SignOfOffset => "sign_of_offset",
            EngineKind::RayCrossing => "ray_crossing",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown engine {0:?} (expected voronoi, offset or crossing)")]
pub struct UnknownEngine(pub String);

impl FromStr for EngineKind {
    type Err = UnknownEngine;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "voronoi" => Ok(EngineKind::Voronoi),
            "offset" | "sign_of_offset" | "sign-of-offset" => Ok(EngineKind::SignOfOffset),
            "crossing" | "ray_crossing" | "ray-crossing" => Ok(EngineKind::RayCrossing),
            other => Err(UnknownEngine(other.to_string())),
        }
    }
}
