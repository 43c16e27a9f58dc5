use crate::convert::{to_voronoi_with, GeneratorSet};
use crate::error::GeometryError;
use crate::geometry::{ConvexPolygon, Point2, Tolerances};
use crate::scalar::Scalar;

use super::{for_each_block, EngineKind, InclusionEngine, InclusionMask, PointBatch, BLOCK};

#[inline(always)]
fn sq_dist<T: Scalar>(px: T, py: T, gx: T, gy: T) -> T {
    let dx = px - gx;
    let dy = py - gy;
    dx * dx + dy * dy
}

/// Work performed by one instrumented batch run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WorkCounts {
    /// Squared-distance evaluations, `(n + 1) * m` for a full run.
    pub distance_evaluations: u64,
    /// Inner-versus-outer comparisons, `n * m` for a full run.
    pub comparisons: u64,
}

trait Tally {
    fn record(&mut self, distances: usize, comparisons: usize);
}

impl Tally for () {
    #[inline(always)]
    fn record(&mut self, _: usize, _: usize) {}
}

impl Tally for WorkCounts {
    #[inline]
    fn record(&mut self, distances: usize, comparisons: usize) {
        self.distance_evaluations += distances as u64;
        self.comparisons += comparisons as u64;
    }
}

/// Nearest-generator inclusion test: a point is inside iff no outer
/// generator is strictly closer than the inner one.
#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiEngine<T> {
    inner: Point2<T>,
    outer_x: Vec<T>,
    outer_y: Vec<T>,
}

impl<T: Scalar> VoronoiEngine<T> {
    pub fn new(generators: &GeneratorSet<T>) -> Self {
        let (outer_x, outer_y) = generators.outer().iter().map(|p| (p.x, p.y)).unzip();
        Self {
            inner: generators.inner(),
            outer_x,
            outer_y,
        }
    }

    /// Converts the polygon and wraps the resulting generators.
    pub fn from_polygon(polygon: &ConvexPolygon<T>) -> Result<Self, GeometryError> {
        to_voronoi_with(polygon, &Tolerances::default()).map(|g| Self::new(&g))
    }

    pub fn edge_count(&self) -> usize {
        self.outer_x.len()
    }

    /// Per block: squared distance to the inner generator, running minimum
    /// of the squared distances to the outer generators, then one `<=` per
    /// point. `d0 <= min_k dk` is exactly `d0 <= dk` for every `k`.
    fn kernel<W: Tally>(&self, xs: &[T], ys: &[T], out: &mut [bool], tally: &mut W) {
        let (ix, iy) = (self.inner.x, self.inner.y);
        let (first_x, first_y) = (self.outer_x[0], self.outer_y[0]);
        let mut inner_d = [T::zero(); BLOCK];
        let mut nearest = [T::zero(); BLOCK];
        for_each_block(xs, ys, out, |xs, ys, out| {
            let len = xs.len();
            let (d0, dmin) = (&mut inner_d[..len], &mut nearest[..len]);
            for (((d, m), &x), &y) in d0.iter_mut().zip(dmin.iter_mut()).zip(xs).zip(ys) {
                *d = sq_dist(x, y, ix, iy);
                *m = sq_dist(x, y, first_x, first_y);
            }
            tally.record(2 * len, 0);
            for (&gx, &gy) in self.outer_x[1..].iter().zip(&self.outer_y[1..]) {
                for ((m, &x), &y) in dmin.iter_mut().zip(xs).zip(ys) {
                    let d = sq_dist(x, y, gx, gy);
                    *m = if d < *m { d } else { *m };
                }
                tally.record(len, len);
            }
            for (o, (&d, &m)) in out.iter_mut().zip(d0.iter().zip(dmin.iter())) {
                *o = d <= m;
            }
            tally.record(0, len);
        });
    }
}

impl<T: Scalar> InclusionEngine<T> for VoronoiEngine<T> {
    fn kind(&self) -> EngineKind {
        EngineKind::Voronoi
    }

    fn contains(&self, p: Point2<T>) -> bool {
        let d0 = sq_dist(p.x, p.y, self.inner.x, self.inner.y);
        self.outer_x
            .iter()
            .zip(&self.outer_y)
            .all(|(&gx, &gy)| d0 <= sq_dist(p.x, p.y, gx, gy))
    }

    fn classify_into(&self, xs: &[T], ys: &[T], out: &mut [bool]) {
        self.kernel(xs, ys, out, &mut ());
    }
}

pub fn voronoi_contains<T: Scalar>(generators: &GeneratorSet<T>, p: Point2<T>) -> bool {
    let d0 = p.squared_distance(generators.inner());
    generators
        .outer()
        .iter()
        .all(|&q| d0 <= sq_dist(p.x, p.y, q.x, q.y))
}

pub fn voronoi_contains_batch<T: Scalar>(generators: &GeneratorSet<T>, batch: &PointBatch<T>) -> InclusionMask {
    VoronoiEngine::new(generators).contains_batch(batch)
}

/// Batch test that also reports how many distances and comparisons the
/// kernel evaluated.
pub fn voronoi_contains_batch_instrumented<T: Scalar>(
    generators: &GeneratorSet<T>,
    batch: &PointBatch<T>,
) -> (InclusionMask, WorkCounts) {
    let engine = VoronoiEngine::new(generators);
    let mut counts = WorkCounts::default();
    let mut bits = vec![false; batch.len()];
    engine.kernel(batch.xs(), batch.ys(), &mut bits, &mut counts);
    (bits.into(), counts)
}

/// Debug path comparing true Euclidean distances (with square roots).
pub fn voronoi_contains_euclidean<T: Scalar>(generators: &GeneratorSet<T>, p: Point2<T>) -> bool {
    let d0 = p.distance(generators.inner());
    generators.outer().iter().all(|&q| d0 <= p.distance(q))
}

pub fn voronoi_contains_batch_euclidean<T: Scalar>(
    generators: &GeneratorSet<T>,
    batch: &PointBatch<T>,
) -> InclusionMask {
    batch
        .points()
        .map(|p| voronoi_contains_euclidean(generators, p))
        .collect()
}

/// Full `(n + 1) x m` table of squared generator-to-point distances. Row 0
/// belongs to the inner generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredDistanceTable<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquaredDistanceTable<T> {
    pub fn compute(generators: &GeneratorSet<T>, batch: &PointBatch<T>) -> Self {
        let cols = batch.len();
        let gens: Vec<Point2<T>> = std::iter::once(generators.inner())
            .chain(generators.outer().iter().copied())
            .collect();
        let mut data = Vec::with_capacity(gens.len() * cols);
        for g in &gens {
            data.extend(
                batch
                    .xs()
                    .iter()
                    .zip(batch.ys())
                    .map(|(&x, &y)| sq_dist(x, y, g.x, g.y)),
            );
        }
        Self {
            rows: gens.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }

    /// First row holding the minimum of column `col`.
    pub fn argmin(&self, col: usize) -> usize {
        (1..self.rows).fold(0, |best, r| if self.get(r, col) < self.get(best, col) { r } else { best })
    }

    /// The inclusion predicate read off the table.
    pub fn mask(&self) -> InclusionMask {
        (0..self.cols)
            .map(|c| (1..self.rows).all(|r| self.get(0, c) <= self.get(r, c)))
            .collect()
    }
}
