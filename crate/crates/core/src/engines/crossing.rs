use crate::error::GeometryError;
use crate::geometry::Point2;
use crate::scalar::Scalar;

use super::{for_each_block, EngineKind, InclusionEngine, InclusionMask, PointBatch, BLOCK};

/// One edge `v' -> v`. The line coefficients are negated for edges that do
/// not go up, so "left of an upward edge or right of a downward one" is the
/// single comparison `lhs > rhs`. Negation is exact, so this is the same
/// predicate bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Edge<T> {
    vy: T,
    prev_y: T,
    dvx: T,
    dvy: T,
    rhs: T,
    min: Point2<T>,
    max: Point2<T>,
}

impl<T: Scalar> Edge<T> {
    fn new(prev: Point2<T>, cur: Point2<T>) -> Self {
        let (mut dvx, mut dvy) = (cur.x - prev.x, cur.y - prev.y);
        let mut rhs = prev.y * dvx - prev.x * dvy;
        if cur.y <= prev.y {
            (dvx, dvy, rhs) = (-dvx, -dvy, -rhs);
        }
        Self {
            vy: cur.y,
            prev_y: prev.y,
            dvx,
            dvy,
            rhs,
            min: Point2::new(prev.x.min(cur.x), prev.y.min(cur.y)),
            max: Point2::new(prev.x.max(cur.x), prev.y.max(cur.y)),
        }
    }

    /// `(crosses the +x ray, lies on the closed segment)`.
    #[inline(always)]
    fn probe(&self, qx: T, qy: T) -> (bool, bool) {
        let in_range = (self.vy > qy) != (self.prev_y > qy);
        let lhs = qy * self.dvx - qx * self.dvy;
        let on_segment = (lhs == self.rhs)
            & (qx >= self.min.x)
            & (qx <= self.max.x)
            & (qy >= self.min.y)
            & (qy <= self.max.y);
        (in_range & (lhs > self.rhs), on_segment)
    }
}

/// Crossing-number test with a ray towards `+x`. Works for any simple
/// polygon, convex or not, in either orientation.
///
/// Edges straddle the ray's height under the half-open rule
/// `(v.y > q.y) != (v'.y > q.y)`, so rays through a vertex are counted once.
/// Points exactly on an edge are reported inside.
#[derive(Debug, Clone, PartialEq)]
pub struct RayCrossingEngine<T> {
    edges: Vec<Edge<T>>,
}

impl<T: Scalar> RayCrossingEngine<T> {
    pub fn new(vertices: &[Point2<T>]) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices {
                count: vertices.len(),
            });
        }
        if let Some(index) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        Ok(Self::build(vertices))
    }

    fn build(vertices: &[Point2<T>]) -> Self {
        let n = vertices.len();
        let edges = (0..n)
            .map(|i| Edge::new(vertices[(i + n - 1) % n], vertices[i]))
            .collect();
        Self { edges }
    }

    /// Number of edges the ray from `p` crosses, and whether `p` lies on an
    /// edge.
    pub fn crossings(&self, p: Point2<T>) -> (usize, bool) {
        self.edges.iter().fold((0, false), |(count, on), e| {
            let (cross, seg) = e.probe(p.x, p.y);
            (count + cross as usize, on | seg)
        })
    }
}

impl<T: Scalar> InclusionEngine<T> for RayCrossingEngine<T> {
    fn kind(&self) -> EngineKind {
        EngineKind::RayCrossing
    }

    fn contains(&self, p: Point2<T>) -> bool {
        let (count, on_boundary) = self.crossings(p);
        count % 2 == 1 || on_boundary
    }

    fn classify_into(&self, xs: &[T], ys: &[T], out: &mut [bool]) {
        // Crossing counts and boundary hits are kept in `T` lanes; both stay
        // far below the range where floats lose integers.
        let (zero, one) = (T::zero(), T::one());
        let mut count = [zero; BLOCK];
        let mut boundary = [zero; BLOCK];
        for_each_block(xs, ys, out, |xs, ys, out| {
            let len = xs.len();
            let (count, boundary) = (&mut count[..len], &mut boundary[..len]);
            count.fill(zero);
            boundary.fill(zero);
            for e in &self.edges {
                for (((c, on), &x), &y) in count.iter_mut().zip(boundary.iter_mut()).zip(xs).zip(ys) {
                    let (cross, seg) = e.probe(x, y);
                    *c = *c + if cross { one } else { zero };
                    *on = *on + if seg { one } else { zero };
                }
            }
            for (o, (&c, &on)) in out.iter_mut().zip(count.iter().zip(boundary.iter())) {
                let odd = c.to_u32().is_some_and(|c| c & 1 == 1);
                *o = odd | (on > zero);
            }
        });
    }
}

/// Crossing count for `p` against the ring `vertices` (boundary hits are not
/// counted).
pub fn ray_crossing_count<T: Scalar>(vertices: &[Point2<T>], p: Point2<T>) -> usize {
    RayCrossingEngine::build(vertices).crossings(p).0
}

pub fn ray_crossing_contains<T: Scalar>(vertices: &[Point2<T>], p: Point2<T>) -> bool {
    RayCrossingEngine::build(vertices).contains(p)
}

pub fn ray_crossing_contains_batch<T: Scalar>(vertices: &[Point2<T>], batch: &PointBatch<T>) -> InclusionMask {
    RayCrossingEngine::build(vertices).contains_batch(batch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point2<f64>> {
        raw.iter().map(|&p| p.into()).collect()
    }

    const SQUARE: [(f64, f64); 4] = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];

    #[test]
    fn square_examples() {
        let sq = pts(&SQUARE);
        assert_eq!(ray_crossing_count(&sq, Point2::new(0.5, 0.5)), 1);
        assert!(ray_crossing_contains(&sq, Point2::new(0.5, 0.5)));
        assert_eq!(ray_crossing_count(&sq, Point2::new(2.0, 0.5)), 0);
        assert!(!ray_crossing_contains(&sq, Point2::new(2.0, 0.5)));
    }

    #[test]
    fn concave_polygon() {
        let v = pts(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (2.0, 1.0), (0.0, 4.0)]);
        // crosses x = 4 and the edge (4,4)-(2,1) at x = 8/3
        assert_eq!(ray_crossing_count(&v, Point2::new(2.0, 2.0)), 2);
        assert!(!ray_crossing_contains(&v, Point2::new(2.0, 2.0)));
        assert!(ray_crossing_contains(&v, Point2::new(0.5, 2.0)));
        assert!(ray_crossing_contains(&v, Point2::new(2.0, 0.5)));
    }

    #[test]
    fn clockwise_ring_agrees() {
        let mut sq = pts(&SQUARE);
        sq.reverse();
        assert!(ray_crossing_contains(&sq, Point2::new(0.25, 0.75)));
        assert!(!ray_crossing_contains(&sq, Point2::new(-0.25, 0.75)));
    }

    #[test]
    fn boundary_points_inside() {
        let sq = pts(&SQUARE);
        for p in [(1.0, 0.5), (0.0, 0.5), (0.5, 0.0), (0.5, 1.0), (0.0, 0.0), (1.0, 1.0)] {
            assert!(ray_crossing_contains(&sq, p.into()), "{p:?}");
        }
        // collinear with an edge but beyond its end
        assert!(!ray_crossing_contains(&sq, Point2::new(1.0, 1.5)));
    }

    #[test]
    fn batch_matches_scalar_on_edge_midpoints() {
        let sq = pts(&SQUARE);
        let batch = PointBatch::from_points(&pts(&[(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)])).unwrap();
        let engine = RayCrossingEngine::new(&sq).unwrap();
        assert_eq!(engine.contains_batch(&batch), engine.contains_each(&batch));
        assert!(ray_crossing_contains_batch(&sq, &PointBatch::default()).is_empty());
    }

    #[test]
    fn rejects_short_rings() {
        assert!(RayCrossingEngine::new(&pts(&[(0.0, 0.0), (1.0, 0.0)])).is_err());
    }
}
