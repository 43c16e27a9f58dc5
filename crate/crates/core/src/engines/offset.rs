use crate::geometry::{ConvexPolygon, Point2};
use crate::scalar::Scalar;

use super::{for_each_block, EngineKind, InclusionEngine, InclusionMask, PointBatch, BLOCK};

/// Same-side test against every edge line of a convex polygon.
///
/// Per edge `v' -> v` with `dv = v - v'` the two sides of the line equation
/// are `lhs = q.y dv.x - q.x dv.y` and `rhs = v'.y dv.x - v'.x dv.y`. The
/// point is inside iff no two edges disagree on the strict sign of
/// `lhs - rhs`; edges with `lhs == rhs` (point on the line) abstain.
#[derive(Debug, Clone, PartialEq)]
pub struct SignOfOffsetEngine<T> {
    dvx: Vec<T>,
    dvy: Vec<T>,
    rhs: Vec<T>,
}

impl<T: Scalar> SignOfOffsetEngine<T> {
    pub fn new(polygon: &ConvexPolygon<T>) -> Self {
        let v = polygon.vertices();
        let n = v.len();
        let mut engine = Self {
            dvx: Vec::with_capacity(n),
            dvy: Vec::with_capacity(n),
            rhs: Vec::with_capacity(n),
        };
        for i in 0..n {
            let prev = v[(i + n - 1) % n];
            let cur = v[i];
            let (dx, dy) = (cur.x - prev.x, cur.y - prev.y);
            engine.dvx.push(dx);
            engine.dvy.push(dy);
            engine.rhs.push(prev.y * dx - prev.x * dy);
        }
        engine
    }
}

impl<T: Scalar> InclusionEngine<T> for SignOfOffsetEngine<T> {
    fn kind(&self) -> EngineKind {
        EngineKind::SignOfOffset
    }

    fn contains(&self, p: Point2<T>) -> bool {
        let (mut below, mut above) = (false, false);
        for ((&dx, &dy), &rhs) in self.dvx.iter().zip(&self.dvy).zip(&self.rhs) {
            let lhs = p.y * dx - p.x * dy;
            below |= lhs < rhs;
            above |= lhs > rhs;
            if below && above {
                return false;
            }
        }
        true
    }

    fn classify_into(&self, xs: &[T], ys: &[T], out: &mut [bool]) {
        // Counts live in `T` lanes next to the coordinates they come from;
        // they never exceed the edge count, so they stay exact.
        let (zero, one) = (T::zero(), T::one());
        let mut below = [zero; BLOCK];
        let mut above = [zero; BLOCK];
        for_each_block(xs, ys, out, |xs, ys, out| {
            let len = xs.len();
            let (below, above) = (&mut below[..len], &mut above[..len]);
            below.fill(zero);
            above.fill(zero);
            for ((&dx, &dy), &rhs) in self.dvx.iter().zip(&self.dvy).zip(&self.rhs) {
                for (((b, a), &x), &y) in below.iter_mut().zip(above.iter_mut()).zip(xs).zip(ys) {
                    let lhs = y * dx - x * dy;
                    *b = *b + if lhs < rhs { one } else { zero };
                    *a = *a + if lhs > rhs { one } else { zero };
                }
            }
            for (o, (&b, &a)) in out.iter_mut().zip(below.iter().zip(above.iter())) {
                *o = (b == zero) | (a == zero);
            }
        });
    }
}

pub fn sign_of_offset_contains<T: Scalar>(polygon: &ConvexPolygon<T>, p: Point2<T>) -> bool {
    SignOfOffsetEngine::new(polygon).contains(p)
}

pub fn sign_of_offset_contains_batch<T: Scalar>(polygon: &ConvexPolygon<T>, batch: &PointBatch<T>) -> InclusionMask {
    SignOfOffsetEngine::new(polygon).contains_batch(batch)
}
