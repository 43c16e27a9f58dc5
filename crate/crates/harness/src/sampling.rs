use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vpip_core::{Batch, Point, Polygon};

use crate::error::{invalid, HarnessError};

/// Axis-aligned sampling region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBox {
    pub min: Point,
    pub max: Point,
}

impl SampleBox {
    pub fn new(min: Point, max: Point) -> Result<Self, HarnessError> {
        let ok = min.is_finite() && max.is_finite() && min.x < max.x && min.y < max.y;
        if !ok {
            return Err(invalid(format!("degenerate sample box {min:?}..{max:?}")));
        }
        Ok(Self { min, max })
    }

    pub fn center(&self) -> Point {
        self.min.midpoint(self.max)
    }

    /// The polygon's bounding box scaled by 2 about its center.
    pub fn around(polygon: &Polygon) -> Self {
        let (lo, hi) = polygon.bounding_box();
        let c = lo.midpoint(hi);
        let half = hi - c;
        Self {
            min: c - half * 2.0,
            max: c + half * 2.0,
        }
    }
}

/// `m` i.i.d. uniform points over `bounds` from a ChaCha8 stream seeded
/// with `seed`.
pub fn sample_points(m: usize, bounds: &SampleBox, seed: u64) -> Result<Batch, HarnessError> {
    let bounds = SampleBox::new(bounds.min, bounds.max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    for _ in 0..m {
        xs.push(rng.gen_range(bounds.min.x..bounds.max.x));
        ys.push(rng.gen_range(bounds.min.y..bounds.max.y));
    }
    Ok(Batch::new(xs, ys)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_box() -> SampleBox {
        SampleBox::new(Point::new(-2.0, -2.0), Point::new(2.0, 2.0)).unwrap()
    }

    #[test]
    fn empty_and_deterministic() {
        assert!(sample_points(0, &square_box(), 7).unwrap().is_empty());
        let a = sample_points(1000, &square_box(), 42).unwrap();
        let b = sample_points(1000, &square_box(), 42).unwrap();
        let same = a.xs().iter().zip(b.xs()).all(|(p, q)| p.to_bits() == q.to_bits())
            && a.ys().iter().zip(b.ys()).all(|(p, q)| p.to_bits() == q.to_bits());
        assert!(same);
        assert_ne!(a, sample_points(1000, &square_box(), 43).unwrap());
    }

    #[test]
    fn million_point_mean_near_center() {
        // σ = 4/√12 ≈ 1.15 per axis, so σ/√m ≈ 1.2e-3; 0.01 is > 8σ.
        let batch = sample_points(1_000_000, &square_box(), 42).unwrap();
        let m = batch.len() as f64;
        let mx = batch.xs().iter().sum::<f64>() / m;
        let my = batch.ys().iter().sum::<f64>() / m;
        assert!(mx.abs() < 0.01 && my.abs() < 0.01, "mean ({mx}, {my})");
        assert!(batch.points().all(|p| p.x >= -2.0 && p.x < 2.0 && p.y >= -2.0 && p.y < 2.0));
    }

    #[test]
    fn degenerate_box_rejected() {
        let flat = SampleBox { min: Point::new(0.0, 0.0), max: Point::new(1.0, 0.0) };
        assert!(matches!(sample_points(5, &flat, 1), Err(HarnessError::InvalidParameter(_))));
    }

    #[test]
    fn box_around_polygon_doubles_extent() {
        let sq = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let b = SampleBox::around(&sq);
        assert_eq!(b.min, Point::new(-0.5, -0.5));
        assert_eq!(b.max, Point::new(1.5, 1.5));
        assert_eq!(b.center(), Point::new(0.5, 0.5));
    }
}
