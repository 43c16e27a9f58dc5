//! Deterministic test polygons.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vpip_core::{Point, Polygon};

use crate::error::{invalid, HarnessError};

/// Regular `n`-gon with vertices at angles `2πk/n + π/2`, counter-clockwise.
pub fn generate_regular_polygon(n: usize, circumradius: f64, center: Point) -> Result<Polygon, HarnessError> {
    if n < 3 {
        return Err(invalid(format!("regular polygon needs n >= 3, got {n}")));
    }
    if !(circumradius > 0.0 && circumradius.is_finite()) {
        return Err(invalid(format!("circumradius must be positive, got {circumradius}")));
    }
    let vertices = (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64 + FRAC_PI_2;
            Point::new(center.x + circumradius * t.cos(), center.y + circumradius * t.sin())
        })
        .collect();
    Ok(Polygon::new(vertices)?)
}

/// Seeded random convex `n`-gon: points on a circle at sorted random angles,
/// then a random rotation, anisotropic scaling in `[0.5, 1.5]` and a shift
/// in `[-1, 1]²`.
///
/// Angle sets with a gap narrower than `2π / (20 n)` are resampled so that
/// every vertex turn is comfortably above the convexity tolerance.
pub fn random_convex_polygon(n: usize, seed: u64) -> Result<Polygon, HarnessError> {
    if n < 3 {
        return Err(invalid(format!("random polygon needs n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_gap = TAU / (20.0 * n as f64);
    let angles = loop {
        let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        a.sort_by(f64::total_cmp);
        let wrap = a[0] + TAU - a[n - 1];
        if wrap >= min_gap && a.windows(2).all(|w| w[1] - w[0] >= min_gap) {
            break a;
        }
    };
    let (sin, cos) = rng.gen_range(0.0..TAU).sin_cos();
    let sx = rng.gen_range(0.5..1.5);
    let sy = rng.gen_range(0.5..1.5);
    let shift = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let vertices = angles
        .into_iter()
        .map(|t| {
            let (x, y) = (sx * t.cos(), sy * t.sin());
            Point::new(cos * x - sin * y + shift.x, sin * x + cos * y + shift.y)
        })
        .collect();
    Ok(Polygon::new(vertices)?)
}
