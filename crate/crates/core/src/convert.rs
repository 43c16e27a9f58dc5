//! Conversion of a convex polygon into its Voronoi generator set.
//!
//! The centroid becomes the inner generator `p0`. Every edge line is the
//! perpendicular bisector between `p0` and one outer generator, so each
//! outer generator is the mirror image of `p0` across that edge's line.

use crate::error::GeometryError;
use crate::geometry::{ConvexPolygon, Point2, Tolerances};
use crate::scalar::Scalar;

/// Standard-form line `a x + b y + c = 0` through an edge `q_i -> q_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCoefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> EdgeCoefficients<T> {
    /// `a² + b²`, the squared edge length.
    #[inline]
    pub fn norm_sq(&self) -> T {
        self.a * self.a + self.b * self.b
    }

    /// Signed value of the line equation at `p`.
    #[inline]
    pub fn evaluate(&self, p: Point2<T>) -> T {
        self.a * p.x + self.b * p.y + self.c
    }

    /// Unsigned Euclidean distance from `p` to the line.
    pub fn distance(&self, p: Point2<T>) -> T {
        self.evaluate(p).abs() / self.norm_sq().sqrt()
    }
}

pub fn edge_coefficients<T: Scalar>(
    q_i: Point2<T>,
    q_j: Point2<T>,
    tol: &Tolerances<T>,
) -> Result<EdgeCoefficients<T>, GeometryError> {
    let a = q_i.y - q_j.y;
    let b = q_j.x - q_i.x;
    let c = -(a * q_i.x + b * q_i.y);
    let e = EdgeCoefficients { a, b, c };
    if e.norm_sq() <= tol.edge_length_sq {
        return Err(GeometryError::DegenerateEdge { index: 0 });
    }
    Ok(e)
}

/// Closest point to `p0` on the line `e`.
pub fn foot_of_perpendicular<T: Scalar>(p0: Point2<T>, e: &EdgeCoefficients<T>) -> Point2<T> {
    let EdgeCoefficients { a, b, c } = *e;
    let denom = e.norm_sq();
    let x = (b * b * p0.x - a * b * p0.y - c * a) / denom;
    let y = (-a * b * p0.x + a * a * p0.y - c * b) / denom;
    Point2::new(x, y)
}

/// Mirror image of `p0` across the line `e`, evaluated with the fused
/// reflection matrix `[b²-a², -2ab; -2ab, a²-b²]`.
pub fn reflect_generator<T: Scalar>(
    p0: Point2<T>,
    e: &EdgeCoefficients<T>,
    tol: &Tolerances<T>,
) -> Result<Point2<T>, GeometryError> {
    let EdgeCoefficients { a, b, c } = *e;
    let denom = e.norm_sq();
    // |a x + b y + c| / |n| <= tol * |n|
    if e.evaluate(p0).abs() <= tol.collision * denom {
        return Err(GeometryError::GeneratorCollision { edge: 0 });
    }
    let two = T::two();
    let (aa, bb, ab) = (a * a, b * b, a * b);
    let x = ((bb - aa) * p0.x - two * ab * p0.y - two * c * a) / denom;
    let y = (-two * ab * p0.x + (aa - bb) * p0.y - two * c * b) / denom;
    Ok(Point2::new(x, y))
}

/// Inner generator plus one outer generator per polygon edge, in edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet<T> {
    inner: Point2<T>,
    outer: Vec<Point2<T>>,
}

impl<T: Scalar> GeneratorSet<T> {
    /// Assembles a generator set from precomputed points without checking the
    /// geometric invariants (e.g. when loading a stored conversion).
    pub fn from_parts(inner: Point2<T>, outer: Vec<Point2<T>>) -> Result<Self, GeometryError> {
        if outer.len() < 3 {
            return Err(GeometryError::TooFewVertices { count: outer.len() });
        }
        if !inner.is_finite() {
            return Err(GeometryError::NonFinite { index: 0 });
        }
        if let Some(i) = outer.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { index: i + 1 });
        }
        Ok(Self { inner, outer })
    }

    pub fn inner(&self) -> Point2<T> {
        self.inner
    }

    pub fn outer(&self) -> &[Point2<T>] {
        &self.outer
    }

    /// Number of polygon edges, i.e. outer generators.
    pub fn edge_count(&self) -> usize {
        self.outer.len()
    }

    pub fn into_parts(self) -> (Point2<T>, Vec<Point2<T>>) {
        (self.inner, self.outer)
    }
}

/// Converts a polygon with default tolerances.
pub fn to_voronoi<T: Scalar>(polygon: &ConvexPolygon<T>) -> Result<GeneratorSet<T>, GeometryError> {
    to_voronoi_with(polygon, &Tolerances::default())
}

pub fn to_voronoi_with<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    tol: &Tolerances<T>,
) -> Result<GeneratorSet<T>, GeometryError> {
    let inner = polygon.centroid();
    let outer = polygon
        .edges()
        .enumerate()
        .map(|(k, (q_i, q_j))| {
            let e = edge_coefficients(q_i, q_j, tol)
                .map_err(|_| GeometryError::DegenerateEdge { index: k })?;
            reflect_generator(inner, &e, tol).map_err(|_| GeometryError::GeneratorCollision { edge: k })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorSet { inner, outer })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    /// Projection onto the segment's direction from an endpoint; does not use
    /// the line coefficients at all.
    fn project_oracle(p0: Point2<f64>, q_i: Point2<f64>, q_j: Point2<f64>) -> Point2<f64> {
        let d = q_j - q_i;
        let t = (p0 - q_i).dot(d) / d.dot(d);
        q_i + d * t
    }

    fn assert_close(a: Point2<f64>, b: Point2<f64>, eps: f64) {
        assert!(
            (a.x - b.x).abs() <= eps && (a.y - b.y).abs() <= eps,
            "{a:?} != {b:?}"
        );
    }

    #[test]
    fn coefficient_examples() {
        let e = edge_coefficients(p(0.0, 0.0), p(1.0, 0.0), &tol()).unwrap();
        assert_eq!((e.a, e.b, e.c), (0.0, 1.0, 0.0));
        let e = edge_coefficients(p(1.0, 0.0), p(1.0, 1.0), &tol()).unwrap();
        assert_eq!((e.a, e.b, e.c), (-1.0, 0.0, 1.0));
        let e = edge_coefficients(p(0.0, 1.0), p(1.0, 0.0), &tol()).unwrap();
        assert_eq!((e.a, e.b, e.c), (1.0, 1.0, -1.0));
        assert_eq!(e.evaluate(p(0.0, 1.0)), 0.0);
        assert_eq!(e.evaluate(p(1.0, 0.0)), 0.0);
    }

    #[test]
    fn degenerate_edge_rejected() {
        assert_eq!(
            edge_coefficients(p(2.0, 3.0), p(2.0, 3.0), &tol()),
            Err(GeometryError::DegenerateEdge { index: 0 })
        );
    }

    #[test]
    fn foot_examples() {
        let y0 = EdgeCoefficients { a: 0.0, b: 1.0, c: 0.0 };
        assert_eq!(foot_of_perpendicular(p(0.5, 0.5), &y0), p(0.5, 0.0));
        let x1 = EdgeCoefficients { a: -1.0, b: 0.0, c: 1.0 };
        assert_eq!(foot_of_perpendicular(p(0.5, 0.5), &x1), p(1.0, 0.5));
        let diag = EdgeCoefficients { a: 1.0, b: 1.0, c: -1.0 };
        let oracle = project_oracle(p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0));
        assert_close(oracle, p(0.5, 0.5), 1e-15);
        assert_close(foot_of_perpendicular(p(0.0, 0.0), &diag), oracle, 1e-15);
    }

    #[test]
    fn reflection_examples() {
        let y0 = EdgeCoefficients { a: 0.0, b: 1.0, c: 0.0 };
        assert_eq!(reflect_generator(p(0.5, 0.5), &y0, &tol()).unwrap(), p(0.5, -0.5));
        let x1 = EdgeCoefficients { a: -1.0, b: 0.0, c: 1.0 };
        assert_eq!(reflect_generator(p(0.5, 0.5), &x1, &tol()).unwrap(), p(1.5, 0.5));

        // (0.5, 0.5) sits on x + y = 1 itself, so the mirror image collapses.
        let diag = EdgeCoefficients { a: 1.0, b: 1.0, c: -1.0 };
        assert_eq!(
            reflect_generator(p(0.5, 0.5), &diag, &tol()),
            Err(GeometryError::GeneratorCollision { edge: 0 })
        );
        // Off the line: 2 * foot - p0 via the projection oracle.
        let p0 = p(0.0, 0.0);
        let oracle = project_oracle(p0, p(0.0, 1.0), p(1.0, 0.0)) * 2.0 - p0;
        assert_close(oracle, p(1.0, 1.0), 1e-15);
        assert_close(reflect_generator(p0, &diag, &tol()).unwrap(), oracle, 1e-15);
    }

    #[test]
    fn unit_square_generators() {
        let sq = ConvexPolygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap();
        let g = to_voronoi(&sq).unwrap();
        assert_eq!(g.inner(), p(0.5, 0.5));
        assert_eq!(
            g.outer(),
            &[p(0.5, -0.5), p(1.5, 0.5), p(0.5, 1.5), p(-0.5, 0.5)]
        );
    }

    #[test]
    fn triangle_generators() {
        let tri = ConvexPolygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
        let g = to_voronoi(&tri).unwrap();
        assert_close(g.inner(), p(1.0 / 3.0, 1.0 / 3.0), 1e-15);
        assert_close(g.outer()[0], p(1.0 / 3.0, -1.0 / 3.0), 1e-15);
    }

    #[test]
    fn pentagon_generators_at_twice_apothem() {
        let verts: Vec<_> = (0..5)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 5.0 + std::f64::consts::FRAC_PI_2;
                p(t.cos(), t.sin())
            })
            .collect();
        let g = to_voronoi(&ConvexPolygon::new(verts).unwrap()).unwrap();
        assert_close(g.inner(), p(0.0, 0.0), 1e-15);
        let expected = 2.0 * (std::f64::consts::PI / 5.0).cos();
        assert_relative_eq!(expected, 1.618033988749895, max_relative = 1e-15);
        for q in g.outer() {
            assert_relative_eq!(q.distance(g.inner()), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn from_parts_checks_shape() {
        assert!(GeneratorSet::from_parts(p(0.0, 0.0), vec![p(1.0, 0.0)]).is_err());
        assert!(GeneratorSet::from_parts(
            p(0.0, 0.0),
            vec![p(1.0, 0.0), p(f64::INFINITY, 0.0), p(0.0, 1.0)]
        )
        .is_err());
    }

    fn ring() -> impl Strategy<Value = Vec<Point2<f64>>> {
        (3usize..16, any::<u64>(), 0.2..5.0f64).prop_map(|(n, seed, sx)| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * (k as f64 + rng.gen_range(0.1..0.9)) / n as f64;
                    p(sx * t.cos() + 0.3, t.sin() - 1.7)
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn fused_reflection_matches_composition(ring in ring()) {
            let poly = ConvexPolygon::new(ring).unwrap();
            let g = to_voronoi(&poly).unwrap();
            for ((q_i, q_j), outer) in poly.edges().zip(g.outer()) {
                let e = edge_coefficients(q_i, q_j, &tol()).unwrap();
                let composed = foot_of_perpendicular(g.inner(), &e) * 2.0 - g.inner();
                prop_assert!((composed.x - outer.x).abs() <= 1e-12 * (1.0 + outer.x.abs()));
                prop_assert!((composed.y - outer.y).abs() <= 1e-12 * (1.0 + outer.y.abs()));
            }
        }

        #[test]
        fn rigid_motion_equivariance(ring in ring(), theta in 0.0..std::f64::consts::TAU, tx in -10.0..10.0f64, ty in -10.0..10.0f64) {
            let (s, c) = theta.sin_cos();
            let m = |v: Point2<f64>| p(c * v.x - s * v.y + tx, s * v.x + c * v.y + ty);
            let poly = ConvexPolygon::new(ring.clone()).unwrap();
            let moved = ConvexPolygon::new(ring.into_iter().map(m).collect()).unwrap();
            let a = to_voronoi(&poly).unwrap();
            let b = to_voronoi(&moved).unwrap();
            let close = |u: Point2<f64>, v: Point2<f64>| u.distance(v) <= 1e-9;
            prop_assert!(close(m(a.inner()), b.inner()));
            for (u, v) in a.outer().iter().zip(b.outer()) {
                prop_assert!(close(m(*u), *v));
            }
        }
    }
}
