//! Points, validated convex polygons, signed area and centroid.

use std::ops::{Add, Mul, Sub};

use crate::error::GeometryError;
use crate::scalar::Scalar;

/// A point (or vector) in the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// `det[self other]`, the z component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn squared_distance(self, other: Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        self.squared_distance(other).sqrt()
    }

    #[inline]
    pub fn midpoint(self, other: Self) -> Self {
        let half = T::lit(0.5);
        Self::new((self.x + other.x) * half, (self.y + other.y) * half)
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl<T: Scalar> From<(T, T)> for Point2<T> {
    fn from((x, y): (T, T)) -> Self {
        Self::new(x, y)
    }
}

impl<T: Scalar> From<[T; 2]> for Point2<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Self::new(x, y)
    }
}

impl<T: Scalar> From<Point2<T>> for [T; 2] {
    fn from(p: Point2<T>) -> Self {
        [p.x, p.y]
    }
}

/// Numeric thresholds used by validation and conversion.
///
/// Defaults: convexity cross products must exceed `1e-12`; an edge counts as
/// degenerate when `a² + b² <= 1e-24` (length `1e-12`); the inner generator
/// collides with an edge line when its distance to it is `<= 1e-12 * length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub convexity: T,
    pub edge_length_sq: T,
    pub collision: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            convexity: T::lit(1e-12),
            edge_length_sq: T::lit(1e-24),
            collision: T::lit(1e-12),
        }
    }
}

/// Whether validation had to reverse the vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// The input was already counter-clockwise.
    AsGiven,
    /// The input was clockwise and has been reversed.
    Reversed,
}

/// A strictly convex polygon with counter-clockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Validates `vertices` with default tolerances.
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self, GeometryError> {
        validate_polygon(vertices, &Tolerances::default()).map(|(poly, _)| poly)
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Iterates edges `(v[k], v[k+1])`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        cyclic_pairs(&self.vertices)
    }

    pub fn signed_area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2<T> {
        centroid(&self.vertices)
    }

    /// Axis-aligned bounding box as `(min, max)`.
    pub fn bounding_box(&self) -> (Point2<T>, Point2<T>) {
        let first = self.vertices[0];
        self.vertices[1..]
            .iter()
            .fold((first, first), |(lo, hi), v| {
                (
                    Point2::new(lo.x.min(v.x), lo.y.min(v.y)),
                    Point2::new(hi.x.max(v.x), hi.y.max(v.y)),
                )
            })
    }

    pub fn into_vertices(self) -> Vec<Point2<T>> {
        self.vertices
    }
}

fn cyclic_pairs<T: Copy>(vertices: &[T]) -> impl Iterator<Item = (T, T)> + '_ {
    let n = vertices.len();
    (0..n).map(move |i| (vertices[i], vertices[(i + 1) % n]))
}

/// Checks the convex polygon invariants and normalizes to counter-clockwise
/// order.
pub fn validate_polygon<T: Scalar>(
    mut vertices: Vec<Point2<T>>,
    tol: &Tolerances<T>,
) -> Result<(ConvexPolygon<T>, Orientation), GeometryError> {
    if let Some(index) = vertices.iter().position(|v| !v.is_finite()) {
        return Err(GeometryError::NonFinite { index });
    }
    let n = vertices.len();
    if n < 3 {
        return Err(GeometryError::TooFewVertices { count: n });
    }
    for (index, (a, b)) in cyclic_pairs(&vertices).enumerate() {
        if a == b {
            return Err(GeometryError::DegenerateEdge { index });
        }
    }

    let area = signed_area(&vertices);
    if area == T::zero() {
        return Err(GeometryError::NotConvex { index: 0 });
    }
    let orientation = if area < T::zero() {
        vertices.reverse();
        Orientation::Reversed
    } else {
        Orientation::AsGiven
    };

    // Every turn must be strictly left, and the turns must add up to a single
    // revolution (rules out star polygons, whose turns are all left too).
    let mut turning = T::zero();
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n];
        let cur = vertices[i];
        let next = vertices[(i + 1) % n];
        let incoming = cur - prev;
        let outgoing = next - cur;
        let cross = incoming.cross(outgoing);
        if cross <= tol.convexity {
            return Err(GeometryError::NotConvex { index: i });
        }
        turning = turning + cross.atan2(incoming.dot(outgoing));
    }
    if turning > T::lit(3.0) * T::PI() {
        return Err(GeometryError::NotConvex { index: 0 });
    }

    Ok((ConvexPolygon { vertices }, orientation))
}

/// Shoelace area over an arbitrary closed vertex ring; positive for
/// counter-clockwise order.
///
/// Each partial area is `det[v' v]` with `v'` the previous vertex.
pub fn signed_area<T: Scalar>(vertices: &[Point2<T>]) -> T {
    let n = vertices.len();
    let sum = (0..n).fold(T::zero(), |acc, i| {
        let prev = vertices[(i + n - 1) % n];
        let cur = vertices[i];
        acc + (prev.x * cur.y - cur.x * prev.y)
    });
    sum * T::lit(0.5)
}

/// Area-weighted centroid of a closed vertex ring with nonzero area.
///
/// The shoelace sums are taken relative to the first vertex, which keeps the
/// partial determinants small for polygons far from the origin.
pub fn centroid<T: Scalar>(vertices: &[Point2<T>]) -> Point2<T> {
    let n = vertices.len();
    let origin = vertices[0];
    let mut area2 = T::zero();
    let mut acc = Point2::new(T::zero(), T::zero());
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n] - origin;
        let cur = vertices[i] - origin;
        let partial = prev.x * cur.y - cur.x * prev.y;
        area2 = area2 + partial;
        acc = acc + (cur + prev) * partial;
    }
    // 6A = 3 * (2A)
    let scale = T::one() / (T::lit(3.0) * area2);
    origin + acc * scale
}
