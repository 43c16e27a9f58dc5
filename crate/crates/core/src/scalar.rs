//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point coordinate type: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant (tolerances, literals) into this scalar.
    #[inline]
    fn lit(value: f64) -> Self {
        // Every finite f64 converts to f32/f64 (possibly rounding).
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
