//! Scalar abstraction shared by the geometric and analytic code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::distr::uniform::SampleUniform;

/// Floating point type the simulation is generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + SampleUniform
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index into the scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative tolerance reachable by adaptive quadrature in this precision.
    fn quadrature_floor() -> Self;
}

impl Scalar for f32 {
    fn quadrature_floor() -> Self {
        1e-5
    }
}

impl Scalar for f64 {
    fn quadrature_floor() -> Self {
        1e-13
    }
}
