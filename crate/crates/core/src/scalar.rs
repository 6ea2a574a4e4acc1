//! Scalar abstraction shared by the fuzzy engine and the fear appraisal.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real number type the inference and appraisal code is generic over.
///
/// Implemented for `f32` and `f64`. Anything satisfying the bounds picks it
/// up through the blanket impl.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent a finite `f64`, which never happens for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar literal out of range")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }

    /// True when `self` lies in the closed unit interval.
    #[inline]
    fn in_unit(self) -> bool {
        self >= Self::zero() && self <= Self::one()
    }

    #[inline]
    fn clamp_unit(self) -> Self {
        self.max(Self::zero()).min(Self::one())
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        assert_eq!(f32::lit(0.25), 0.25f32);
        assert_eq!(f64::lit(0.1), 0.1f64);
        assert_eq!(0.5f32.as_f64(), 0.5);
    }

    #[test]
    fn unit_helpers() {
        assert!(0.0f64.in_unit());
        assert!(1.0f64.in_unit());
        assert!(!(-1e-12f64).in_unit());
        assert!(!f64::NAN.in_unit());
        assert_eq!(1.7f64.clamp_unit(), 1.0);
        assert_eq!((-0.2f32).clamp_unit(), 0.0);
    }
}
