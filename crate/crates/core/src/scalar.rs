//! Floating point abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used by every estimator in the crate.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; used for constants and random draws.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }

    /// Relative tolerance below which pivots are treated as zero.
    fn rank_tolerance() -> Self;
}

impl Scalar for f32 {
    fn rank_tolerance() -> Self {
        1e-6
    }
}

impl Scalar for f64 {
    fn rank_tolerance() -> Self {
        1e-12
    }
}
