//! Scalar abstraction for the numeric kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, SubAssign};

/// Floating-point scalar used for weights, scores, and probabilities.
///
/// Everything downstream (push, oracles, bound evaluators) is generic over
/// this trait; `f64` is the default choice and the one the stock tolerances
/// assume.
pub trait Float:
    num_traits::Float
    + num_traits::FromPrimitive
    + AddAssign
    + SubAssign
    + Sum
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Lossy cast from `f64`, for constants and thresholds.
    fn cast(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any Float scalar")
    }

    /// Lossy cast to `f64`, for reporting and histogram bucketing.
    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("Float scalar converts to f64")
    }
}

impl Float for f32 {}
impl Float for f64 {}
