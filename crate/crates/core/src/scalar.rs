//! Scalar abstraction for the numerical core.
//!
//! Everything in this crate is generic over a floating point type. The
//! default precision for the CLI and the verification suite is `f64`;
//! `f32` is supported for callers that trade accuracy for footprint.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point scalar: `f32` or `f64`.
///
/// Bundles the `num-traits` bounds used throughout the crate plus
/// `rustfft::FftNum` so circulant fields can be transformed without
/// extra bounds at call sites.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + rustfft::FftNum
    + 'static
{
    /// Lossy conversion from an `f64` literal or intermediate.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal conversion")
    }

    /// Conversion from a lattice index or count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}
