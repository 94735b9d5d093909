//! Scalar abstraction: every numeric routine in this crate is generic over
//! [`Float`], which is implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Floating-point scalar used throughout the crate.
///
/// The supertraits are exactly what the DSP and flow-matching code needs:
/// `num_traits::Float` for the math, `FromPrimitive`/`Signed` so the type
/// also satisfies `rustfft::FftNum`, and assignment ops for in-place loops.
pub trait Float:
    num_traits::Float
    + FromPrimitive
    + ToPrimitive
    + Signed
    + NumAssign
    + Sum
    + Copy
    + Send
    + Sync
    + Debug
    + Display
    + 'static
{
    /// Lift an `f64` literal into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Lift a count into the scalar type.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in float")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }

    fn as_f32(self) -> f32 {
        self.to_f32().expect("float converts to f32")
    }

    const PI: Self;
}

impl Float for f32 {
    const PI: Self = std::f32::consts::PI;
}

impl Float for f64 {
    const PI: Self = std::f64::consts::PI;
}
