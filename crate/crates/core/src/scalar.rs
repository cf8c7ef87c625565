//! Scalar abstraction for the numeric core.
//!
//! Everything numeric in this crate (masses, opinion probabilities, influence
//! values) is generic over [`Real`], a floating-point scalar. `f64` is the
//! default used by the CLI and the crate-root aliases; `f32` works too but
//! carries looser tolerances.

use std::fmt;
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the core math is generic over.
///
/// The associated constants pin the numeric contracts of the crate: how close
/// a mass or probability vector must be to summing to one, when a residual
/// mass is considered noise, and when Dempster conflict counts as total.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance for "sums to one" validation of masses and probabilities.
    const SUM_TOL: Self;
    /// Masses below this are dropped after normalization.
    const MASS_FLOOR: Self;
    /// Conflict within this distance of 1 is treated as total conflict.
    const CONFLICT_FLOOR: Self;
}

impl Real for f64 {
    const SUM_TOL: f64 = 1e-9;
    const MASS_FLOOR: f64 = 1e-12;
    const CONFLICT_FLOOR: f64 = 1e-12;
}

impl Real for f32 {
    const SUM_TOL: f32 = 1e-4;
    const MASS_FLOOR: f32 = 1e-6;
    const CONFLICT_FLOOR: f32 = 1e-6;
}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in scalar type")
}

/// Rounds to twelve significant decimal digits.
///
/// Exported reals are quantized with this before serialization so that JSON
/// output is byte-stable across runs and across an export/import round trip
/// (twelve digits survive a decimal → binary → decimal cycle exactly).
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - magnitude);
    (x * factor).round() / factor
}
