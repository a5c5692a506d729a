//! Scalar abstractions.
//!
//! [`Scalar`] is the minimum needed for area forms, frieze determinants and
//! the polygon recurrence. It is implemented for `f32`, `f64` and exact
//! rationals, so closure conditions can be checked without rounding.
//! [`Real`] adds transcendental functions and FFT support for everything
//! spectral.

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};
use rustfft::FftNum;

/// Ring-like scalar with an ordering.
pub trait Scalar:
    Copy + Debug + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    /// The absolute tolerance this type can honour for a nominal `eps`.
    ///
    /// Exact types return zero; `f32` clamps to a floor above its epsilon.
    fn tol(eps: f64) -> Self {
        Self::lit(eps)
    }

    fn abs_val(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    /// `false` only for NaN and infinities.
    fn is_finite_val(self) -> bool;
}

impl Scalar for f64 {
    fn is_finite_val(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn tol(eps: f64) -> Self {
        (eps as f32).max(64.0 * f32::EPSILON)
    }

    fn is_finite_val(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Ratio<i64> {
    fn tol(_eps: f64) -> Self {
        Ratio::from_integer(0)
    }

    fn is_finite_val(self) -> bool {
        true
    }
}

/// Floating point scalar usable by the spectral machinery.
pub trait Real: Scalar + Float + FloatConst + FftNum {}

impl Real for f32 {}
impl Real for f64 {}
