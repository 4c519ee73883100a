//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the kernels are generic over (`f32` or `f64`).
///
/// Accuracy contracts throughout the crate are stated for `f64`; `f32`
/// instantiations run the same algorithms at single precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal (table coefficient, tolerance) into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion used for error payloads and reports.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Converts a term index or count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    // r in [-1, 1]
    let mut r = x - two * (x / two).round();
    if r > half {
        r = T::one() - r;
    } else if r < -half {
        r = -T::one() - r;
    }
    if r == T::zero() {
        return T::zero();
    }
    (T::PI() * r).sin()
}

/// `cos(πx)` with exact zeros at the half-integers.
pub fn cos_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let r = (x - two * (x / two).round()).abs();
    sin_pi(T::lit(0.5) - r)
}

/// Distance from `x` to the nearest nonpositive integer (`+inf` for `x > 0.5`).
pub(crate) fn dist_to_nonpositive_integer<T: Real>(x: T) -> T {
    if x > T::lit(0.5) {
        return T::infinity();
    }
    let nearest = x.round().min(T::zero());
    (x - nearest).abs()
}
