//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type the library computes in.
///
/// Implemented for `f32` and `f64`. Published tolerances (1e-13 series
/// cut-off, 1e-8 MeV eigenvalues) are only reachable in `f64`; with `f32`
/// the defaults degrade to a few multiples of machine epsilon.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts a count into `T`.
#[inline]
pub(crate) fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// `max(x, k·eps)`: a requested tolerance floored at what `T` can resolve.
#[inline]
pub(crate) fn floor_tol<T: Real>(x: f64, k: f64) -> T {
    let x = lit::<T>(x);
    let floor = lit::<T>(k) * T::epsilon();
    if x > floor {
        x
    } else {
        floor
    }
}

/// Numerically stable logistic `1/(1+e^t)` together with its complement
/// `e^t/(1+e^t)`.
#[inline]
pub(crate) fn logistic_pair<T: Real>(t: T) -> (T, T) {
    if t > T::zero() {
        let e = (-t).exp();
        let d = T::one() + e;
        (e / d, T::one() / d)
    } else {
        let e = t.exp();
        let d = T::one() + e;
        (T::one() / d, e / d)
    }
}

/// `ln(1+e^t)` without overflow.
#[inline]
pub(crate) fn softplus<T: Real>(t: T) -> T {
    if t > T::zero() {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_pair_sums_to_one() {
        for &t in &[-800.0, -30.0, -1.0, 0.0, 0.5, 40.0, 900.0] {
            let (l, c) = logistic_pair::<f64>(t);
            assert!(l.is_finite() && c.is_finite());
            assert!((l + c - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn softplus_limits() {
        assert!((softplus(0.0_f64) - 2.0_f64.ln()).abs() < 1e-15);
        assert!((softplus(1000.0_f64) - 1000.0).abs() < 1e-12);
        assert!(softplus(-1000.0_f64) >= 0.0);
    }

    #[test]
    fn tolerance_floor() {
        assert_eq!(floor_tol::<f64>(1e-13, 8.0), 1e-13);
        let t: f32 = floor_tol(1e-13, 8.0);
        assert!(t > 1e-7);
    }
}
