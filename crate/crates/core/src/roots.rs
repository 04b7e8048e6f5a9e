//! Bracketing helpers shared by the eigenvalue and critical-parameter
//! searches.

use crate::error::Result;
use crate::scalar::{lit, Real};

const MAX_BISECTIONS: usize = 400;

/// Bisection on `[lo, hi]`, where `f_lo` and `f_hi` have opposite signs (or
/// one of them is zero). Stops once the bracket is narrower than `tol`.
pub fn bisect<T, F>(mut f: F, mut lo: T, mut hi: T, mut f_lo: T, f_hi: T, tol: T) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    debug_assert!(f_lo.signum() != f_hi.signum(), "bisect needs a sign change");
    let half = lit::<T>(0.5);
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) * half;
        if (hi - lo).abs() <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid)?;
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * half)
}

/// A grid cell `[lo, hi]` over which a function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub f_lo: T,
    pub f_hi: T,
}

/// Sign changes of tabulated values `(x_i, f_i)`. An exact zero at a grid
/// point is attributed to the cell on its left.
pub fn sign_changes<T: Real>(xs: &[T], fs: &[T]) -> Vec<Bracket<T>> {
    let mut out = Vec::new();
    for i in 1..xs.len() {
        let (f0, f1) = (fs[i - 1], fs[i]);
        let zero_here = f1 == T::zero();
        let zero_before_counted = f0 == T::zero();
        if zero_before_counted {
            continue;
        }
        if zero_here || f0.signum() != f1.signum() {
            out.push(Bracket {
                lo: xs[i - 1],
                hi: xs[i],
                f_lo: f0,
                f_hi: f1,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisects_cosine() {
        let r = bisect(|x: f64| Ok(x.cos()), 1.0, 2.0, 1f64.cos(), 2f64.cos(), 1e-14).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn sign_changes_of_sine() {
        let xs: Vec<f64> = (0..=1000).map(|i| 0.05 + i as f64 * 0.02).collect();
        let fs: Vec<f64> = xs.iter().map(|x| x.sin()).collect();
        let b = sign_changes(&xs, &fs);
        assert_eq!(b.len(), 6);
        for (k, br) in b.iter().enumerate() {
            let root = (k + 1) as f64 * std::f64::consts::PI;
            assert!(br.lo <= root && root <= br.hi);
        }
    }

    #[test]
    fn exact_zero_on_grid_counted_once() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let fs = [1.0, 0.0, -1.0, -2.0];
        let b = sign_changes(&xs, &fs);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].hi, 1.0);
    }
}
