//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, lo: T, hi: T) -> Segment<T> {
    let half = lit::<T>(0.5);
    let center = (lo + hi) * half;
    let radius = (hi - lo) * half;
    let fc = f(center);
    let mut gauss = fc * lit::<T>(WG[3]);
    let mut kron = fc * lit::<T>(WGK[7]);
    for j in 0..7 {
        let dx = radius * lit::<T>(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kron += pair * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            gauss += pair * lit::<T>(WG[j / 2]);
        }
    }
    Segment {
        lo,
        hi,
        value: kron * radius,
        error: ((kron - gauss) * radius).abs(),
    }
}

/// Integrates `f` over each consecutive pair of `breaks`, bisecting the
/// segment with the largest error estimate until the summed estimate drops
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T, F>(mut f: F, breaks: &[T], abs_tol: T, rel_tol: T, max_segments: usize) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let mut segments: Vec<Segment<T>> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| kronrod(&mut f, w[0], w[1]))
        .collect();
    let half = lit::<T>(0.5);
    loop {
        let total: T = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let error: T = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        let target = abs_tol.max(rel_tol * total.abs());
        if error <= target {
            return Ok(total);
        }
        if segments.len() >= max_segments {
            return Err(Error::QuadratureFailure {
                error: error.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (i, s)| {
                if s.error > best.1 {
                    (i, s.error)
                } else {
                    best
                }
            });
        let s = segments.swap_remove(worst);
        let mid = (s.lo + s.hi) * half;
        if mid <= s.lo || mid >= s.hi {
            // interval exhausted at this precision
            return Err(Error::QuadratureFailure {
                error: error.to_f64().unwrap_or(f64::NAN),
            });
        }
        segments.push(kronrod(&mut f, s.lo, mid));
        segments.push(kronrod(&mut f, mid, s.hi));
    }
}
