//! Exact bound-state and zero-energy solutions of the Fermi well.
//!
//! With `y = 1/(1+e^{(|x|-a)/b})` the Schrödinger equation becomes Gauss's
//! hypergeometric equation and the solution decaying at infinity is
//!
//! ```text
//! psi(x, E) = y^nu (1-y)^mu 2F1(nu+mu, nu+mu+1; 2nu+1; y)
//! nu = b sqrt(-kappa2 E),   mu = i b sqrt(kappa2 (E + U0))
//! ```
//!
//! normalised so that `psi ~ e^{nu a/b} e^{-k|x|}` far out. The bracket is
//! real because the two factors carrying `mu` are complex conjugates after an
//! Euler transformation. At `E = 0` (`nu = 0`, `mu = i beta`) it is the
//! half-bound-state candidate, tending to 1 at infinity.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, logistic_pair, softplus, Real};
use crate::special::{derivative_with_complement, hyp2f1_series, hyp2f1_with_complement, Hyp2F1Request};
use crate::well::{DimensionlessWell, WellParams};

/// Symmetry class of a state of the symmetric well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `psi'(0) = 0`
    Even,
    /// `psi(0) = 0`
    Odd,
}

impl Parity {
    /// Parity of the state with `n` nodes.
    pub fn of_index(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Exponents of the hypergeometric substitution at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams<T> {
    /// `k b`, decay rate outside the well in units of `1/b`.
    pub nu: T,
    /// `i k' b`, purely imaginary.
    pub mu: Complex<T>,
    /// Value of `y` at the origin, `1/(1+e^{-alpha})`.
    pub y0: T,
}

/// Wavefunction value and slope at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample<T> {
    pub x: T,
    pub psi: T,
    pub dpsi_dx: T,
}

/// `y(x) = 1/(1+e^{(|x|-a)/b})`.
pub fn map_y<T: Real>(p: &WellParams<T>, x: T) -> T {
    p.profile(x).0
}

/// `nu` and `mu` at energy `e` (MeV). The energy must lie in `(-v0, 0)`.
pub fn shape_params<T: Real>(p: &WellParams<T>, e: T) -> Result<ShapeParams<T>> {
    check_window(p, e)?;
    Ok(shape_unchecked(p, e))
}

fn shape_unchecked<T: Real>(p: &WellParams<T>, e: T) -> ShapeParams<T> {
    let k2 = p.kappa2();
    let nu = p.b() * (-k2 * e).max(T::zero()).sqrt();
    let mu = Complex::new(T::zero(), p.b() * (k2 * (e + p.u0())).sqrt());
    ShapeParams {
        nu,
        mu,
        y0: map_y(p, T::zero()),
    }
}

fn check_window<T: Real>(p: &WellParams<T>, e: T) -> Result<()> {
    if e.is_finite() && e > -p.v0() && e < T::zero() {
        Ok(())
    } else {
        Err(Error::EnergyOutOfWindow {
            energy: e.to_f64().unwrap_or(f64::NAN),
            lower: -p.v0().to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Complex bracket and its derivative in `xi = |x|/b`, for `xi >= 0`.
fn bracket<T: Real>(nu: T, mu: Complex<T>, alpha: T, xi: T) -> Result<(Complex<T>, Complex<T>)> {
    let t = xi - alpha;
    let (y, s) = logistic_pair(t);
    let ln_y = -softplus(t);
    let ln_s = -softplus(-t);
    let one = Complex::new(T::one(), T::zero());
    let a = mu + nu;
    let req = Hyp2F1Request::new(a, a + one, Complex::new(nu + nu + T::one(), T::zero()), y);
    let f = hyp2f1_with_complement(&req, s)?;
    let df = derivative_with_complement(&req, s)?;
    let pref = (mu * ln_s + nu * ln_y).exp();
    let value = pref * f;
    // dy/dxi = -y s
    let slope = -pref * ((mu * (-y) + nu * s) * f + df * (y * s));
    Ok((value, slope))
}

/// Complex bracket at `x`; its imaginary part is round-off.
pub fn psi_complex<T: Real>(p: &WellParams<T>, e: T, x: T) -> Result<Complex<T>> {
    let sp = shape_params(p, e)?;
    Ok(bracket(sp.nu, sp.mu, p.alpha(), x.abs() / p.b())?.0)
}

/// Bound-state solution at energy `e`, continued evenly through `|x|`.
/// `dpsi_dx` at `x = 0` is the one-sided limit from the right.
pub fn psi<T: Real>(p: &WellParams<T>, e: T, x: T) -> Result<WaveSample<T>> {
    check_window(p, e)?;
    psi_at(p, e, x)
}

/// `psi` without the window check; `e = 0` gives the zero-energy solution.
pub(crate) fn psi_at<T: Real>(p: &WellParams<T>, e: T, x: T) -> Result<WaveSample<T>> {
    let sp = shape_unchecked(p, e);
    let (v, d) = bracket(sp.nu, sp.mu, p.alpha(), x.abs() / p.b())?;
    let sign = if x < T::zero() { -T::one() } else { T::one() };
    Ok(WaveSample {
        x,
        psi: v.re,
        dpsi_dx: sign * d.re / p.b(),
    })
}

/// Zero-energy solution `(1-y)^{i beta} 2F1(i beta, i beta + 1; 1; y)` in
/// units of `b`: `x` and the returned slope are both per `b`.
pub fn psi_hbs<T: Real>(d: &DimensionlessWell<T>, x_over_b: T) -> Result<WaveSample<T>> {
    let mu = Complex::new(T::zero(), d.beta());
    let (v, s) = bracket(T::zero(), mu, d.alpha(), x_over_b.abs())?;
    let sign = if x_over_b < T::zero() { -T::one() } else { T::one() };
    Ok(WaveSample {
        x: x_over_b,
        psi: v.re,
        dpsi_dx: sign * s.re,
    })
}

/// Second closed form of the zero-energy solution,
/// `2F1(i beta, -i beta; 1; y/(y-1))`, summed directly. Only defined where
/// `|y/(y-1)| < 1`, i.e. outside the well edge `|x| > a`.
pub fn psi_hbs_second_form<T: Real>(d: &DimensionlessWell<T>, x_over_b: T) -> Result<T> {
    let t = x_over_b.abs() - d.alpha();
    if t <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "x_over_b",
            reason: "second form converges only beyond the well edge".into(),
        });
    }
    let w = -(-t).exp();
    let ib = Complex::new(T::zero(), d.beta());
    let req = Hyp2F1Request::new(ib, -ib, Complex::new(T::one(), T::zero()), w).with_max_terms(1_000_000);
    Ok(hyp2f1_series(&req)?.re)
}

/// Strict sign changes along ordered samples, ignoring values below
/// `1e-12 max|psi|`.
pub fn count_nodes<T: Real>(samples: &[WaveSample<T>]) -> usize {
    let peak = samples.iter().fold(T::zero(), |m, s| m.max(s.psi.abs()));
    let floor = peak * lit::<T>(1e-12);
    let mut last_sign: Option<bool> = None;
    let mut nodes = 0;
    for s in samples {
        if s.psi.abs() <= floor {
            continue;
        }
        let positive = s.psi > T::zero();
        if let Some(prev) = last_sign {
            if prev != positive {
                nodes += 1;
            }
        }
        last_sign = Some(positive);
    }
    nodes
}

/// Builds full-line samples from samples on `x >= 0` (ascending) using the
/// parity of the state. For odd states the point at the origin is exactly 0.
pub fn reflect<T: Real>(half: &[WaveSample<T>], parity: Parity) -> Vec<WaveSample<T>> {
    let mut out = Vec::with_capacity(2 * half.len());
    for s in half.iter().rev().filter(|s| s.x > T::zero()) {
        out.push(match parity {
            Parity::Even => WaveSample {
                x: -s.x,
                psi: s.psi,
                dpsi_dx: -s.dpsi_dx,
            },
            Parity::Odd => WaveSample {
                x: -s.x,
                psi: -s.psi,
                dpsi_dx: s.dpsi_dx,
            },
        });
    }
    for s in half {
        if s.x == T::zero() && parity == Parity::Odd {
            out.push(WaveSample { psi: T::zero(), ..*s });
        } else {
            out.push(*s);
        }
    }
    out
}

/// Samples `f` at `points` equally spaced positions on `[0, x_end]`.
pub fn sample_half_line<T, F>(mut f: F, x_end: T, points: usize) -> Result<Vec<WaveSample<T>>>
where
    T: Real,
    F: FnMut(T) -> Result<WaveSample<T>>,
{
    let n = points.max(2);
    let step = x_end / from_usize::<T>(n - 1);
    (0..n).map(|i| f(step * from_usize::<T>(i))).collect()
}

/// Full-line samples of the bound state at `e` with the given parity.
pub fn state_samples<T: Real>(
    p: &WellParams<T>,
    e: T,
    parity: Parity,
    x_end: T,
    half_points: usize,
) -> Result<Vec<WaveSample<T>>> {
    let half = sample_half_line(|x| psi(p, e, x), x_end, half_points)?;
    Ok(reflect(&half, parity))
}

/// Outer classical turning point at energy `e`, where `V(x2) = e`.
pub fn turning_point<T: Real>(p: &WellParams<T>, e: T) -> T {
    let ratio = -p.u0() / e - T::one();
    (p.a() + p.b() * ratio.ln()).max(T::zero())
}

/// Distance beyond which `|psi|` has fallen below `1e-10` of its peak
/// (estimated from the exponential tail), never less than `a + 12 b`.
pub fn tail_extent<T: Real>(p: &WellParams<T>, e: T) -> T {
    let k = (-p.kappa2() * e).sqrt();
    let base = p.a() + lit::<T>(12.0) * p.b();
    let tail = turning_point(p, e) + lit::<T>(23.1) / k;
    base.max(tail)
}

/// `sqrt(∫ psi^2 dx)` by the trapezoid rule over the samples.
pub fn l2_norm<T: Real>(samples: &[WaveSample<T>]) -> T {
    let half = lit::<T>(0.5);
    samples
        .windows(2)
        .fold(T::zero(), |acc, w| {
            acc + (w[1].x - w[0].x) * (w[0].psi * w[0].psi + w[1].psi * w[1].psi) * half
        })
        .sqrt()
}
