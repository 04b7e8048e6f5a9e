//! Semiclassical level counting and WKB levels.
//!
//! The effective parameter `G = (1/pi) ∫ sqrt(-kappa2 V) dx` predicts the
//! number of bound states as `floor(G)` or `floor(G) + 1`. For the Fermi
//! well it has the closed form `G = (4/pi) beta asinh(e^{alpha/2})`, and the
//! action at energy `E`
//!
//! ```text
//! F(E) = (1/pi) ∫_{V(x) < E} sqrt(kappa2 (E - V(x))) dx
//! ```
//!
//! is also available in closed form. Both closed forms have a quadrature
//! counterpart here that serves as their check.

use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::roots::bisect;
use crate::scalar::{floor_tol, lit, logistic_pair, Real};
use crate::wavefunction::turning_point;
use crate::well::{DimensionlessWell, WellParams};

const QUAD_SEGMENTS: usize = 4000;

/// `asinh(e^z)` for `z >= 0` without overflow.
fn asinh_exp<T: Real>(z: T) -> T {
    z + (T::one() + (T::one() + (-(z + z)).exp()).sqrt()).ln()
}

/// `G(alpha, beta) = (4/pi) beta asinh(e^{alpha/2})`.
pub fn g_closed_form<T: Real>(d: &DimensionlessWell<T>) -> T {
    lit::<T>(4.0) / T::PI() * d.beta() * asinh_exp(d.alpha() * lit(0.5))
}

/// `G` by adaptive quadrature of `sqrt(-kappa2 V)` over the real line,
/// truncated where the integrand has fallen to `1e-12` of its peak.
pub fn g_quadrature<T: Real>(p: &WellParams<T>) -> Result<T> {
    let scale = (p.kappa2() * p.u0()).sqrt();
    let (a, b) = (p.a(), p.b());
    // sqrt(L) < 1e-12 once (x-a)/b > 2 ln 1e12
    let cut = a + b * lit::<T>(2.0 * 1e12_f64.ln());
    let breaks = [T::zero(), a, a + lit::<T>(8.0) * b, a + lit::<T>(24.0) * b, cut];
    let half = integrate(
        |x| scale * p.profile(x).0.sqrt(),
        &breaks,
        T::min_positive_value(),
        floor_tol(1e-12, 64.0),
        QUAD_SEGMENTS,
    )?;
    Ok(lit::<T>(2.0) * half / T::PI())
}

/// Square-well counterpart of a Fermi well with the same depth and
/// half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWellReference<T> {
    /// `W = a sqrt(kappa2 v0)`; an `n`-node zero-energy state exists when
    /// `W = n pi/2`.
    pub w: T,
    /// `G' = 2W/pi`; the square well holds `floor(G') + 1` states.
    pub g_prime: T,
}

impl<T: Real> SquareWellReference<T> {
    /// `W_n = n pi/2`.
    pub fn critical_w(n: usize) -> T {
        crate::scalar::from_usize::<T>(n) * T::FRAC_PI_2()
    }

    pub fn bound_states(&self) -> usize {
        self.g_prime.floor().to_usize().unwrap_or(0) + 1
    }
}

pub fn square_well_reference<T: Real>(v0: T, a: T, kappa2: T) -> SquareWellReference<T> {
    let w = a * (kappa2 * v0).sqrt();
    SquareWellReference {
        w,
        g_prime: lit::<T>(2.0) * w / T::PI(),
    }
}

/// How the action integral is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionMethod {
    /// Closed form in `omega = 1 + 2E/U0`.
    Closed,
    /// Adaptive quadrature between the turning points.
    Quadrature,
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

/// Action `F(E)`; `F = n + 1/2` quantises the WKB levels.
pub fn f_action<T: Real>(p: &WellParams<T>, e: T, method: ActionMethod) -> Result<T> {
    check_window(p, e)?;
    match method {
        ActionMethod::Closed => Ok(action_closed(p, e)),
        ActionMethod::Quadrature => action_quadrature(p, e),
    }
}

/// With `omega = 1 + 2E/U0` and `tau = tanh(alpha/2)`:
///
/// ```text
/// F = (2 sqrt2 beta/pi) [ sqrt(omega+1) atanh(sqrt((omega+tau)/(omega+1)))
///                        - sqrt(1-omega) atan(sqrt((omega+tau)/(1-omega))) ]
/// ```
///
/// Bound energies have `omega < 1`, where the `sqrt(omega-1) atanh` term is
/// the `atan` term above; the `atanh` argument stays below 1 since
/// `tau < 1`. Valid on `[-v0, 0]` inclusive.
fn action_closed<T: Real>(p: &WellParams<T>, e: T) -> T {
    let two = lit::<T>(2.0);
    let d = p.to_dimensionless();
    let omega = T::one() + two * e / p.u0();
    // 1 - tanh(alpha/2) = 2/(1+e^alpha), kept to full relative precision
    let (_, tail) = logistic_pair(-d.alpha());
    let one_minus_tau = two * tail;
    let tau = T::one() - one_minus_tau;
    let inner = (omega + tau).max(T::zero());
    let plus = omega + T::one();
    let minus = T::one() - omega;
    let r = (inner / plus).sqrt();
    // atanh(r) = ln(1+r) - ln(1-r^2)/2 with 1 - r^2 = (1 - tau)/(omega + 1)
    let atanh_r = r.ln_1p() - (one_minus_tau / plus).ln() / two;
    let atan_term = if minus > T::zero() {
        minus.sqrt() * (inner / minus).sqrt().atan()
    } else {
        T::zero()
    };
    two * T::SQRT_2() * d.beta() / T::PI() * (plus.sqrt() * atanh_r - atan_term)
}

fn action_quadrature<T: Real>(p: &WellParams<T>, e: T) -> Result<T> {
    let x2 = turning_point(p, e);
    if x2 <= T::zero() {
        return Ok(T::zero());
    }
    let k2 = p.kappa2();
    let u0 = p.u0();
    // x = x2 - u^2 removes the square-root zero at the turning point
    let integrand = |u: T| {
        let x = x2 - u * u;
        let kinetic = (e + u0 * p.profile(x).0).max(T::zero());
        lit::<T>(2.0) * u * (k2 * kinetic).sqrt()
    };
    let top = x2.sqrt();
    let mut breaks = vec![T::zero()];
    if x2 > p.a() {
        breaks.push((x2 - p.a()).sqrt());
    }
    breaks.push(top);
    // absolute floor on the scale of beta, so the near-bottom action (which
    // tends to 0) does not demand relative accuracy below rounding
    let abs_tol = T::epsilon() * p.b() * (k2 * u0).sqrt();
    let half = integrate(integrand, &breaks, abs_tol, floor_tol(1e-12, 64.0), QUAD_SEGMENTS)?;
    Ok(lit::<T>(2.0) * half / T::PI())
}

/// One semiclassical level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbLevel<T> {
    pub index: usize,
    /// MeV
    pub energy: T,
    /// `F(energy)`, equal to `index + 1/2` up to the root tolerance.
    pub f_value: T,
}

/// Roots of `F(E) = n + 1/2` for every `n` with `n + 1/2 < G`, by bisection
/// of the closed-form action to `1e-8` MeV.
pub fn wkb_spectrum<T: Real>(p: &WellParams<T>) -> Result<Vec<WkbLevel<T>>> {
    let g = g_closed_form(&p.to_dimensionless());
    let tol = floor_tol::<T>(1e-8, 16.0) * p.v0().max(T::one());
    let mut levels = Vec::new();
    let mut n = 0usize;
    loop {
        let target = crate::scalar::from_usize::<T>(n) + lit(0.5);
        if target >= g {
            break;
        }
        let f = |e: T| Ok(action_closed(p, e) - target);
        let energy = bisect(f, -p.v0(), T::zero(), -target, g - target, tol)?;
        levels.push(WkbLevel {
            index: n,
            energy,
            f_value: action_closed(p, energy),
        });
        n += 1;
    }
    Ok(levels)
}
