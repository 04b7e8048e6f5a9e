//! Physical and dimensionless parametrisation of the symmetric Fermi well
//!
//! ```text
//! V(x) = -U0 / (1 + exp((|x| - a)/b)),   U0 = V0 (1 + exp(-a/b))
//! ```
//!
//! so that `V(0) = -V0` exactly. Positions are in fm, energies in MeV and the
//! unit constant `kappa2 = 2m/hbar^2` in MeV^-1 fm^-2.

use crate::error::{Error, Result};
use crate::scalar::{lit, logistic_pair, Real};

/// `2m/hbar^2` for a nucleon with `mc^2 = 940 MeV`, `hbar c = 197 MeV fm`.
pub const DEFAULT_KAPPA2: f64 = 0.048;

fn check_positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and > 0, got {v}"),
        })
    }
}

/// A symmetric Fermi well in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParams<T> {
    v0: T,
    a: T,
    b: T,
    kappa2: T,
}

impl<T: Real> WellParams<T> {
    /// Well with depth `v0` (MeV), half-width `a` and diffuseness `b` (fm),
    /// using the default nucleon unit constant.
    pub fn new(v0: T, a: T, b: T) -> Result<Self> {
        Self::with_kappa2(v0, a, b, lit(DEFAULT_KAPPA2))
    }

    pub fn with_kappa2(v0: T, a: T, b: T, kappa2: T) -> Result<Self> {
        check_positive("v0", v0)?;
        check_positive("a", a)?;
        check_positive("b", b)?;
        check_positive("kappa2", kappa2)?;
        Ok(Self { v0, a, b, kappa2 })
    }

    pub fn v0(&self) -> T {
        self.v0
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn kappa2(&self) -> T {
        self.kappa2
    }

    /// `a/b`.
    pub fn alpha(&self) -> T {
        self.a / self.b
    }

    /// Strength `U0 = V0 (1 + e^{-a/b})` multiplying the logistic profile.
    pub fn u0(&self) -> T {
        self.v0 * (T::one() + (-self.alpha()).exp())
    }

    /// Logistic profile `1/(1+e^{(|x|-a)/b})` and its complement.
    pub(crate) fn profile(&self, x: T) -> (T, T) {
        logistic_pair((x.abs() - self.a) / self.b)
    }

    /// `V(x)` in MeV.
    pub fn potential(&self, x: T) -> T {
        -self.u0() * self.profile(x).0
    }

    pub fn to_dimensionless(&self) -> DimensionlessWell<T> {
        DimensionlessWell {
            alpha: self.alpha(),
            beta: self.b * (self.kappa2 * self.u0()).sqrt(),
        }
    }
}

/// Dimensionless pair `(alpha, beta) = (a/b, b sqrt(kappa2 U0))`.
///
/// The bound-state problem in units of `b` depends on these two numbers only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessWell<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> DimensionlessWell<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Physical well with diffuseness `b` and unit constant `kappa2`.
    pub fn to_physical(&self, b: T, kappa2: T) -> Result<WellParams<T>> {
        check_positive("b", b)?;
        check_positive("kappa2", kappa2)?;
        let u0 = self.beta * self.beta / (kappa2 * b * b);
        let v0 = u0 / (T::one() + (-self.alpha).exp());
        WellParams::with_kappa2(v0, self.alpha * b, b, kappa2)
    }
}
