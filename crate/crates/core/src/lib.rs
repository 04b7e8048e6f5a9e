//! Bound states, critical half-bound states and semiclassical level counts
//! of the one-dimensional symmetric Fermi (Woods-Saxon) well.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar for the common case.

// `!(x > 0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hbs;
pub mod oracle;
pub mod quad;
pub mod roots;
pub mod scalar;
pub mod semiclassical;
pub mod special;
pub mod spectrum;
pub mod wavefunction;
pub mod well;

pub use error::{Error, Result};
pub use hbs::{solve_beta_n, verify_criticality, CriticalityReport, HbsSolution};
pub use oracle::{count_via_zero_energy_nodes, oracle_spectrum, IntegratorConfig, OracleLevel};
pub use scalar::Real;
pub use semiclassical::{g_closed_form, g_quadrature, wkb_spectrum, ActionMethod, WkbLevel};
pub use special::ComplexValue;
pub use spectrum::{count_states, solve_spectrum, CountRule, EigenState, SpectrumReport};
pub use wavefunction::{Parity, WaveSample};
pub use well::{DimensionlessWell, WellParams, DEFAULT_KAPPA2};

pub type Well = WellParams<f64>;
pub type Dimensionless = DimensionlessWell<f64>;
pub type Spectrum = SpectrumReport<f64>;
pub type State = EigenState<f64>;
pub type Hbs = HbsSolution<f64>;
pub type Sample = WaveSample<f64>;

pub type Well32 = WellParams<f32>;
pub type Dimensionless32 = DimensionlessWell<f32>;
pub type Spectrum32 = SpectrumReport<f32>;
