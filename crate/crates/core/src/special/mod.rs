//! Complex log-gamma and the Gauss hypergeometric function for complex
//! parameters and real argument.

mod gamma;
mod hyp2f1;

pub use gamma::lgamma_complex;
pub(crate) use hyp2f1::{derivative_with_complement, hyp2f1_with_complement};
pub use hyp2f1::{hyp2f1, hyp2f1_connection, hyp2f1_dz, hyp2f1_series, Hyp2F1Request, Z_SWITCH};

/// Complex number used for hypergeometric parameters and intermediate values.
pub type ComplexValue<T> = num_complex::Complex<T>;
