use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln sin(w)` that stays finite for large `|Im w|`. The imaginary part is
/// only defined modulo `2 pi`.
fn ln_sin<T: Real>(w: Complex<T>) -> Complex<T> {
    let i = Complex::<T>::i();
    let half = lit::<T>(0.5);
    if w.im > T::zero() {
        // sin w = e^{-iw} (1 - e^{2iw}) i/2
        let tail: Complex<T> = (i * w * lit::<T>(2.0)).exp();
        -i * w + Complex::new(half.ln(), T::FRAC_PI_2()) + (Complex::new(T::one(), T::zero()) - tail).ln()
    } else if w.im < T::zero() {
        ln_sin(w.conj()).conj()
    } else {
        w.sin().ln()
    }
}

/// Log-gamma for complex argument.
///
/// Lanczos approximation (g = 7, nine terms) on `Re z >= 1/2` and the
/// reflection formula below it. The real part is `ln|Gamma(z)|`; the imaginary
/// part follows the continuous branch of the Stirling series and agrees with
/// `arg Gamma(z)` modulo `2 pi`, which is all `exp` ever sees.
pub fn lgamma_complex<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "z",
            reason: "non-finite argument".into(),
        });
    }
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re.to_f64().unwrap_or(f64::NAN)));
    }
    let half = lit::<T>(0.5);
    if z.re < half {
        let pi = T::PI();
        let reflected = lgamma_complex(Complex::<T>::new(T::one(), T::zero()) - z)?;
        return Ok(Complex::new(pi.ln(), T::zero()) - ln_sin(z * pi) - reflected);
    }
    let z = z - T::one();
    let mut x = Complex::new(lit::<T>(LANCZOS_COEF[0]), T::zero());
    for (k, &p) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += Complex::new(lit::<T>(p), T::zero()) / (z + crate::scalar::from_usize::<T>(k));
    }
    let t = z + lit::<T>(LANCZOS_G) + half;
    let half_ln_two_pi = half * (T::TAU()).ln();
    Ok((z + half) * t.ln() - t + x.ln() + half_ln_two_pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    /// Difference modulo 2 pi i.
    fn close_mod_2pi(a: C, b: C, tol: f64) -> bool {
        let d = a - b;
        let k = (d.im / std::f64::consts::TAU).round();
        (d.re.abs() <= tol * (1.0 + a.re.abs()))
            && ((d.im - k * std::f64::consts::TAU).abs() <= tol * (1.0 + a.im.abs()))
    }

    #[test]
    fn unit_argument() {
        let v = lgamma_complex(c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
        let v = lgamma_complex(c(2.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn half_argument() {
        let v = lgamma_complex(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.572_364_942_924_700_1).abs() < 1e-13);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0_f64;
        for n in 1..30 {
            let v = lgamma_complex(c(n as f64, 0.0)).unwrap();
            assert!((v.re - fact.ln()).abs() <= 1e-13 * fact.ln().abs().max(1.0), "n={n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn modulus_on_imaginary_line() {
        // |Gamma(1+i)|^2 = pi / sinh(pi)
        let v = lgamma_complex(c(1.0, 1.0)).unwrap();
        let expected = 0.5 * (std::f64::consts::PI / std::f64::consts::PI.sinh()).ln();
        assert!((v.re - expected).abs() < 1e-13);
    }

    #[test]
    fn negative_half_integer() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let v = lgamma_complex(c(-0.5, 0.0)).unwrap();
        assert!((v.re - (2.0 * std::f64::consts::PI.sqrt()).ln()).abs() < 1e-13);
        assert!(close_mod_2pi(c(0.0, v.im), c(0.0, std::f64::consts::PI), 1e-12));
    }

    #[test]
    fn poles_rejected() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(lgamma_complex(c(n, 0.0)), Err(Error::GammaPole(_))));
        }
        assert!(lgamma_complex(c(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn large_imaginary_part_is_finite() {
        let v = lgamma_complex(c(-30.0, 50.0)).unwrap();
        assert!(v.re.is_finite() && v.im.is_finite());
    }

    proptest! {
        #[test]
        fn modulus_identity(y in 0.01..50.0_f64) {
            // |Gamma(1+iy)|^2 = pi y / sinh(pi y)
            let v = lgamma_complex(c(1.0, y)).unwrap();
            let pi = std::f64::consts::PI;
            // ln sinh(pi y) without overflow
            let ln_sinh = pi * y + (-(-2.0 * pi * y).exp_m1()).ln() - std::f64::consts::LN_2;
            let expected = 0.5 * ((pi * y).ln() - ln_sinh);
            prop_assert!((v.re - expected).abs() <= 1e-12 * expected.abs().max(1.0));
        }

        #[test]
        fn recurrence(re in -50.0..50.0_f64, im in -50.0..50.0_f64) {
            prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
            let z = c(re, im);
            let lhs = lgamma_complex(z + 1.0).unwrap();
            let rhs = lgamma_complex(z).unwrap() + z.ln();
            prop_assert!(close_mod_2pi(lhs, rhs, 1e-12), "z={z} lhs={lhs} rhs={rhs}");
        }

        #[test]
        fn conjugate_symmetry(re in 0.5..50.0_f64, im in 0.0..50.0_f64) {
            let z = c(re, im);
            let a = lgamma_complex(z).unwrap();
            let b = lgamma_complex(z.conj()).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-13 * a.norm().max(1.0));
        }
    }
}
