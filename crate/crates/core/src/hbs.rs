//! Critical strengths `beta_n` at which the well holds an `n`-node
//! zero-energy (half-bound) state.
//!
//! At fixed `alpha` the zero-energy solution is normalised to 1 at infinity;
//! it is a half-bound state when it is odd (`psi*(0) = 0`, `n` odd) or even
//! (`psi*'(0+) = 0`, `n` even). Both matching functions are scanned together
//! in one ascending sweep, so the `k`-th root met is `beta_k`.

use crate::error::{Error, Result};
use crate::roots::{bisect, sign_changes};
use crate::scalar::{from_usize, lit, Real};
use crate::semiclassical::g_closed_form;
use crate::spectrum::solve_spectrum;
use crate::spectrum::{DEFAULT_GRID_POINTS, DEFAULT_TOL_E};
use crate::wavefunction::{count_nodes, psi_hbs, reflect, sample_half_line, Parity};
use crate::well::{DimensionlessWell, DEFAULT_KAPPA2};

pub const SCAN_STEP: f64 = 0.01;
pub const DEFAULT_TOL_BETA: f64 = 1e-6;
pub const DEFAULT_DELTA: f64 = 1e-2;
/// Beyond `alpha + 30` (in units of `b`) the solution is flat to ~1e-13.
const NODE_REACH: f64 = 30.0;
const NODE_GRID_HALF_POINTS: usize = 4001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbsSolution<T> {
    pub alpha: T,
    pub n: usize,
    pub beta_n: T,
    /// `G(alpha, beta_n)`
    pub g_value: T,
}

/// `psi*(0)` for odd parity, `psi*'(0+)` (per `b`) for even.
pub fn hbs_matching<T: Real>(alpha: T, beta: T, parity: Parity) -> Result<T> {
    let s = psi_hbs(&DimensionlessWell::new(alpha, beta)?, T::zero())?;
    Ok(match parity {
        Parity::Odd => s.psi,
        Parity::Even => s.dpsi_dx,
    })
}

/// Nodes of the zero-energy solution on the full line, assembled by parity.
pub fn hbs_nodes<T: Real>(d: &DimensionlessWell<T>, parity: Parity) -> Result<usize> {
    let x_end = d.alpha() + lit::<T>(NODE_REACH);
    let half = sample_half_line(|x| psi_hbs(d, x), x_end, NODE_GRID_HALF_POINTS)?;
    Ok(count_nodes(&reflect(&half, parity)))
}

/// `beta_n` to within `tol_beta`, scanning `beta` in steps of 0.01 up to
/// `3n`.
pub fn solve_beta_n<T: Real>(alpha: T, n: usize, tol_beta: T) -> Result<HbsSolution<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "node count must be at least 1".into(),
        });
    }
    if !(tol_beta > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "tol_beta",
            reason: format!("must be > 0, got {tol_beta}"),
        });
    }
    let step = lit::<T>(SCAN_STEP);
    let ceiling = from_usize::<T>(3 * n);
    let tol = tol_beta.max(lit::<T>(4.0) * T::epsilon() * ceiling);
    let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };

    let mut found = 0;
    let mut prev = (step, hbs_pair(alpha, step)?);
    let mut i = 1;
    loop {
        i += 1;
        let beta = step * from_usize::<T>(i);
        if beta > ceiling {
            return Err(Error::NotFound {
                n,
                ceiling: ceiling.to_f64().unwrap_or(f64::NAN),
            });
        }
        let cur = (beta, hbs_pair(alpha, beta)?);
        let xs = [prev.0, cur.0];
        // both parities may change sign in one cell; order before labelling
        let mut hits: Vec<(T, Parity)> = Vec::new();
        for par in [Parity::Odd, Parity::Even] {
            let fs = [pick(prev.1, par), pick(cur.1, par)];
            for br in sign_changes(&xs, &fs) {
                let f = |b: T| hbs_matching(alpha, b, par);
                hits.push((bisect(f, br.lo, br.hi, br.f_lo, br.f_hi, tol)?, par));
            }
        }
        hits.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite roots"));
        for (beta_k, par) in hits {
            found += 1;
            let expected = if found % 2 == 1 { Parity::Odd } else { Parity::Even };
            if par != expected {
                return Err(Error::Labeling(format!(
                    "root {found} at beta = {beta_k} has {} parity",
                    par.as_str()
                )));
            }
            if found == n {
                let d = DimensionlessWell::new(alpha, beta_k)?;
                let nodes = hbs_nodes(&d, parity)?;
                if nodes != n {
                    return Err(Error::NodeMismatch {
                        expected: n,
                        found: nodes,
                    });
                }
                return Ok(HbsSolution {
                    alpha,
                    n,
                    beta_n: beta_k,
                    g_value: g_closed_form(&d),
                });
            }
        }
        prev = cur;
    }
}

fn hbs_pair<T: Real>(alpha: T, beta: T) -> Result<(T, T)> {
    let s = psi_hbs(&DimensionlessWell::new(alpha, beta)?, T::zero())?;
    Ok((s.psi, s.dpsi_dx))
}

fn pick<T: Copy>(pair: (T, T), parity: Parity) -> T {
    match parity {
        Parity::Odd => pair.0,
        Parity::Even => pair.1,
    }
}

/// Exact counts around a critical strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalityReport {
    pub n: usize,
    /// Count at `beta_n (1 - delta)`.
    pub below: usize,
    /// Count at `beta_n` itself. The zero-energy state may or may not be
    /// resolved as bound here; see `at_near_threshold`.
    pub at: usize,
    /// Count at `beta_n (1 + delta)`.
    pub above: usize,
    /// Whether any state found at `beta_n` sits within the threshold margin.
    pub at_near_threshold: bool,
}

impl CriticalityReport {
    /// `n` states just below the critical strength, `n + 1` just above.
    pub fn holds(&self) -> bool {
        self.below == self.n && self.above == self.n + 1
    }
}

/// Counts bound states of the wells `(alpha, beta_n (1 -/0/+ delta))`,
/// realised with `b = 1` fm and the default unit constant.
pub fn verify_criticality<T: Real>(alpha: T, beta_n: T, n: usize, delta: T) -> Result<CriticalityReport> {
    let count = |beta: T| {
        let p = DimensionlessWell::new(alpha, beta)?.to_physical(T::one(), lit(DEFAULT_KAPPA2))?;
        solve_spectrum(&p, DEFAULT_GRID_POINTS, lit(DEFAULT_TOL_E))
    };
    let below = count(beta_n * (T::one() - delta))?.count;
    let at = count(beta_n)?;
    let above = count(beta_n * (T::one() + delta))?.count;
    Ok(CriticalityReport {
        n,
        below,
        at: at.count,
        above,
        at_near_threshold: at.states.iter().any(|s| s.near_threshold),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(alpha: f64, n: usize) -> HbsSolution<f64> {
        solve_beta_n(alpha, n, DEFAULT_TOL_BETA).unwrap()
    }

    #[test]
    fn matching_vanishes_at_published_roots() {
        let scale = hbs_matching(4.0_f64, 0.2, Parity::Odd).unwrap().abs();
        assert!(hbs_matching(4.0_f64, 0.3697, Parity::Odd).unwrap().abs() < 1e-3 * scale);
        let scale = hbs_matching(2.0_f64, 0.8, Parity::Even).unwrap().abs();
        assert!(hbs_matching(2.0_f64, 1.1000, Parity::Even).unwrap().abs() < 1e-3 * scale);
    }

    #[test]
    fn empty_well_has_no_root() {
        let s = psi_hbs(&DimensionlessWell::<f64>::new(3.0, 1e-6).unwrap(), 0.0).unwrap();
        assert!((s.psi - 1.0).abs() < 1e-6);
        assert!(s.psi.abs() > 0.5);
    }

    #[test]
    fn critical_strength_samples() {
        for (alpha, n, beta, g) in [
            (1.0, 1, 0.8774, 1.4238),
            (3.0, 5, 1.9446, 5.4604),
            (4.0, 8, 2.4650, 8.4669),
        ] {
            let s = solve(alpha, n);
            assert!((s.beta_n - beta).abs() < 5e-4, "alpha {alpha} n {n}: {}", s.beta_n);
            assert!((s.g_value - g).abs() < 1e-3, "alpha {alpha} n {n}: G {}", s.g_value);
        }
    }

    #[test]
    fn alpha4_sequence_increases() {
        let expected = [0.3697, 0.6905, 0.9947, 1.2913];
        let mut last = 0.0;
        for (k, beta) in expected.iter().enumerate() {
            let s = solve(4.0, k + 1);
            assert!((s.beta_n - beta).abs() < 5e-4);
            assert!(s.beta_n > last);
            last = s.beta_n;
        }
    }

    #[test]
    fn decreasing_in_alpha() {
        for n in 1..4 {
            let betas: Vec<f64> = (1..5).map(|a| solve(a as f64, n).beta_n).collect();
            assert!(betas.windows(2).all(|w| w[1] < w[0]), "{betas:?}");
        }
    }

    #[test]
    fn criticality_examples() {
        for (alpha, beta, n) in [(2.0, 1.5723, 3), (1.0, 0.8774, 1), (4.0, 1.2913, 4)] {
            let r = verify_criticality(alpha, beta, n, DEFAULT_DELTA).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.at == n || r.at == n + 1);
        }
    }

    #[test]
    fn ceiling_and_bad_input() {
        assert!(matches!(
            solve_beta_n(1.0_f64, 0, 1e-6),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(solve_beta_n(1.0_f64, 1, -1.0).is_err());
        assert!(hbs_matching(0.0_f64, 1.0, Parity::Odd).is_err());
    }
}
