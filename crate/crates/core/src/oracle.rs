//! Brute-force reference: Numerov shooting on the half line and a
//! zero-energy node counter, sharing nothing with the hypergeometric path
//! except the potential itself.
//!
//! Shooting compares the outward solution (started at the origin with the
//! parity's boundary condition) with the inward one (seeded by the decaying
//! exponential at `x_max`) through their discrete Wronskian at the matching
//! point, normalised to `sin` of the angle between the two `(psi_m, psi_m+1)`
//! vectors. That mismatch is continuous in `E` and vanishes exactly at the
//! eigenvalues.

use crate::error::{Error, Result};
use crate::roots::{bisect, sign_changes};
use crate::scalar::{from_usize, lit, Real};
use crate::wavefunction::{count_nodes, reflect, Parity, WaveSample};
use crate::well::WellParams;

const RENORM_AT: f64 = 1e100;
pub const ORACLE_GRID_POINTS: usize = 2000;
pub const ORACLE_TOL_E: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig<T> {
    /// Outer boundary, fm.
    pub x_max: T,
    /// Grid spacing, fm.
    pub step: T,
    /// Where outward and inward solutions meet, fm.
    pub match_point: T,
}

impl<T: Real> IntegratorConfig<T> {
    /// `x_max = a + 40 b`, matching at `a`, and a step resolving both the
    /// edge (`b/40`) and the shortest interior wavelength.
    pub fn for_well(p: &WellParams<T>) -> Self {
        let k_max = (p.kappa2() * p.u0()).sqrt();
        let step = (p.b() / lit(40.0)).min(lit::<T>(0.1) / k_max);
        Self {
            x_max: p.a() + lit::<T>(40.0) * p.b(),
            step,
            match_point: p.a(),
        }
    }

    pub fn with_step(self, step: T) -> Self {
        Self { step, ..self }
    }

    pub fn with_x_max(self, x_max: T) -> Self {
        Self { x_max, ..self }
    }

    pub fn with_match_point(self, match_point: T) -> Self {
        Self { match_point, ..self }
    }

    /// `x_max >= a + 15 b`, `step <= b/20`, `step <= 0.3/k'_max`, and the
    /// match point strictly inside the grid.
    pub fn validate(&self, p: &WellParams<T>) -> Result<()> {
        let bad = |name, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.x_max >= p.a() + lit::<T>(15.0) * p.b()) {
            return bad("x_max", format!("{} is inside a + 15 b", self.x_max));
        }
        let k_max = (p.kappa2() * p.u0()).sqrt();
        if !(self.step > T::zero() && self.step <= p.b() / lit(20.0) && self.step * k_max <= lit(0.3)) {
            return bad("step", format!("{} does not resolve the well", self.step));
        }
        if !(self.match_point > self.step && self.match_point < self.x_max - lit::<T>(2.0) * self.step) {
            return bad("match_point", format!("{} is not inside the grid", self.match_point));
        }
        Ok(())
    }

    fn points(&self) -> usize {
        (self.x_max / self.step).ceil().to_usize().unwrap_or(0) + 1
    }
}

/// Integration direction and start condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shot {
    /// From the origin: `(psi, psi') = (1, 0)` for even, `(0, h)` for odd.
    Outward(Parity),
    /// From `x_max` with the decaying exponential `e^{-k x}`.
    Inward,
}

/// Half-line solution on an ascending grid, up to an overall scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub x: Vec<T>,
    pub psi: Vec<T>,
}

fn grid<T: Real>(x_max: T, points: usize) -> (Vec<T>, T) {
    let h = x_max / from_usize::<T>(points - 1);
    ((0..points).map(|i| h * from_usize::<T>(i)).collect(), h)
}

/// `psi'' = f psi` coefficients `f = kappa2 (V - E)` on the grid.
fn coefficients<T: Real, V: Fn(T) -> T>(v: &V, kappa2: T, e: T, xs: &[T]) -> Vec<T> {
    xs.iter().map(|&x| kappa2 * (v(x) - e)).collect()
}

/// Numerov recursion over `fs` in index order from the two seeds, rescaling
/// everything computed so far whenever `|psi|` passes `1e100`.
fn numerov<T: Real>(fs: &[T], h: T, psi0: T, psi1: T) -> Vec<T> {
    let c = h * h / lit(12.0);
    let five = lit::<T>(5.0);
    let two = lit::<T>(2.0);
    let limit = lit::<T>(RENORM_AT);
    let mut out = Vec::with_capacity(fs.len());
    out.push(psi0);
    out.push(psi1);
    for i in 1..fs.len() - 1 {
        let next = (two * (T::one() + five * c * fs[i]) * out[i] - (T::one() - c * fs[i - 1]) * out[i - 1])
            / (T::one() - c * fs[i + 1]);
        out.push(next);
        if next.abs() > limit {
            let s = limit.recip();
            out.iter_mut().for_each(|y| *y *= s);
        }
    }
    out
}

fn outward<T: Real>(fs: &[T], h: T, parity: Parity) -> Vec<T> {
    match parity {
        // V has a cusp at the origin, so the symmetric Numerov step across it
        // is only O(h^3) accurate; a one-sided Taylor start to O(h^5) keeps the
        // fourth-order rate
        Parity::Even => {
            let d1 = (lit::<T>(4.0) * fs[1] - lit::<T>(3.0) * fs[0] - fs[2]) / (h + h);
            let d2 = (fs[0] - lit::<T>(2.0) * fs[1] + fs[2]) / (h * h);
            let h2 = h * h;
            let psi1 =
                T::one() + h2 * fs[0] / lit(2.0) + h2 * h * d1 / lit(6.0) + h2 * h2 * (d2 + fs[0] * fs[0]) / lit(24.0);
            numerov(fs, h, T::one(), psi1)
        }
        Parity::Odd => numerov(fs, h, T::zero(), h),
    }
}

fn inward<T: Real>(fs: &[T], h: T, kappa2: T, e: T) -> Vec<T> {
    let k = (-kappa2 * e).max(T::zero()).sqrt();
    let rev: Vec<T> = fs.iter().rev().copied().collect();
    let mut psi = numerov(&rev, h, T::one(), (k * h).exp());
    psi.reverse();
    psi
}

/// Normalised discrete Wronskian of two solutions at grid index `m`.
fn wronskian<T: Real>(out: &[T], inn: &[T], m: usize) -> T {
    let w = out[m] * inn[m + 1] - out[m + 1] * inn[m];
    let no = out[m].hypot(out[m + 1]);
    let ni = inn[m].hypot(inn[m + 1]);
    w / (no * ni)
}

/// Shared shooting machinery over an arbitrary even potential.
struct Shooter<T, V> {
    v: V,
    kappa2: T,
    xs: Vec<T>,
    h: T,
    m: usize,
}

impl<T: Real, V: Fn(T) -> T> Shooter<T, V> {
    fn new(v: V, kappa2: T, x_max: T, step: T, match_point: T) -> Self {
        let points = (x_max / step).ceil().to_usize().unwrap_or(0).max(4) + 1;
        let (xs, h) = grid(x_max, points);
        let m = (match_point / h).round().to_usize().unwrap_or(1).clamp(1, points - 3);
        Self { v, kappa2, xs, h, m }
    }

    fn solutions(&self, e: T, parity: Parity) -> (Vec<T>, Vec<T>) {
        let fs = coefficients(&self.v, self.kappa2, e, &self.xs);
        (outward(&fs, self.h, parity), inward(&fs, self.h, self.kappa2, e))
    }

    /// Mismatch for both parities, sharing the inward solution: `(even, odd)`.
    fn mismatch_pair(&self, e: T) -> (T, T) {
        let fs = coefficients(&self.v, self.kappa2, e, &self.xs);
        let inn = inward(&fs, self.h, self.kappa2, e);
        let even = wronskian(&outward(&fs, self.h, Parity::Even), &inn, self.m);
        let odd = wronskian(&outward(&fs, self.h, Parity::Odd), &inn, self.m);
        (even, odd)
    }

    fn mismatch(&self, e: T, parity: Parity) -> T {
        let (out, inn) = self.solutions(e, parity);
        wronskian(&out, &inn, self.m)
    }

    /// Outward solution up to the match point joined continuously to the
    /// inward one beyond it.
    fn assembled(&self, e: T, parity: Parity) -> Vec<T> {
        let (out, inn) = self.solutions(e, parity);
        let scale = out[self.m] / inn[self.m];
        out[..=self.m]
            .iter()
            .copied()
            .chain(inn[self.m + 1..].iter().map(|&y| y * scale))
            .collect()
    }

    /// Roots of both mismatch functions on `(lo, hi)` plus the cell up to `E = 0`.
    fn levels(&self, lo: T, hi: T, grid_points: usize, tol: T) -> Result<Vec<OracleLevel<T>>> {
        let step = (hi - lo) / from_usize::<T>(grid_points - 1);
        let mut es: Vec<T> = (0..grid_points).map(|i| lo + step * from_usize::<T>(i)).collect();
        es.push(T::zero());
        let pairs: Vec<(T, T)> = es.iter().map(|&e| self.mismatch_pair(e)).collect();
        let mut levels = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            let fs: Vec<T> = pairs
                .iter()
                .map(|&(ev, od)| if parity == Parity::Even { ev } else { od })
                .collect();
            for br in sign_changes(&es, &fs) {
                if br.hi == T::zero() && br.f_hi == T::zero() {
                    continue;
                }
                let energy = bisect(|e| Ok(self.mismatch(e, parity)), br.lo, br.hi, br.f_lo, br.f_hi, tol)?;
                levels.push(OracleLevel {
                    energy,
                    parity,
                    nodes: self.nodes(energy, parity),
                });
            }
        }
        levels.sort_by(|x, y| x.energy.partial_cmp(&y.energy).expect("finite energies"));
        Ok(levels)
    }

    fn nodes(&self, e: T, parity: Parity) -> usize {
        let half: Vec<WaveSample<T>> = self
            .xs
            .iter()
            .zip(self.assembled(e, parity))
            .map(|(&x, psi)| WaveSample {
                x,
                psi,
                dpsi_dx: T::zero(),
            })
            .collect();
        count_nodes(&reflect(&half, parity))
    }
}

fn shooter<'a, T: Real>(p: &'a WellParams<T>, cfg: &IntegratorConfig<T>) -> Result<Shooter<T, impl Fn(T) -> T + 'a>> {
    cfg.validate(p)?;
    Ok(Shooter::new(
        move |x| p.potential(x),
        p.kappa2(),
        cfg.x_max,
        cfg.step,
        cfg.match_point,
    ))
}

/// Half-line Numerov solution at energy `e`.
pub fn numerov_integrate<T: Real>(
    p: &WellParams<T>,
    e: T,
    cfg: &IntegratorConfig<T>,
    shot: Shot,
) -> Result<Trajectory<T>> {
    let s = shooter(p, cfg)?;
    let fs = coefficients(&s.v, s.kappa2, e, &s.xs);
    let psi = match shot {
        Shot::Outward(parity) => outward(&fs, s.h, parity),
        Shot::Inward => inward(&fs, s.h, s.kappa2, e),
    };
    Ok(Trajectory { x: s.xs, psi })
}

/// Normalised Wronskian mismatch of the two shots at the match point.
pub fn shooting_mismatch<T: Real>(p: &WellParams<T>, e: T, cfg: &IntegratorConfig<T>, parity: Parity) -> Result<T> {
    Ok(shooter(p, cfg)?.mismatch(e, parity))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLevel<T> {
    /// MeV
    pub energy: T,
    pub parity: Parity,
    /// Sign changes of the assembled full-line solution.
    pub nodes: usize,
}

/// Bound levels by shooting, ordered by energy, each bisected to 1e-9 MeV.
pub fn oracle_spectrum<T: Real>(p: &WellParams<T>, cfg: &IntegratorConfig<T>) -> Result<Vec<OracleLevel<T>>> {
    let s = shooter(p, cfg)?;
    let eps = lit::<T>(1e-6) * p.v0();
    let tol = lit::<T>(ORACLE_TOL_E).max(lit::<T>(4.0) * T::epsilon() * p.v0());
    s.levels(-p.v0() + eps, -eps, ORACLE_GRID_POINTS, tol)
}

/// Number of bound states as the number of zeros of the zero-energy solution
/// that is constant at `+inf`, integrated across `[-x_max, x_max]`.
///
/// Beyond the grid that solution is linear; a zero it would reach further
/// out on the left is counted too, so the result does not depend on `x_max`.
pub fn count_via_zero_energy_nodes<T: Real>(p: &WellParams<T>, cfg: &IntegratorConfig<T>) -> Result<usize> {
    cfg.validate(p)?;
    let half = cfg.points() - 1;
    let h = cfg.x_max / from_usize::<T>(half);
    let xs: Vec<T> = (0..=2 * half)
        .map(|i| h * (from_usize::<T>(i) - from_usize::<T>(half)))
        .collect();
    let fs = coefficients(&|x| p.potential(x), p.kappa2(), T::zero(), &xs);
    let rev: Vec<T> = fs.iter().rev().copied().collect();
    let mut psi = numerov(&rev, h, T::one(), T::one());
    psi.reverse();
    let samples: Vec<WaveSample<T>> = xs
        .iter()
        .zip(&psi)
        .map(|(&x, &psi)| WaveSample {
            x,
            psi,
            dpsi_dx: T::zero(),
        })
        .collect();
    let slope = psi[1] - psi[0];
    let beyond = usize::from(psi[0] * slope > T::zero());
    Ok(count_nodes(&samples) + beyond)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ref_well() -> WellParams<f64> {
        WellParams::<f64>::new(45.3642, 2.0, 1.0).unwrap()
    }

    #[test]
    fn harmonic_oscillator_ground_state() {
        let s = Shooter::new(|x: f64| x * x, 1.0, 8.0, 0.005, 0.7);
        let f = |e| Ok(s.mismatch(e, Parity::Even));
        let e0 = bisect(f, 0.5, 1.5, f(0.5).unwrap(), f(1.5).unwrap(), 1e-13).unwrap();
        assert!((e0 - 1.0).abs() < 1e-8, "{e0}");
        let g = |e| Ok(s.mismatch(e, Parity::Odd));
        let e1 = bisect(g, 2.5, 3.5, g(2.5).unwrap(), g(3.5).unwrap(), 1e-13).unwrap();
        assert!((e1 - 3.0).abs() < 1e-7, "{e1}");
    }

    #[test]
    fn free_decay_is_exponential() {
        let s = Shooter::new(|_: f64| 0.0, 1.0, 10.0, 0.005, 5.0);
        let (_, inn) = s.solutions(-1.0, Parity::Even);
        let last = *s.xs.last().unwrap();
        for (x, y) in s.xs.iter().zip(&inn) {
            let exact = (-(x - last)).exp();
            assert!(((y - exact) / exact).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn ref_well_mismatch_vanishes_at_ground_energy() {
        let p = ref_well();
        let cfg = IntegratorConfig::for_well(&p);
        let m = shooting_mismatch(&p, -33.7554, &cfg, Parity::Even).unwrap();
        assert!(m.abs() < 1e-5, "{m}");
    }

    #[test]
    fn ref_well_levels() {
        let p = ref_well();
        let levels = oracle_spectrum(&p, &IntegratorConfig::for_well(&p)).unwrap();
        let expected = [-33.7554, -16.2221, -4.6764];
        assert_eq!(levels.len(), 3);
        for (i, (l, e)) in levels.iter().zip(expected).enumerate() {
            assert!((l.energy - e).abs() < 1e-3);
            assert_eq!(l.parity, Parity::of_index(i));
            assert_eq!(l.nodes, i);
        }
    }

    #[test]
    fn narrow_well_with_three_levels() {
        let p = WellParams::<f64>::new(60.0, 1.0518, 0.9).unwrap();
        assert_eq!(oracle_spectrum(&p, &IntegratorConfig::for_well(&p)).unwrap().len(), 3);
    }

    #[test]
    fn step_halving() {
        for p in [ref_well(), WellParams::<f64>::new(70.0, 6.0, 0.2).unwrap()] {
            let cfg = IntegratorConfig::for_well(&p);
            let a = oracle_spectrum(&p, &cfg).unwrap();
            let b = oracle_spectrum(&p, &cfg.with_step(cfg.step / 2.0)).unwrap();
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!((x.energy - y.energy).abs() < 1e-7, "{} vs {}", x.energy, y.energy);
            }
        }
    }

    #[test]
    fn match_point_invariance() {
        let p = ref_well();
        let cfg = IntegratorConfig::for_well(&p);
        let base = oracle_spectrum(&p, &cfg).unwrap();
        for mp in [p.a() - p.b(), p.a() + p.b(), p.a() + 0.37] {
            let other = oracle_spectrum(&p, &cfg.with_match_point(mp)).unwrap();
            for (x, y) in base.iter().zip(&other) {
                assert!((x.energy - y.energy).abs() < 1e-8, "{} vs {}", x.energy, y.energy);
            }
        }
    }

    #[test]
    fn zero_energy_count() {
        let p = crate::well::DimensionlessWell::<f64>::new(2.0, 1.5723)
            .unwrap()
            .to_physical(1.0, 0.048)
            .unwrap();
        assert_eq!(
            count_via_zero_energy_nodes(&p, &IntegratorConfig::for_well(&p)).unwrap(),
            3
        );
        let p = WellParams::<f64>::new(64.4349, 6.8, 0.7).unwrap();
        assert_eq!(
            count_via_zero_energy_nodes(&p, &IntegratorConfig::for_well(&p)).unwrap(),
            9
        );
    }

    #[test]
    fn zero_energy_count_ignores_x_max() {
        for p in [
            ref_well(),
            WellParams::<f64>::new(5.0, 3.0, 0.1).unwrap(),
            WellParams::<f64>::new(0.5, 1.0, 1.0).unwrap(),
        ] {
            let cfg = IntegratorConfig::for_well(&p);
            let n1 = count_via_zero_energy_nodes(&p, &cfg).unwrap();
            let n2 = count_via_zero_energy_nodes(&p, &cfg.with_x_max(1.5 * cfg.x_max)).unwrap();
            assert_eq!(n1, n2);
            assert_eq!(n1, oracle_spectrum(&p, &cfg).unwrap().len());
        }
    }

    #[test]
    fn config_validation() {
        let p = ref_well();
        let cfg = IntegratorConfig::for_well(&p);
        assert!(cfg.validate(&p).is_ok());
        assert!(cfg.with_x_max(p.a() + 10.0 * p.b()).validate(&p).is_err());
        assert!(cfg.with_step(p.b() / 10.0).validate(&p).is_err());
        assert!(cfg.with_match_point(cfg.x_max).validate(&p).is_err());
    }
}
