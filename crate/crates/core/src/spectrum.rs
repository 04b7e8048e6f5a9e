//! Exact bound-state spectrum from the parity matching conditions at the
//! origin: even states have `psi'(0+) = 0`, odd states `psi(0) = 0`.

use crate::error::{Error, Result};
use crate::roots::{bisect, sign_changes};
use crate::scalar::{from_usize, lit, Real};
use crate::semiclassical::g_closed_form;
use crate::wavefunction::{count_nodes, psi, psi_at, state_samples, turning_point, Parity};
use crate::well::WellParams;

pub const DEFAULT_GRID_POINTS: usize = 2000;
pub const DEFAULT_TOL_E: f64 = 1e-8;
/// Relative margin `eps/v0` kept from both ends of the energy window.
pub const WINDOW_MARGIN: f64 = 1e-6;
const NODE_GRID_HALF_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenState<T> {
    pub index: usize,
    /// MeV
    pub energy: T,
    pub parity: Parity,
    pub nodes: usize,
    /// Within `WINDOW_MARGIN * v0` of the threshold `E = 0`.
    pub near_threshold: bool,
}

/// Where the exact count falls relative to `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountRule {
    Floor,
    FloorPlusOne,
    /// Neither `floor(G)` nor `floor(G) + 1`; `floor` is `floor(G)`.
    Violated {
        floor: i64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<T> {
    pub params: WellParams<T>,
    /// Ordered by energy, which is also the index order.
    pub states: Vec<EigenState<T>>,
    pub g_value: T,
    pub count: usize,
}

impl<T: Real> SpectrumReport<T> {
    /// States of one parity as `(resolved, near_threshold)`. A state inside
    /// the threshold margin cannot be told apart from a zero-energy
    /// half-bound state, so it is counted separately.
    pub fn count_parity(&self, parity: Parity) -> (usize, usize) {
        self.states
            .iter()
            .filter(|s| s.parity == parity)
            .fold(
                (0, 0),
                |(r, n), s| if s.near_threshold { (r, n + 1) } else { (r + 1, n) },
            )
    }

    pub fn count_rule(&self) -> CountRule {
        let floor = self.g_value.floor().to_i64().unwrap_or(i64::MIN);
        match self.count as i64 - floor {
            0 => CountRule::Floor,
            1 => CountRule::FloorPlusOne,
            _ => CountRule::Violated { floor },
        }
    }
}

/// `(psi(0), psi'(0+))` for one evaluation of the solution; `e = 0` is allowed.
fn matching_pair<T: Real>(p: &WellParams<T>, e: T) -> Result<(T, T)> {
    let s = psi_at(p, e, T::zero())?;
    Ok((s.psi, s.dpsi_dx))
}

/// `psi'(0+)` for even parity, `psi(0)` for odd, at energy `e` in `(-v0, 0)`.
pub fn matching_function<T: Real>(p: &WellParams<T>, e: T, parity: Parity) -> Result<T> {
    let s = psi(p, e, T::zero())?;
    Ok(match parity {
        Parity::Even => s.dpsi_dx,
        Parity::Odd => s.psi,
    })
}

fn pick<T: Copy>(pair: (T, T), parity: Parity) -> T {
    match parity {
        Parity::Odd => pair.0,
        Parity::Even => pair.1,
    }
}

fn node_count<T: Real>(p: &WellParams<T>, e: T, parity: Parity) -> Result<usize> {
    // nodes lie inside the turning point; a+12b covers all but near-threshold states
    let x_end = (p.a() + lit::<T>(12.0) * p.b()).max(turning_point(p, e) + lit::<T>(4.0) * p.b());
    Ok(count_nodes(&state_samples(p, e, parity, x_end, NODE_GRID_HALF_POINTS)?))
}

/// Scans `(-v0 + eps, -eps)`, `eps = 1e-6 v0`, on `grid_points` uniform
/// energies for sign changes of both matching functions, bisects each to
/// `tol_e` MeV, and labels the merged roots by parity alternation and node
/// count. The cell `(-eps, 0)` is checked separately against the
/// zero-energy solution; a root there is flagged `near_threshold`.
pub fn solve_spectrum<T: Real>(p: &WellParams<T>, grid_points: usize, tol_e: T) -> Result<SpectrumReport<T>> {
    if grid_points < 200 {
        return Err(Error::InvalidParameter {
            name: "grid_points",
            reason: format!("need at least 200, got {grid_points}"),
        });
    }
    if !(tol_e > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "tol_e",
            reason: format!("must be > 0, got {tol_e}"),
        });
    }
    let v0 = p.v0();
    let tol = tol_e.max(lit::<T>(4.0) * T::epsilon() * v0);
    let eps = lit::<T>(WINDOW_MARGIN) * v0;
    let lo = -v0 + eps;
    let hi = -eps;
    let step = (hi - lo) / from_usize::<T>(grid_points - 1);
    let mut es: Vec<T> = (0..grid_points).map(|i| lo + step * from_usize::<T>(i)).collect();
    *es.last_mut().expect("grid is non-empty") = hi;
    let mut values = es.iter().map(|&e| matching_pair(p, e)).collect::<Result<Vec<_>>>()?;
    es.push(T::zero());
    values.push(matching_pair(p, T::zero())?);

    let mut roots: Vec<(T, Parity)> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let fs: Vec<T> = values.iter().map(|&v| pick(v, parity)).collect();
        for br in sign_changes(&es, &fs) {
            // a zero exactly at E = 0 is a half-bound state, not a bound state
            if br.hi == T::zero() && br.f_hi == T::zero() {
                continue;
            }
            let f = |e: T| matching_pair(p, e).map(|v| pick(v, parity));
            let e = bisect(f, br.lo, br.hi, br.f_lo, br.f_hi, tol)?;
            roots.push((e, parity));
        }
    }
    roots.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite energies"));

    let mut states = Vec::with_capacity(roots.len());
    for (index, &(energy, parity)) in roots.iter().enumerate() {
        if parity != Parity::of_index(index) {
            // a missed root of the other parity: two of them shared a cell
            return Err(if index == 0 {
                Error::Labeling(format!("lowest state at {energy} MeV is odd"))
            } else {
                Error::BracketCollision {
                    energy: roots[index - 1].0.to_f64().unwrap_or(f64::NAN),
                }
            });
        }
        let nodes = node_count(p, energy, parity)?;
        if nodes != index {
            return Err(Error::Labeling(format!(
                "state {index} at {energy} MeV has {nodes} nodes"
            )));
        }
        states.push(EigenState {
            index,
            energy,
            parity,
            nodes,
            near_threshold: energy > -eps,
        });
    }
    let count = states.len();
    Ok(SpectrumReport {
        params: *p,
        states,
        g_value: g_closed_form(&p.to_dimensionless()),
        count,
    })
}

/// Number of bound states with the default grid and tolerance.
pub fn count_states<T: Real>(p: &WellParams<T>) -> Result<usize> {
    Ok(solve_spectrum(p, DEFAULT_GRID_POINTS, lit(DEFAULT_TOL_E))?.count)
}
