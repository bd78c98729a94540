//! First-order conservative update with the Rusanov (local Lax-Friedrichs)
//! flux along each torus direction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{CellField, CHUNK};
use crate::error::{Error, Result};
use crate::flux::{PiecewiseFlux, ScalarFlux};
use crate::lift::LiftSpec;

pub const DEFAULT_CFL: f64 = 0.45;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    #[default]
    Rusanov,
}

/// Directional fluxes `psi_j(u) = lambda_j . phi(u)` of the lifted equation
/// `V_t + sum_j d/dtheta_j psi_j(V) = 0`.
#[derive(Clone, Debug)]
pub struct LiftedFlux {
    psi: Vec<ScalarFlux>,
    domain: (f64, f64),
}

impl LiftedFlux {
    pub fn new(flux: &PiecewiseFlux, lift: &LiftSpec) -> Result<Self> {
        if flux.dims() != lift.dims() {
            return Err(Error::DimensionMismatch {
                expected: lift.dims(),
                found: flux.dims(),
            });
        }
        let psi = lift
            .directions_real()
            .iter()
            .map(|l| flux.combine(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            psi,
            domain: flux.domain(),
        })
    }

    /// Directly from scalar fluxes, one per torus direction.
    pub fn from_scalar(psi: Vec<ScalarFlux>) -> Self {
        let lo = psi.iter().map(|p| p.breakpoints()[0]).fold(f64::NEG_INFINITY, f64::max);
        let hi = psi
            .iter()
            .map(|p| *p.breakpoints().last().expect("non-empty"))
            .fold(f64::INFINITY, f64::min);
        Self { psi, domain: (lo, hi) }
    }

    pub fn directions(&self) -> usize {
        self.psi.len()
    }

    pub fn psi(&self, j: usize) -> &ScalarFlux {
        &self.psi[j]
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Per-direction Lipschitz constants on `[lo, hi]`.
    pub fn lipschitz(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.psi.iter().map(|p| p.max_speed(lo, hi)).collect()
    }

    /// Rusanov flux `(psi(u) + psi(v))/2 - a (v - u)/2`, `a = max |psi'|` between `u` and `v`.
    #[inline]
    pub fn numerical_flux(&self, j: usize, u: f64, v: f64) -> f64 {
        let p = &self.psi[j];
        if u == v {
            return p.eval(u);
        }
        let a = p.max_speed(u, v);
        0.5 * (p.eval(u) + p.eval(v)) - 0.5 * a * (v - u)
    }

    /// Numerical entropy flux `F(u v k, v v k) - F(u ^ k, v ^ k)`.
    #[inline]
    pub fn entropy_flux(&self, j: usize, u: f64, v: f64, k: f64) -> f64 {
        self.numerical_flux(j, u.max(k), v.max(k)) - self.numerical_flux(j, u.min(k), v.min(k))
    }
}

/// Applies single steps under the CFL restriction.
#[derive(Clone, Debug)]
pub struct Stepper {
    flux: LiftedFlux,
    cfl: f64,
}

impl Stepper {
    pub fn new(flux: LiftedFlux, cfl: f64) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= 0.5) {
            return Err(Error::Config(format!("CFL number {cfl} outside (0, 1/2]")));
        }
        Ok(Self { flux, cfl })
    }

    pub fn flux(&self) -> &LiftedFlux {
        &self.flux
    }

    pub fn cfl(&self) -> f64 {
        self.cfl
    }

    /// Largest admissible step for the field's current range:
    /// `sum_j (dt / h_j) L_j <= cfl`. Infinite when nothing moves.
    pub fn max_dt(&self, field: &CellField) -> f64 {
        let (lo, hi) = field.range();
        let rate: f64 = self
            .flux
            .lipschitz(lo, hi)
            .iter()
            .zip(field.sizes())
            .map(|(l, &n)| l * n as f64)
            .sum();
        if rate == 0.0 {
            f64::INFINITY
        } else {
            self.cfl / rate
        }
    }

    fn check(&self, field: &CellField) -> Result<()> {
        if field.dim() != self.flux.directions() {
            return Err(Error::GridMismatch(format!(
                "{}-dimensional field for {} flux directions",
                field.dim(),
                self.flux.directions()
            )));
        }
        Ok(())
    }

    /// Interface fluxes `F_j` at `i + 1/2` along direction `j`, for the
    /// state `g(u)` (identity for the plain update).
    fn interface_fluxes<G>(&self, field: &CellField, j: usize, g: G) -> Vec<f64>
    where
        G: Fn(f64, f64) -> f64 + Sync,
    {
        let strides = field.strides();
        let n = field.sizes()[j];
        let st = strides[j];
        let data = field.data();
        let mut out = vec![0.0; data.len()];
        out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
            for (off, slot) in chunk.iter_mut().enumerate() {
                let idx = c * CHUNK + off;
                let i = (idx / st) % n;
                let right = if i + 1 == n { idx - i * st } else { idx + st };
                *slot = g(data[idx], data[right]);
            }
        });
        out
    }

    /// Flux differences `sum_j N_j (F_j(i+1/2) - F_j(i-1/2))` per cell.
    fn divergence<G>(&self, field: &CellField, g: G) -> Vec<f64>
    where
        G: Fn(usize, f64, f64) -> f64 + Sync,
    {
        let strides = field.strides();
        let mut div = vec![0.0; field.len()];
        for j in 0..field.dim() {
            let n = field.sizes()[j];
            let st = strides[j];
            let fl = self.interface_fluxes(field, j, |u, v| g(j, u, v));
            let scale = n as f64;
            div.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
                for (off, d) in chunk.iter_mut().enumerate() {
                    let idx = c * CHUNK + off;
                    let i = (idx / st) % n;
                    let left = if i == 0 { idx + (n - 1) * st } else { idx - st };
                    *d += scale * (fl[idx] - fl[left]);
                }
            });
        }
        div
    }

    /// One conservative update. Refuses steps above [`Stepper::max_dt`] and
    /// reports any growth of the data range.
    pub fn step(&self, field: &CellField, dt: f64) -> Result<CellField> {
        self.check(field)?;
        let max_dt = self.max_dt(field);
        if !(dt >= 0.0) || dt > max_dt {
            return Err(Error::Cfl { dt, max_dt });
        }
        self.step_unchecked(field, dt)
    }

    pub(crate) fn step_unchecked(&self, field: &CellField, dt: f64) -> Result<CellField> {
        let div = self.divergence(field, |j, u, v| self.flux.numerical_flux(j, u, v));
        let old = field.data();
        let mut data = vec![0.0; old.len()];
        data.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
            for (off, x) in chunk.iter_mut().enumerate() {
                let idx = c * CHUNK + off;
                *x = old[idx] - dt * div[idx];
            }
        });
        let next = field.with_data(data, field.time() + dt);
        let (lo, hi) = field.range();
        let (nlo, nhi) = next.range();
        if nlo < lo || nhi > hi {
            return Err(Error::MaximumPrinciple {
                step: 0,
                min: nlo,
                max: nhi,
                lo,
                hi,
            });
        }
        Ok(next)
    }

    /// Per-cell entropy production
    /// `|u_after - k| - |u_before - k| + dt sum_j N_j (Q_j(i+1/2) - Q_j(i-1/2))`.
    pub fn entropy_production(&self, before: &CellField, after: &CellField, dt: f64, k: f64) -> Result<Vec<f64>> {
        before.same_grid(after)?;
        self.check(before)?;
        let div = self.divergence(before, |j, u, v| self.flux.entropy_flux(j, u, v, k));
        Ok(before
            .data()
            .iter()
            .zip(after.data())
            .zip(&div)
            .map(|((u0, u1), d)| (u1 - k).abs() - (u0 - k).abs() + dt * d)
            .collect())
    }

    /// Largest cell entropy production for one `k`; nonpositive up to roundoff
    /// for a monotone step.
    pub fn entropy_residual(&self, before: &CellField, after: &CellField, dt: f64, k: f64) -> Result<f64> {
        Ok(self
            .entropy_production(before, after, dt, k)?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Largest residual over `points` values of `k` spread evenly over the
    /// range of `before` (endpoints included).
    pub fn entropy_residual_sweep(&self, before: &CellField, after: &CellField, dt: f64, points: usize) -> Result<f64> {
        let (lo, hi) = before.range();
        let mut worst = f64::NEG_INFINITY;
        for i in 0..points {
            let k = if points == 1 {
                0.5 * (lo + hi)
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            };
            worst = worst.max(self.entropy_residual(before, after, dt, k)?);
        }
        Ok(worst)
    }
}
