//! Haar-measure integrals of lifted polynomials: the mean L1 norm, the
//! excess mean `mean (|u| - M)^+` and the essential supremum.
//!
//! All integrals use the periodic rectangle rule on a uniform grid
//! `theta = i / G` per torus direction. Rows along the first direction are
//! evaluated in parallel and reduced in index order, so results do not depend
//! on the thread count.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::trigpoly::TrigPoly;
use crate::error::{Error, Result};
use crate::lift::{LiftSpec, TorusPoly};

pub const ESS_SUP_TOLERANCE: f64 = 1e-10;

/// Points per torus direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusGrid {
    pub points: usize,
}

impl TorusGrid {
    pub fn new(points: usize) -> Self {
        Self { points }
    }

    /// 4096 points per direction, reduced to 256 for three-dimensional tori.
    pub fn default_for(torus_dim: usize) -> Self {
        Self {
            points: if torus_dim >= 3 { 256 } else { 4096 },
        }
    }
}

/// A torus integral together with the grid it was computed on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusIntegral {
    pub value: f64,
    pub points: usize,
}

/// Grid sampler for a lifted polynomial.
pub struct TorusSampler {
    poly: TorusPoly,
    points: usize,
    // tables[t][j][i] = exp(2 pi i k_{t,j} i / G)
    tables: Vec<Vec<Vec<Complex64>>>,
}

impl TorusSampler {
    pub fn new(poly: TorusPoly, grid: TorusGrid) -> Result<Self> {
        if grid.points == 0 {
            return Err(Error::InvalidInput("torus grid needs at least one point".into()));
        }
        let g = grid.points as i64;
        let tables = poly
            .terms()
            .iter()
            .map(|(k, _)| {
                k.iter()
                    .map(|&kj| {
                        (0..g)
                            .map(|i| {
                                let r = (kj * i).rem_euclid(g);
                                Complex64::cis(TAU * r as f64 / g as f64)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            poly,
            points: grid.points,
            tables,
        })
    }

    pub fn for_poly(p: &TrigPoly, lift: &LiftSpec, grid: TorusGrid) -> Result<Self> {
        Self::new(lift.lift_poly(p)?, grid)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn total_points(&self) -> usize {
        self.points.pow(self.poly.dim() as u32)
    }

    /// Visits every grid point of the row with first index `i0`.
    fn visit_row<F: FnMut(Complex64)>(&self, i0: usize, mut f: F) {
        let m = self.poly.dim();
        let coeffs: Vec<Complex64> = self
            .poly
            .terms()
            .iter()
            .zip(&self.tables)
            .map(|((_, a), t)| a * t[0][i0])
            .collect();
        let real = self.poly.is_real_valued();
        let emit = |v: Complex64, f: &mut F| {
            if real {
                f(Complex64::new(v.re, 0.0))
            } else {
                f(v)
            }
        };
        match m {
            1 => emit(coeffs.iter().sum(), &mut f),
            2 => {
                for i1 in 0..self.points {
                    let v = coeffs.iter().zip(&self.tables).map(|(c, t)| c * t[1][i1]).sum();
                    emit(v, &mut f);
                }
            }
            3 => {
                let mut partial = vec![Complex64::new(0.0, 0.0); coeffs.len()];
                for i1 in 0..self.points {
                    for ((p, c), t) in partial.iter_mut().zip(&coeffs).zip(&self.tables) {
                        *p = c * t[1][i1];
                    }
                    for i2 in 0..self.points {
                        let v = partial.iter().zip(&self.tables).map(|(c, t)| c * t[2][i2]).sum();
                        emit(v, &mut f);
                    }
                }
            }
            _ => unreachable!("torus dimension is checked by LiftSpec"),
        }
    }

    /// All grid values in row-major order (last torus index fastest).
    pub fn values(&self) -> Vec<Complex64> {
        let rows: Vec<Vec<Complex64>> = (0..self.points)
            .into_par_iter()
            .map(|i0| {
                let mut row = Vec::with_capacity(self.total_points() / self.points);
                self.visit_row(i0, |v| row.push(v));
                row
            })
            .collect();
        rows.concat()
    }

    /// Grid mean of `h(P(theta))`.
    pub fn mean_of<H>(&self, h: H) -> f64
    where
        H: Fn(Complex64) -> f64 + Sync,
    {
        let rows: Vec<f64> = (0..self.points)
            .into_par_iter()
            .map(|i0| {
                let mut acc = 0.0;
                self.visit_row(i0, |v| acc += h(v));
                acc
            })
            .collect();
        rows.iter().sum::<f64>() / self.total_points() as f64
    }

    /// Grid maximum of `h(P(theta))`.
    pub fn max_of<H>(&self, h: H) -> f64
    where
        H: Fn(Complex64) -> f64 + Sync,
    {
        (0..self.points)
            .into_par_iter()
            .map(|i0| {
                let mut m = f64::NEG_INFINITY;
                self.visit_row(i0, |v| m = m.max(h(v)));
                m
            })
            .reduce(|| f64::NEG_INFINITY, f64::max)
    }

    /// True when `|P| > level` somewhere on the grid.
    pub fn exceeds(&self, level: f64) -> bool {
        (0..self.points).into_par_iter().any(|i0| {
            let mut hit = false;
            self.visit_row(i0, |v| hit |= v.norm() > level);
            hit
        })
    }

    pub fn besicovitch_norm(&self) -> f64 {
        self.mean_of(|v| v.norm())
    }

    pub fn excess_mean(&self, level: f64) -> Result<f64> {
        if !(level >= 0.0) {
            return Err(Error::Domain(format!("excess level must be >= 0, got {level}")));
        }
        Ok(self.mean_of(|v| (v.norm() - level).max(0.0)))
    }

    /// Smallest `M` with zero grid excess, by bisection to [`ESS_SUP_TOLERANCE`].
    ///
    /// On the grid, `mean (|P| - M)^+ = 0` holds exactly when `M` is at least
    /// the grid maximum of `|P|`, so the maximum is computed once and the
    /// bisection queries compare against it.
    pub fn ess_sup(&self) -> f64 {
        let grid_max = self.max_of(|v| v.norm());
        let excess_vanishes = |level: f64| level >= grid_max;
        let mut lo = 0.0;
        let mut hi: f64 = self.poly.terms().iter().map(|(_, a)| a.norm()).sum();
        if excess_vanishes(lo) {
            return 0.0;
        }
        while hi - lo > ESS_SUP_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if excess_vanishes(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Grid minimum and maximum of the real part.
    pub fn range(&self) -> (f64, f64) {
        (-self.max_of(|v| -v.re), self.max_of(|v| v.re))
    }
}

/// Mean L1 norm `N_1(p)` as a Haar integral over the lift torus.
pub fn besicovitch_norm(p: &TrigPoly, lift: &LiftSpec) -> Result<TorusIntegral> {
    besicovitch_norm_on(p, lift, TorusGrid::default_for(lift.torus_dim()))
}

pub fn besicovitch_norm_on(p: &TrigPoly, lift: &LiftSpec, grid: TorusGrid) -> Result<TorusIntegral> {
    let s = TorusSampler::for_poly(p, lift, grid)?;
    Ok(TorusIntegral {
        value: s.besicovitch_norm(),
        points: grid.points,
    })
}

/// `mean (|p| - M)^+`; nonnegative, nonincreasing in `M`.
pub fn excess_mean(p: &TrigPoly, level: f64, lift: &LiftSpec) -> Result<f64> {
    excess_mean_on(p, level, lift, TorusGrid::default_for(lift.torus_dim()))
}

pub fn excess_mean_on(p: &TrigPoly, level: f64, lift: &LiftSpec, grid: TorusGrid) -> Result<f64> {
    if !(level >= 0.0) {
        return Err(Error::Domain(format!("excess level must be >= 0, got {level}")));
    }
    TorusSampler::for_poly(p, lift, grid)?.excess_mean(level)
}

/// Essential supremum of `|p|`: the smallest level with vanishing excess mean.
pub fn ess_sup(p: &TrigPoly, lift: &LiftSpec) -> Result<f64> {
    ess_sup_on(p, lift, TorusGrid::default_for(lift.torus_dim()))
}

pub fn ess_sup_on(p: &TrigPoly, lift: &LiftSpec, grid: TorusGrid) -> Result<f64> {
    Ok(TorusSampler::for_poly(p, lift, grid)?.ess_sup())
}

/// Grid range `[min, max]` of a real-valued polynomial on its lift.
pub fn value_range(p: &TrigPoly, lift: &LiftSpec, grid: TorusGrid) -> Result<(f64, f64)> {
    if !p.is_real_valued() {
        return Err(Error::InvalidInput("value range needs a real-valued polynomial".into()));
    }
    Ok(TorusSampler::for_poly(p, lift, grid)?.range())
}
