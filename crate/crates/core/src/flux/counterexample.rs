//! Traveling waves along a degenerate direction: when `xi . phi` is affine with
//! slope `alpha` on an interval, `u(t, x) = W(xi . x - alpha t)` is an exact
//! (smooth, hence entropy) solution for any 1-periodic profile `W` with values
//! in that interval. Its distance to the mean never decays.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;

use super::nd::{NdReport, NdWitness};
use super::piecewise::PiecewiseFlux;
use super::poly;
use crate::apcore::{Frequency, TrigPoly};
use crate::error::{Error, Result};
use crate::rational::to_f64;

/// Exact solution `u(t, x) = W(xi . x - speed * t)`.
#[derive(Clone, Debug)]
pub struct TravelingWave {
    xi: Frequency,
    xi_real: Vec<f64>,
    speed: f64,
    modes: Vec<(i64, Complex64)>,
    flux_derivs: Vec<Vec<f64>>,
}

impl TravelingWave {
    pub fn xi(&self) -> &Frequency {
        &self.xi
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// Profile value `W(s)`.
    pub fn profile(&self, s: f64) -> f64 {
        profile_eval(&self.modes, s, 0)
    }

    pub fn profile_derivative(&self, s: f64) -> f64 {
        profile_eval(&self.modes, s, 1)
    }

    pub fn phase(&self, t: f64, x: &[f64]) -> f64 {
        self.xi_real.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - self.speed * t
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> f64 {
        self.profile(self.phase(t, x))
    }

    /// Mean value of the solution, equal to the profile's zero mode.
    pub fn mean(&self) -> f64 {
        self.modes.iter().filter(|(k, _)| *k == 0).map(|(_, a)| a.re).sum()
    }

    /// `mean_x |u(t, x) - C|` with `C` the mean, by the rectangle rule in the
    /// phase variable on `points` nodes.
    pub fn distance_to_mean(&self, t: f64, points: usize) -> f64 {
        let c = self.mean();
        let shift = self.speed * t;
        let h = 1.0 / points as f64;
        let total: f64 = (0..points)
            .map(|i| (self.profile(i as f64 * h - shift) - c).abs())
            .sum();
        total * h
    }

    /// Pointwise entropy residual `sign(u-k) (u_t + xi . phi'(u) W')`, which is
    /// the smooth-region form of `|u-k|_t + div(sign(u-k)(phi(u)-phi(k)))`.
    pub fn entropy_residual(&self, t: f64, x: &[f64], k: f64) -> f64 {
        let s = self.phase(t, x);
        let u = self.profile(s);
        let w1 = self.profile_derivative(s);
        let transport: f64 = self
            .flux_derivs
            .iter()
            .zip(&self.xi_real)
            .map(|(d, xi)| xi * poly::eval(d, u))
            .sum();
        (u - k).signum() * w1 * (transport - self.speed)
    }
}

fn profile_eval(modes: &[(i64, Complex64)], s: f64, order: u32) -> f64 {
    modes
        .iter()
        .map(|(k, a)| {
            let w = TAU * *k as f64;
            let factor = Complex64::new(0.0, w).powu(order);
            (a * factor * Complex64::cis(w * s)).re
        })
        .sum()
}

/// Range of a real 1-periodic profile: dense sampling refined by Newton steps
/// on the derivative.
pub fn profile_range(modes: &[(i64, Complex64)]) -> (f64, f64) {
    const SAMPLES: usize = 4096;
    let h = 1.0 / SAMPLES as f64;
    let vals: Vec<f64> = (0..SAMPLES).map(|i| profile_eval(modes, i as f64 * h, 0)).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..SAMPLES {
        let (prev, next) = (vals[(i + SAMPLES - 1) % SAMPLES], vals[(i + 1) % SAMPLES]);
        let v = vals[i];
        let is_max = v >= prev && v >= next;
        let is_min = v <= prev && v <= next;
        if !(is_max || is_min) {
            lo = lo.min(v);
            hi = hi.max(v);
            continue;
        }
        let mut s = i as f64 * h;
        for _ in 0..8 {
            let d2 = profile_eval(modes, s, 2);
            if d2 == 0.0 {
                break;
            }
            let step = profile_eval(modes, s, 1) / d2;
            if step.abs() > h {
                break;
            }
            s -= step;
        }
        let refined = profile_eval(modes, s, 0);
        let best = if is_max { v.max(refined) } else { v.min(refined) };
        lo = lo.min(best);
        hi = hi.max(best);
    }
    (lo, hi)
}

fn integer_modes(w: &TrigPoly) -> Result<Vec<(i64, Complex64)>> {
    if w.dims() != 1 || !w.base().is_rational() {
        return Err(Error::InvalidInput(
            "a profile must be one-dimensional over the rational base".into(),
        ));
    }
    if !w.is_real_valued() {
        return Err(Error::InvalidInput("a profile must be real-valued".into()));
    }
    w.terms()
        .map(|(lambda, a)| {
            let c = lambda.coord(0, 0);
            if !c.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "profile frequency {lambda} is not an integer"
                )));
            }
            let k = num_traits::ToPrimitive::to_i64(&c.to_integer())
                .ok_or_else(|| Error::InvalidInput(format!("profile frequency {lambda} too large")))?;
            Ok((k, *a))
        })
        .collect()
}

/// Builds `u_0(x) = W(xi . x)` and its exact traveling-wave solution from a
/// failing non-degeneracy report.
pub fn make_counterexample(
    flux: &PiecewiseFlux,
    report: &NdReport,
    profile: &TrigPoly,
) -> Result<(TrigPoly, TravelingWave)> {
    let witness: &NdWitness = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("a counterexample needs a failing report with a witness".into()))?;
    let modes = integer_modes(profile)?;
    let (lo, hi) = profile_range(&modes);
    let (a, b) = (to_f64(&witness.interval.0), to_f64(&witness.interval.1));
    const SLACK: f64 = 1e-12;
    if lo < a - SLACK || hi > b + SLACK {
        return Err(Error::Range { lo, hi, a, b });
    }
    let xi = witness.xi.clone();
    let mut u0 = TrigPoly::zero(xi.base(), xi.dims());
    for &(k, amp) in &modes {
        let lambda = xi.scale(&BigRational::from_integer(k.into()));
        u0.add_term(&lambda, amp)?;
    }
    let piece = &flux.pieces()[witness.piece];
    let flux_derivs = piece
        .iter()
        .map(|c| poly::derivative(&poly::to_f64_coeffs(c)))
        .collect();
    let wave = TravelingWave {
        xi_real: xi.to_real(),
        speed: witness.slope_f64(),
        xi,
        modes,
        flux_derivs,
    };
    Ok((u0, wave))
}
