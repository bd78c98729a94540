use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::apcore::{TorusGrid, TorusSampler, TrigPoly};
use crate::error::{Error, Result};
use crate::lift::LiftSpec;

/// Cells per parallel chunk; fixed so reductions do not depend on the thread count.
pub(crate) const CHUNK: usize = 4096;

/// Cell averages on the periodic unit m-torus, row-major with the last index
/// fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct CellField {
    sizes: Vec<usize>,
    data: Vec<f64>,
    t: f64,
    bounds: (f64, f64),
}

impl CellField {
    pub fn new(sizes: Vec<usize>, data: Vec<f64>, t: f64, bounds: (f64, f64)) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::GridMismatch(format!("invalid grid sizes {sizes:?}")));
        }
        let total: usize = sizes.iter().product();
        if data.len() != total {
            return Err(Error::GridMismatch(format!(
                "{} values for a {sizes:?} grid",
                data.len()
            )));
        }
        if let Some(v) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite cell value {v}")));
        }
        Ok(Self { sizes, data, t, bounds })
    }

    /// A field filled with one value.
    pub fn constant(sizes: Vec<usize>, value: f64) -> Result<Self> {
        let total = sizes.iter().product();
        Self::new(sizes, vec![value; total], 0.0, (value, value))
    }

    /// One-dimensional field from raw values; bounds are the data range.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        let mut f = Self::new(vec![n], values, 0.0, (0.0, 0.0))?;
        f.bounds = f.range();
        Ok(f)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn bounds(&self) -> (f64, f64) {
        self.bounds
    }

    pub(crate) fn with_data(&self, data: Vec<f64>, t: f64) -> Self {
        Self {
            sizes: self.sizes.clone(),
            data,
            t,
            bounds: self.bounds,
        }
    }

    pub(crate) fn set_time(&mut self, t: f64) {
        self.t = t;
    }

    pub fn same_grid(&self, other: &CellField) -> Result<()> {
        if self.sizes != other.sizes {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.sizes, other.sizes)));
        }
        Ok(())
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.sizes.len()];
        for j in (0..self.sizes.len().saturating_sub(1)).rev() {
            s[j] = s[j + 1] * self.sizes[j + 1];
        }
        s
    }

    /// Haar (cell) mean, summed in fixed chunks.
    pub fn mean(&self) -> f64 {
        self.chunked_sum(|v| v) / self.len() as f64
    }

    pub(crate) fn chunked_sum<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> f64 {
        let parts: Vec<f64> = self
            .data
            .par_chunks(CHUNK)
            .map(|c| c.iter().map(|&v| f(v)).sum::<f64>())
            .collect();
        parts.iter().sum()
    }

    /// Cell mean of `|v - c|`.
    pub fn distance_to(&self, c: f64) -> f64 {
        self.chunked_sum(|v| (v - c).abs()) / self.len() as f64
    }

    /// Cell mean of `|self - other|`.
    pub fn l1_distance(&self, other: &CellField) -> Result<f64> {
        self.same_grid(other)?;
        let parts: Vec<f64> = self
            .data
            .par_chunks(CHUNK)
            .zip(other.data.par_chunks(CHUNK))
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>())
            .collect();
        Ok(parts.iter().sum::<f64>() / self.len() as f64)
    }

    pub fn range(&self) -> (f64, f64) {
        self.data
            .par_chunks(CHUNK)
            .map(|c| {
                c.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                })
            })
            .reduce(
                || (f64::INFINITY, f64::NEG_INFINITY),
                |a, b| (a.0.min(b.0), a.1.max(b.1)),
            )
    }

    /// The field translated by `shift` cells along `axis`: `out[i] = self[i + shift]`.
    pub fn translated(&self, axis: usize, shift: usize) -> CellField {
        let strides = self.strides();
        let n = self.sizes[axis];
        let st = strides[axis];
        let data = (0..self.len())
            .map(|idx| {
                let i = (idx / st) % n;
                let j = (i + shift) % n;
                self.data[idx - i * st + j * st]
            })
            .collect();
        self.with_data(data, self.t)
    }

    /// `max |self - other|`.
    pub fn max_abs_difference(&self, other: &CellField) -> Result<f64> {
        self.same_grid(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Multilinear interpolation through the cell centers at torus angles `theta`.
    pub fn interpolate(&self, theta: &[f64]) -> f64 {
        let strides = self.strides();
        let m = self.dim();
        let mut base_idx = vec![0usize; m];
        let mut next_idx = vec![0usize; m];
        let mut w = vec![0.0; m];
        for j in 0..m {
            let n = self.sizes[j];
            let p = theta[j].rem_euclid(1.0) * n as f64 - 0.5;
            let i0 = p.floor();
            w[j] = p - i0;
            let i0 = (i0 as i64).rem_euclid(n as i64) as usize;
            base_idx[j] = i0;
            next_idx[j] = (i0 + 1) % n;
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << m) {
            let mut weight = 1.0;
            let mut idx = 0;
            for j in 0..m {
                if corner >> j & 1 == 1 {
                    weight *= w[j];
                    idx += next_idx[j] * strides[j];
                } else {
                    weight *= 1.0 - w[j];
                    idx += base_idx[j] * strides[j];
                }
            }
            if weight != 0.0 {
                acc += weight * self.data[idx];
            }
        }
        acc
    }
}

/// Cell average of `e^{2 pi i k theta}` over cell `i` of `n`.
fn cell_mode(k: i64, i: usize, n: usize) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let x = PI * k as f64 / n as f64;
    let sinc = x.sin() / x;
    let center = ((2 * i + 1) as i64 * k).rem_euclid(2 * n as i64) as f64 / (2 * n) as f64;
    Complex64::cis(TAU * center) * sinc
}

/// Exact cell averages of the lifted data; bounds `[-S, S]` with `S` the
/// essential supremum (never below the largest cell magnitude).
pub fn lift_initial(p: &TrigPoly, lift: &LiftSpec, sizes: &[usize]) -> Result<CellField> {
    if !p.is_real_valued() {
        return Err(Error::InvalidInput("initial data must be real-valued".into()));
    }
    let torus = lift.lift_poly(p)?;
    let m = torus.dim();
    if sizes.len() != m {
        return Err(Error::GridMismatch(format!(
            "{} grid sizes for a {m}-dimensional lift",
            sizes.len()
        )));
    }
    // tables[t][j][i]: cell average factor of term t, direction j, cell i
    let tables: Vec<Vec<Vec<Complex64>>> = torus
        .terms()
        .iter()
        .map(|(k, _)| {
            k.iter()
                .zip(sizes)
                .map(|(&kj, &n)| (0..n).map(|i| cell_mode(kj, i, n)).collect())
                .collect()
        })
        .collect();
    let total: usize = sizes.iter().product();
    let mut strides = vec![1; m];
    for j in (0..m.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * sizes[j + 1];
    }
    let data: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut v = Complex64::new(0.0, 0.0);
            for ((_, a), tab) in torus.terms().iter().zip(&tables) {
                let mut f = *a;
                for j in 0..m {
                    f *= tab[j][(idx / strides[j]) % sizes[j]];
                }
                v += f;
            }
            v.re
        })
        .collect();
    let sup = TorusSampler::new(torus, TorusGrid::default_for(m))?.ess_sup();
    let cell_sup = data.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let s = sup.max(cell_sup);
    CellField::new(sizes.to_vec(), data, 0.0, (-s, s))
}

/// `u(t, x)` sampled along the embedded line: the field interpolated at
/// `theta = (lambda_1 . x, .., lambda_m . x) mod 1`.
pub fn restrict_to_line(field: &CellField, lift: &LiftSpec, xs: &[Vec<f64>]) -> Result<Vec<f64>> {
    if field.dim() != lift.torus_dim() {
        return Err(Error::GridMismatch(format!(
            "{}-dimensional field for a {}-dimensional lift",
            field.dim(),
            lift.torus_dim()
        )));
    }
    Ok(xs.iter().map(|x| field.interpolate(&lift.angles(x))).collect())
}
