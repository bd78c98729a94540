use std::fmt;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::RealBase;
use crate::error::{Error, Result};
use crate::rational;

/// A frequency vector in `R^n` whose components are exact rational
/// combinations of a [`RealBase`]: component `i` equals
/// `sum_k coords[i][k] * base[k]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    base: RealBase,
    dims: usize,
    // row-major dims x base.len()
    coords: Vec<BigRational>,
}

impl Frequency {
    pub fn zero(base: &RealBase, dims: usize) -> Self {
        Self {
            base: base.clone(),
            dims,
            coords: vec![BigRational::zero(); dims * base.len()],
        }
    }

    /// `rows[i][k]` is the coefficient of `base[k]` in component `i`.
    pub fn new(base: &RealBase, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dims = rows.len();
        if dims == 0 {
            return Err(Error::InvalidInput("frequency needs at least one component".into()));
        }
        let mut coords = Vec::with_capacity(dims * base.len());
        for row in rows {
            if row.len() != base.len() {
                return Err(Error::DimensionMismatch {
                    expected: base.len(),
                    found: row.len(),
                });
            }
            coords.extend(row);
        }
        Ok(Self {
            base: base.clone(),
            dims,
            coords,
        })
    }

    /// Convenience constructor from `[num, den]` pairs, one row per component.
    pub fn from_pairs(base: &RealBase, rows: &[&[[i64; 2]]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&p| rational::from_pair(p)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(base, rows)
    }

    /// One-dimensional frequency `sum_k coeffs[k] * base[k]`.
    pub fn scalar(base: &RealBase, coeffs: &[[i64; 2]]) -> Result<Self> {
        Self::from_pairs(base, &[coeffs])
    }

    /// The integer frequency `k` over the rational base `{1}` (n = 1).
    pub fn integer(base: &RealBase, k: i64) -> Result<Self> {
        if !base.is_rational() {
            return Err(Error::BaseMismatch(format!(
                "integer frequency needs base {{1}}, got {base}"
            )));
        }
        Self::scalar(base, &[[k, 1]])
    }

    /// Builds a frequency from a flat coordinate vector of length `dims * base.len()`.
    pub fn from_flat(base: &RealBase, dims: usize, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != dims * base.len() {
            return Err(Error::DimensionMismatch {
                expected: dims * base.len(),
                found: coords.len(),
            });
        }
        Ok(Self {
            base: base.clone(),
            dims,
            coords,
        })
    }

    pub fn base(&self) -> &RealBase {
        &self.base
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Flat row-major coordinates (`dims * base.len()` entries).
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord(&self, component: usize, base_index: usize) -> &BigRational {
        &self.coords[component * self.base.len() + base_index]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.coords.chunks(self.base.len()).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Sign convention used to pair `lambda` with `-lambda`: the first
    /// nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }

    pub fn ensure_compatible(&self, other: &Frequency) -> Result<()> {
        self.base.ensure_same(&other.base)?;
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: other.dims,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Frequency) -> Result<Frequency> {
        self.ensure_compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self {
            base: self.base.clone(),
            dims: self.dims,
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Frequency) -> Result<Frequency> {
        self.checked_add(&-other.clone())
    }

    pub fn scale(&self, factor: &BigRational) -> Frequency {
        Self {
            base: self.base.clone(),
            dims: self.dims,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Real components `lambda_i` as floating point numbers.
    pub fn to_real(&self) -> Vec<f64> {
        let d = self.base.len();
        (0..self.dims)
            .map(|i| {
                (0..d)
                    .map(|k| rational::to_f64(&self.coords[i * d + k]) * self.base.values()[k])
                    .sum()
            })
            .collect()
    }

    /// `lambda . x`
    pub fn dot(&self, x: &[f64]) -> f64 {
        let d = self.base.len();
        let values = self.base.values();
        let mut acc = 0.0;
        for (i, xi) in x.iter().enumerate().take(self.dims) {
            for k in 0..d {
                let c = &self.coords[i * d + k];
                if !c.is_zero() {
                    acc += rational::to_f64(c) * values[k] * xi;
                }
            }
        }
        acc
    }

    /// Largest absolute rational coordinate.
    pub fn max_abs_coord(&self) -> BigRational {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl Neg for Frequency {
    type Output = Frequency;

    fn neg(mut self) -> Frequency {
        for c in &mut self.coords {
            *c = -c.clone();
        }
        self
    }
}

fn fmt_component(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational], labels: &[String]) -> fmt::Result {
    let mut first = true;
    for (c, label) in coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        if label == "1" {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{label}")?;
        } else {
            write!(f, "{mag}*{label}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.base.len();
        let labels = self.base.labels();
        if self.dims == 1 {
            return fmt_component(f, &self.coords, labels);
        }
        write!(f, "(")?;
        for i in 0..self.dims {
            if i > 0 {
                write!(f, ", ")?;
            }
            fmt_component(f, &self.coords[i * d..(i + 1) * d], labels)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frequency({self})")
    }
}
