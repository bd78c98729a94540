use num_rational::BigRational;
use num_traits::Zero;

use super::poly;
use super::scalar::ScalarFlux;
use crate::error::{Error, Result};
use crate::rational::{int, rationalize, to_f64};

/// Largest denominator used when float flux coefficients are rationalized.
pub const RATIONALIZE_MAX_DEN: u64 = 1_000_000;

/// Continuous flux vector `phi = (phi_1, .., phi_n)`, polynomial on each
/// interval between consecutive breakpoints. `pieces[i][c]` holds the
/// ascending coefficients of component `c` on interval `i`, in the variable `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFlux {
    dims: usize,
    breakpoints: Vec<BigRational>,
    pieces: Vec<Vec<Vec<BigRational>>>,
}

impl PiecewiseFlux {
    pub fn new(dims: usize, breakpoints: Vec<BigRational>, pieces: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidInput("flux needs at least one component".into()));
        }
        if pieces.is_empty() || breakpoints.len() != pieces.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "{} breakpoints cannot bound {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("breakpoints must increase strictly".into()));
        }
        for (i, piece) in pieces.iter().enumerate() {
            if piece.len() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    found: piece.len(),
                });
            }
            if i > 0 {
                let u = &breakpoints[i];
                for c in 0..dims {
                    let left = poly::eval_exact(&pieces[i - 1][c], u);
                    let right = poly::eval_exact(&piece[c], u);
                    if left != right {
                        return Err(Error::InvalidInput(format!(
                            "flux component {c} jumps at u = {u}: {left} vs {right}"
                        )));
                    }
                }
            }
        }
        let pieces = pieces.into_iter().map(|p| p.into_iter().map(trim).collect()).collect();
        Ok(Self {
            dims,
            breakpoints,
            pieces,
        })
    }

    /// A single polynomial piece per component on `[lo, hi]`.
    pub fn polynomial(lo: BigRational, hi: BigRational, components: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::new(components.len(), vec![lo, hi], vec![components])
    }

    /// Burgers flux `u^2 / 2` on `[lo, hi]`.
    pub fn burgers(lo: i64, hi: i64) -> Result<Self> {
        Self::polynomial(
            int(lo),
            int(hi),
            vec![vec![int(0), int(0), crate::rational::ratio(1, 2)]],
        )
    }

    /// Linear flux `c u` on `[lo, hi]`.
    pub fn linear(c: BigRational, lo: i64, hi: i64) -> Result<Self> {
        Self::polynomial(int(lo), int(hi), vec![vec![int(0), c]])
    }

    /// Float coefficients, rationalized with denominators up to [`RATIONALIZE_MAX_DEN`].
    pub fn from_f64(dims: usize, breakpoints: &[f64], pieces: &[Vec<Vec<f64>>]) -> Result<Self> {
        let mut inexact = false;
        let mut conv = |x: f64| -> Result<BigRational> {
            let q = rationalize(x, RATIONALIZE_MAX_DEN)?;
            inexact |= to_f64(&q) != x;
            Ok(q)
        };
        let bps = breakpoints.iter().map(|&x| conv(x)).collect::<Result<Vec<_>>>()?;
        let ps = pieces
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| c.iter().map(|&x| conv(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if inexact {
            log::warn!("flux coefficients rationalized with denominators <= {RATIONALIZE_MAX_DEN}");
        }
        Self::new(dims, bps, ps)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<Vec<BigRational>>] {
        &self.pieces
    }

    pub fn domain(&self) -> (f64, f64) {
        (
            to_f64(&self.breakpoints[0]),
            to_f64(self.breakpoints.last().expect("non-empty")),
        )
    }

    pub fn ensure_covers(&self, a: f64, b: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if !(a <= b) || a < lo || b > hi {
            return Err(Error::Domain(format!(
                "interval [{a}, {b}] is not inside the flux domain [{lo}, {hi}]"
            )));
        }
        Ok(())
    }

    fn breakpoints_f64(&self) -> Vec<f64> {
        self.breakpoints.iter().map(to_f64).collect()
    }

    /// `sum_c w_c phi_c` as a real-coefficient scalar flux.
    pub fn combine(&self, weights: &[f64]) -> Result<ScalarFlux> {
        if weights.len() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: weights.len(),
            });
        }
        let pieces = self
            .pieces
            .iter()
            .map(|piece| {
                let deg = piece.iter().map(Vec::len).max().unwrap_or(0);
                let mut acc = vec![0.0; deg];
                for (comp, w) in piece.iter().zip(weights) {
                    for (a, c) in acc.iter_mut().zip(comp) {
                        *a += w * to_f64(c);
                    }
                }
                acc
            })
            .collect();
        Ok(ScalarFlux::new(self.breakpoints_f64(), pieces))
    }

    pub fn component(&self, c: usize) -> ScalarFlux {
        let mut w = vec![0.0; self.dims];
        w[c] = 1.0;
        self.combine(&w).expect("matching dimension")
    }

    pub fn eval(&self, u: f64) -> Vec<f64> {
        (0..self.dims).map(|c| self.component(c).eval(u)).collect()
    }

    /// Per-component `max |phi_c'|` over `[a, b]`.
    pub fn lipschitz_constant(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        self.ensure_covers(a, b)?;
        let bps = self.breakpoints_f64();
        Ok((0..self.dims)
            .map(|c| {
                let mut l: f64 = 0.0;
                for (i, piece) in self.pieces.iter().enumerate() {
                    let lo = bps[i].max(a);
                    let hi = bps[i + 1].min(b);
                    if lo > hi {
                        continue;
                    }
                    let d = poly::derivative(&poly::to_f64_coeffs(&piece[c]));
                    l = l.max(poly::max_abs(&d, lo, hi));
                }
                l
            })
            .collect())
    }
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}
