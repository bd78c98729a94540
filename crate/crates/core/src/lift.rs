//! The torus lift: quasi-periodic data `u(x) = U(lambda_1 . x, ..., lambda_m . x)`
//! represented by a trigonometric polynomial `U` on the m-torus.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::apcore::{Frequency, RealBase, TrigPoly};
use crate::error::{Error, Result};
use crate::specgroup::{group_generated_in, spectrum, QBasis};

pub const MAX_TORUS_DIM: usize = 3;

/// Direction data `lambda_1..lambda_m` of a lift. Every spectral line of the
/// lifted data must be an integer combination of the directions.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    basis: QBasis,
    real: Vec<Vec<f64>>,
}

impl LiftSpec {
    pub fn new(directions: Vec<Frequency>) -> Result<Self> {
        let first = directions
            .first()
            .ok_or_else(|| Error::InvalidInput("a lift needs at least one direction".into()))?;
        if directions.len() > MAX_TORUS_DIM {
            return Err(Error::InvalidInput(format!(
                "torus dimension {} exceeds {MAX_TORUS_DIM}",
                directions.len()
            )));
        }
        let mut basis = QBasis::empty(first.base(), first.dims());
        for d in &directions {
            if !basis.try_push(d)? {
                return Err(Error::InvalidInput(format!(
                    "lift direction {d} is rationally dependent on the previous ones"
                )));
            }
        }
        let real = directions.iter().map(Frequency::to_real).collect();
        Ok(Self { basis, real })
    }

    /// Lift along the Hermite generators of the group spanned by `Sp(p)`.
    /// Constant data gets the single direction `base[0] e_1`.
    pub fn for_poly(p: &TrigPoly) -> Result<Self> {
        let sp = spectrum(p);
        let group = group_generated_in(p.base(), p.dims(), sp.iter())?;
        let mut gens = group.generators();
        if gens.is_empty() {
            let mut rows = vec![vec![crate::rational::int(0); p.base().len()]; p.dims()];
            rows[0][0] = crate::rational::int(1);
            gens.push(Frequency::new(p.base(), rows)?);
        }
        Self::new(gens)
    }

    pub fn torus_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn base(&self) -> &RealBase {
        self.basis.base()
    }

    pub fn dims(&self) -> usize {
        self.basis.dims()
    }

    pub fn directions(&self) -> &[Frequency] {
        self.basis.vectors()
    }

    pub fn directions_real(&self) -> &[Vec<f64>] {
        &self.real
    }

    pub fn qbasis(&self) -> &QBasis {
        &self.basis
    }

    /// Integer coordinates `k(lambda)` with `lambda = sum_j k_j lambda_j`.
    pub fn lattice_coords(&self, lambda: &Frequency) -> Result<Vec<i64>> {
        let coords = match self.basis.coords(lambda) {
            Ok(c) => c,
            Err(Error::Span(s)) => return Err(Error::Lattice(s)),
            Err(e) => return Err(e),
        };
        coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::Lattice(lambda.to_string()))
                } else {
                    Err(Error::Lattice(lambda.to_string()))
                }
            })
            .collect()
    }

    /// The torus representative `U` of `p`.
    pub fn lift_poly(&self, p: &TrigPoly) -> Result<TorusPoly> {
        if p.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: p.dims(),
            });
        }
        p.base().ensure_same(self.base())?;
        let terms = p
            .terms()
            .map(|(lambda, a)| Ok((self.lattice_coords(lambda)?, *a)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoly {
            dim: self.torus_dim(),
            terms,
            real: p.is_real_valued(),
        })
    }

    /// Torus angles `theta_j = lambda_j . x mod 1`.
    pub fn angles(&self, x: &[f64]) -> Vec<f64> {
        self.real
            .iter()
            .map(|l| {
                let s: f64 = l.iter().zip(x).map(|(a, b)| a * b).sum();
                s - s.floor()
            })
            .collect()
    }
}

/// Trigonometric polynomial on the m-torus with integer frequencies.
#[derive(Clone, Debug)]
pub struct TorusPoly {
    dim: usize,
    terms: Vec<(Vec<i64>, Complex64)>,
    real: bool,
}

impl TorusPoly {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<i64>, Complex64)] {
        &self.terms
    }

    pub fn is_real_valued(&self) -> bool {
        self.real
    }

    pub fn eval(&self, theta: &[f64]) -> Complex64 {
        let v: Complex64 = self
            .terms
            .iter()
            .map(|(k, a)| {
                let phase: f64 = k.iter().zip(theta).map(|(&kj, t)| kj as f64 * t).sum();
                a * Complex64::cis(TAU * phase)
            })
            .sum();
        if self.real {
            Complex64::new(v.re, 0.0)
        } else {
            v
        }
    }

    pub fn max_abs_frequency(&self) -> i64 {
        self.terms
            .iter()
            .flat_map(|(k, _)| k.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }
}
