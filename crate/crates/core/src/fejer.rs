//! Bochner-Fejer kernels over a finite rational basis `lambda_1..lambda_N`.
//!
//! The order-`r` kernel is
//! `Phi_r(x) = sum_k prod_j (1 - |k_j|/(r+1)!) e^{2 pi i (sum_j k_j lambda_j / r!) . x}`
//! over `|k_j| < (r+1)!`, equivalently
//! `prod_j sin^2(pi (r+1) lambda_j . x) / ((r+1)! sin^2(pi lambda_j . x / r!))`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::apcore::{Frequency, TorusGrid, TorusSampler, TrigPoly};
use crate::error::{Error, Result};
use crate::lift::LiftSpec;
use crate::rational::{factorial, to_f64};
use crate::specgroup::QBasis;

pub const MAX_ORDER: u32 = 7;
/// Below this `|sin(pi s)|` a kernel factor switches to its Taylor limit.
pub const SINGULAR_EPS: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct FejerPlan {
    basis: QBasis,
    order: u32,
    r_fact: BigInt,
    r1_fact: BigInt,
}

impl FejerPlan {
    pub fn new(basis: QBasis, order: u32) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Order(order));
        }
        if basis.is_empty() {
            return Err(Error::InvalidInput("Fejer plan needs a non-empty basis".into()));
        }
        Ok(Self {
            basis,
            order,
            r_fact: factorial(order),
            r1_fact: factorial(order + 1),
        })
    }

    pub fn basis(&self) -> &QBasis {
        &self.basis
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of active basis vectors.
    pub fn active(&self) -> usize {
        self.basis.len()
    }

    pub fn index_bound(&self) -> i64 {
        self.r1_fact.to_i64().expect("(r+1)! fits for r <= 7")
    }

    fn weight_of_index(&self, k: &[i64]) -> BigRational {
        let m = BigRational::from_integer(self.r1_fact.clone());
        k.iter().fold(BigRational::one(), |acc, &kj| {
            acc * (BigRational::one() - BigRational::from_integer(BigInt::from(kj.abs())) / &m)
        })
    }
}

/// The weight attached to one spectral line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineWeight {
    /// `k` with `lambda = sum_j k_j lambda_j / r!`, or `None` outside the index range.
    pub index: Option<Vec<i64>>,
    pub weight: BigRational,
}

impl LineWeight {
    pub fn weight_f64(&self) -> f64 {
        to_f64(&self.weight)
    }
}

/// Lazily indexed weight table of a plan.
#[derive(Clone, Debug)]
pub struct FejerWeights {
    plan: FejerPlan,
}

impl FejerWeights {
    pub fn plan(&self) -> &FejerPlan {
        &self.plan
    }

    /// Weight of a multi-index; zero outside `|k_j| < (r+1)!`.
    pub fn at_index(&self, k: &[i64]) -> Result<BigRational> {
        if k.len() != self.plan.active() {
            return Err(Error::DimensionMismatch {
                expected: self.plan.active(),
                found: k.len(),
            });
        }
        if k.iter().any(|kj| kj.abs() >= self.plan.index_bound()) {
            return Ok(BigRational::zero());
        }
        Ok(self.plan.weight_of_index(k))
    }

    /// Frequency `sum_j k_j lambda_j / r!` of a multi-index.
    pub fn frequency(&self, k: &[i64]) -> Result<Frequency> {
        let coords: Vec<BigRational> = k
            .iter()
            .map(|&kj| BigRational::new(BigInt::from(kj), self.plan.r_fact.clone()))
            .collect();
        self.plan.basis.reconstruct(&coords)
    }

    /// Weight at a spectral line, found by inverting `lambda = sum_j k_j lambda_j / r!`.
    pub fn at(&self, lambda: &Frequency) -> Result<LineWeight> {
        let coords = self.plan.basis.coords(lambda)?;
        let r_fact = BigRational::from_integer(self.plan.r_fact.clone());
        let bound = BigRational::from_integer(self.plan.r1_fact.clone());
        let mut index = Vec::with_capacity(coords.len());
        for c in coords {
            let k = c * &r_fact;
            if !k.is_integer() || k.abs() >= bound {
                return Ok(LineWeight {
                    index: None,
                    weight: BigRational::zero(),
                });
            }
            index.push(k.to_integer().to_i64().expect("bounded by (r+1)!"));
        }
        let weight = self.plan.weight_of_index(&index);
        Ok(LineWeight {
            index: Some(index),
            weight,
        })
    }
}

pub fn fejer_weights(plan: &FejerPlan) -> FejerWeights {
    FejerWeights { plan: plan.clone() }
}

/// One-dimensional Fejer factor `sin^2(pi M s) / (M sin^2(pi s))`, nonnegative.
pub fn fejer_factor(m: f64, s: f64) -> f64 {
    let delta = s - s.round();
    let den = (PI * delta).sin();
    if den.abs() < SINGULAR_EPS {
        let pd = PI * delta;
        return (m * (1.0 - (m * m - 1.0) * pd * pd / 3.0)).max(0.0);
    }
    let num = (PI * m * delta).sin();
    num * num / (m * den * den)
}

/// Closed-form kernel value `Phi_r(x)`.
pub fn kernel_eval(plan: &FejerPlan, x: &[f64]) -> f64 {
    let m = plan.index_bound() as f64;
    let r_fact = plan.r_fact.to_f64().expect("small factorial");
    plan.basis
        .vectors()
        .iter()
        .map(|l| fejer_factor(m, l.dot(x) / r_fact))
        .product()
}

/// The kernel as an explicit trigonometric polynomial. Offered only for
/// single-vector plans with `r <= 2`.
pub fn kernel_trigpoly(plan: &FejerPlan) -> Result<TrigPoly> {
    if plan.active() != 1 || plan.order > 2 {
        return Err(Error::InvalidInput(
            "kernel materialization needs one basis vector and r <= 2".into(),
        ));
    }
    let w = fejer_weights(plan);
    let b = plan.basis.base();
    let mut p = TrigPoly::zero(b, plan.basis.dims());
    let bound = plan.index_bound();
    for k in (1 - bound)..bound {
        let weight = to_f64(&w.at_index(&[k])?);
        p.add_term(&w.frequency(&[k])?, Complex64::new(weight, 0.0))?;
    }
    Ok(p)
}

/// Bochner-Fejer mean `sigma_r p`: every amplitude times its line weight.
pub fn bochner_fejer(p: &TrigPoly, plan: &FejerPlan) -> Result<TrigPoly> {
    let w = fejer_weights(plan);
    let mut out = TrigPoly::zero(p.base(), p.dims());
    for (lambda, a) in p.terms() {
        let lw = w.at(lambda)?;
        if !lw.weight.is_zero() {
            out.add_term(lambda, a * lw.weight_f64())?;
        }
    }
    Ok(out)
}

/// Torus quadrature of `mean_x mean_y omega(|p(x) - p(y)|) Phi_r(x - y)` with
/// `omega(s) = min(s, 1)`.
///
/// The lift must use the plan's basis as its directions. Only lattice lines of
/// the kernel survive the mean, which leaves the periodic Fejer kernel of
/// order `r + 1` in each torus direction.
pub fn oscillation(p: &TrigPoly, plan: &FejerPlan, lift: &LiftSpec, grid: TorusGrid) -> Result<f64> {
    if lift.directions() != plan.basis.vectors() {
        return Err(Error::InvalidInput(
            "oscillation needs the lift directions to equal the plan basis".into(),
        ));
    }
    let m = lift.torus_dim();
    let g = grid.points;
    let values = TorusSampler::for_poly(p, lift, grid)?.values();
    let order = f64::from(plan.order + 1);
    let kernel1: Vec<f64> = (0..g).map(|i| fejer_factor(order, i as f64 / g as f64)).collect();
    let total = values.len();
    let split = |mut idx: usize| {
        let mut out = vec![0usize; m];
        for slot in out.iter_mut().rev() {
            *slot = idx % g;
            idx /= g;
        }
        out
    };
    let join = |ix: &[usize]| ix.iter().fold(0usize, |acc, &i| acc * g + i);
    use rayon::prelude::*;
    let rows: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|a| {
            let ia = split(a);
            let mut acc = 0.0;
            for z in 0..total {
                let iz = split(z);
                let kern: f64 = iz.iter().map(|&i| kernel1[i]).product();
                if kern == 0.0 {
                    continue;
                }
                let ib: Vec<usize> = ia.iter().zip(&iz).map(|(&x, &y)| (x + g - y) % g).collect();
                let d = (values[a] - values[join(&ib)]).norm();
                acc += d.min(1.0) * kern;
            }
            acc
        })
        .collect();
    Ok(rows.iter().sum::<f64>() / (total as f64 * total as f64))
}
