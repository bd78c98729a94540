//! Exact decision of the non-degeneracy condition: no nonzero group element
//! `xi` makes `u -> xi . phi(u)` affine on a non-empty interval.
//!
//! Any interval contains a sub-interval interior to one piece, so it is enough
//! to test each piece separately. On a piece, `xi . phi` is affine iff every
//! coefficient of degree >= 2 vanishes. With `xi = sum_g z_g gen_g` and the
//! base values rationally independent, that is a homogeneous rational linear
//! system in the integer vector `z`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::piecewise::PiecewiseFlux;
use crate::apcore::Frequency;
use crate::error::{Error, Result};
use crate::rational::{lcm_denominators, to_f64};
use crate::specgroup::{hnf::left_kernel, FreqGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

/// A group element making the flux affine on one piece:
/// `xi . phi(u) = intercept + slope * u` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdWitness {
    pub xi: Frequency,
    /// Integer coefficients of `xi` over the group generators.
    pub coefficients: Vec<BigInt>,
    pub piece: usize,
    /// The piece's interval intersected with the checked range.
    pub interval: (BigRational, BigRational),
    /// Coordinates of the slope over the real base.
    pub slope: Vec<BigRational>,
    pub intercept: Vec<BigRational>,
}

impl NdWitness {
    pub fn slope_f64(&self) -> f64 {
        combine_base(&self.slope, self.xi.base().values())
    }

    pub fn intercept_f64(&self) -> f64 {
        combine_base(&self.intercept, self.xi.base().values())
    }
}

fn combine_base(coords: &[BigRational], values: &[f64]) -> f64 {
    coords.iter().zip(values).map(|(c, v)| to_f64(c) * v).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdReport {
    pub verdict: Verdict,
    pub witness: Option<NdWitness>,
}

impl NdReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Coordinates over the base of the degree-`k` coefficient of `xi . phi` on a piece.
pub fn degree_coefficient(xi: &Frequency, piece: &[Vec<BigRational>], k: usize) -> Vec<BigRational> {
    let d = xi.base().len();
    (0..d)
        .map(|l| {
            piece
                .iter()
                .enumerate()
                .filter_map(|(i, comp)| comp.get(k).map(|c| c * xi.coord(i, l)))
                .fold(BigRational::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// True when `xi . phi` restricted to `piece` has no term of degree >= 2.
pub fn is_affine_on_piece(xi: &Frequency, piece: &[Vec<BigRational>]) -> bool {
    let deg = piece.iter().map(Vec::len).max().unwrap_or(0);
    (2..deg).all(|k| degree_coefficient(xi, piece, k).iter().all(Zero::is_zero))
}

pub fn nd_check(flux: &PiecewiseFlux, group: &FreqGroup, a: &BigRational, b: &BigRational) -> Result<NdReport> {
    if group.dims() != flux.dims() {
        return Err(Error::DimensionMismatch {
            expected: flux.dims(),
            found: group.dims(),
        });
    }
    let bps = flux.breakpoints();
    if a < &bps[0] || b > bps.last().expect("non-empty") {
        return Err(Error::Domain(format!(
            "interval [{a}, {b}] is not inside the flux domain [{}, {}]",
            bps[0],
            bps[bps.len() - 1]
        )));
    }
    let holds = NdReport {
        verdict: Verdict::Holds,
        witness: None,
    };
    if a >= b || group.rank() == 0 {
        return Ok(holds);
    }
    let gens = group.generators();
    let d = group.base().len();
    for (i, piece) in flux.pieces().iter().enumerate() {
        let lo = if &bps[i] > a { bps[i].clone() } else { a.clone() };
        let hi = if &bps[i + 1] < b { bps[i + 1].clone() } else { b.clone() };
        if lo >= hi {
            continue;
        }
        let deg = piece.iter().map(Vec::len).max().unwrap_or(0);
        // constraint columns (k, l); rows indexed by generators
        let mut columns: Vec<Vec<BigRational>> = Vec::new();
        for k in 2..deg {
            for l in 0..d {
                columns.push(
                    gens.iter()
                        .map(|g| {
                            piece
                                .iter()
                                .enumerate()
                                .filter_map(|(c, comp)| comp.get(k).map(|x| x * g.coord(c, l)))
                                .fold(BigRational::zero(), |acc, x| acc + x)
                        })
                        .collect(),
                );
            }
        }
        let kernel = if columns.is_empty() {
            // affine piece: every element qualifies
            (0..gens.len())
                .map(|g| (0..gens.len()).map(|h| BigInt::from((g == h) as i64)).collect())
                .collect()
        } else {
            let scaled: Vec<Vec<BigInt>> = columns
                .iter()
                .map(|col| {
                    let m = BigRational::from_integer(lcm_denominators(col.iter()));
                    col.iter().map(|x| (x * &m).to_integer()).collect()
                })
                .collect();
            let rows: Vec<Vec<BigInt>> = (0..gens.len())
                .map(|g| scaled.iter().map(|col| col[g].clone()).collect())
                .collect();
            left_kernel(&rows)
        };
        let best = kernel
            .into_iter()
            .map(|z| {
                let xi = group.combine(&z).expect("kernel width matches rank");
                if xi.is_positive() {
                    (xi, z)
                } else {
                    (-xi, z.into_iter().map(|x| -x).collect())
                }
            })
            .min_by(|(x, _), (y, _)| x.max_abs_coord().cmp(&y.max_abs_coord()).then_with(|| x.cmp(y)));
        if let Some((xi, coefficients)) = best {
            let slope = degree_coefficient(&xi, piece, 1);
            let intercept = degree_coefficient(&xi, piece, 0);
            return Ok(NdReport {
                verdict: Verdict::Fails,
                witness: Some(NdWitness {
                    xi,
                    coefficients,
                    piece: i,
                    interval: (lo, hi),
                    slope,
                    intercept,
                }),
            });
        }
    }
    Ok(holds)
}

/// Float wrapper: the interval ends are rationalized exactly from their binary values.
pub fn nd_check_f64(flux: &PiecewiseFlux, group: &FreqGroup, a: f64, b: f64) -> Result<NdReport> {
    let conv = |x: f64| BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite bound {x}")));
    nd_check(flux, group, &conv(a)?, &conv(b)?)
}
