use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hnf::{row_hnf, solve_in_lattice, IntRow};
use crate::apcore::{Frequency, RealBase, TrigPoly};
use crate::error::{Error, Result};
use crate::rational::lcm_denominators;

/// The spectrum: frequencies with a nonzero stored amplitude.
pub fn spectrum(p: &TrigPoly) -> BTreeSet<Frequency> {
    p.frequencies().cloned().collect()
}

/// A finitely generated additive group of frequencies, stored as an integer
/// matrix in row Hermite normal form: the group is `{ z^T gens / D : z integer }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqGroup {
    base: RealBase,
    dims: usize,
    denominator: BigInt,
    gens: Vec<IntRow>,
}

/// Proof that a frequency is an integer combination of a group's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub coefficients: Vec<BigInt>,
}

impl FreqGroup {
    pub fn zero(base: &RealBase, dims: usize) -> Self {
        Self {
            base: base.clone(),
            dims,
            denominator: BigInt::one(),
            gens: Vec::new(),
        }
    }

    pub fn base(&self) -> &RealBase {
        &self.base
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// HNF integer rows (each row divided by the denominator is a generator).
    pub fn hnf(&self) -> &[IntRow] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> Vec<Frequency> {
        self.gens
            .iter()
            .map(|row| {
                let coords = row
                    .iter()
                    .map(|x| BigRational::new(x.clone(), self.denominator.clone()))
                    .collect();
                Frequency::from_flat(&self.base, self.dims, coords).expect("consistent shape")
            })
            .collect()
    }

    /// Decides `lambda in G`; on success returns integer coefficients over
    /// [`FreqGroup::generators`].
    pub fn member(&self, lambda: &Frequency) -> Result<Option<Membership>> {
        self.base.ensure_same(lambda.base())?;
        if lambda.dims() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: lambda.dims(),
            });
        }
        let d = BigRational::from_integer(self.denominator.clone());
        let mut scaled = Vec::with_capacity(lambda.coords().len());
        for c in lambda.coords() {
            let v = c * &d;
            if !v.is_integer() {
                return Ok(None);
            }
            scaled.push(v.to_integer());
        }
        Ok(solve_in_lattice(&self.gens, &scaled).map(|coefficients| Membership { coefficients }))
    }

    /// Reconstructs `sum_i k_i g_i` exactly; used to verify certificates.
    pub fn combine(&self, coefficients: &[BigInt]) -> Result<Frequency> {
        if coefficients.len() != self.gens.len() {
            return Err(Error::DimensionMismatch {
                expected: self.gens.len(),
                found: coefficients.len(),
            });
        }
        let width = self.dims * self.base.len();
        let mut acc = vec![BigInt::zero(); width];
        for (k, row) in coefficients.iter().zip(&self.gens) {
            for (a, x) in acc.iter_mut().zip(row) {
                *a += k * x;
            }
        }
        let coords = acc
            .into_iter()
            .map(|x| BigRational::new(x, self.denominator.clone()))
            .collect();
        Frequency::from_flat(&self.base, self.dims, coords)
    }

    /// True when every generator of `other` is a member of `self`.
    pub fn contains_group(&self, other: &FreqGroup) -> Result<bool> {
        for g in other.generators() {
            if self.member(&g)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The smallest additive group containing `freqs`. An empty input gives the
/// zero group over `base` (when supplied through [`group_generated_in`]).
pub fn group_generated<'a, I>(freqs: I) -> Result<FreqGroup>
where
    I: IntoIterator<Item = &'a Frequency>,
{
    let freqs: Vec<&Frequency> = freqs.into_iter().collect();
    let Some(first) = freqs.first() else {
        return Ok(FreqGroup::zero(&RealBase::rational(), 1));
    };
    group_generated_in(first.base(), first.dims(), freqs.iter().copied())
}

/// Like [`group_generated`] with an explicit ambient base and dimension.
pub fn group_generated_in<'a, I>(base: &RealBase, dims: usize, freqs: I) -> Result<FreqGroup>
where
    I: IntoIterator<Item = &'a Frequency>,
{
    let freqs: Vec<&Frequency> = freqs.into_iter().collect();
    for f in &freqs {
        base.ensure_same(f.base())?;
        if f.dims() != dims {
            return Err(Error::DimensionMismatch {
                expected: dims,
                found: f.dims(),
            });
        }
    }
    let denominator = lcm_denominators(freqs.iter().flat_map(|f| f.coords()));
    let d = BigRational::from_integer(denominator.clone());
    let rows: Vec<IntRow> = freqs
        .iter()
        .map(|f| f.coords().iter().map(|c| (c * &d).to_integer()).collect())
        .collect();
    let width = dims * base.len();
    Ok(FreqGroup {
        base: base.clone(),
        dims,
        denominator,
        gens: row_hnf(rows, width),
    })
}
