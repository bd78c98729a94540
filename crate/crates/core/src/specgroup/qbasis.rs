use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::apcore::{Frequency, RealBase};
use crate::error::{Error, Result};

/// A Q-linearly independent list of frequencies with exact coordinates for
/// anything in their rational span.
///
/// Internally keeps a reduced echelon form `E = T B` of the basis `B` so a
/// vector is expanded by one elimination pass.
#[derive(Clone, Debug)]
pub struct QBasis {
    base: RealBase,
    dims: usize,
    vectors: Vec<Frequency>,
    // (pivot column, echelon row)
    echelon: Vec<(usize, Vec<BigRational>)>,
    // echelon[i] = sum_j transform[i][j] * vectors[j]
    transform: Vec<Vec<BigRational>>,
}

impl QBasis {
    pub fn empty(base: &RealBase, dims: usize) -> Self {
        Self {
            base: base.clone(),
            dims,
            vectors: Vec::new(),
            echelon: Vec::new(),
            transform: Vec::new(),
        }
    }

    pub fn vectors(&self) -> &[Frequency] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn base(&self) -> &RealBase {
        &self.base
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Eliminates `v` against the echelon rows; returns the residual and the
    /// multipliers used for each echelon row.
    fn reduce(&self, v: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rest = v.to_vec();
        let mut mult = Vec::with_capacity(self.echelon.len());
        for (col, row) in &self.echelon {
            let m = rest[*col].clone() / &row[*col];
            if !m.is_zero() {
                for (r, e) in rest.iter_mut().zip(row) {
                    *r -= &m * e;
                }
            }
            mult.push(m);
        }
        (rest, mult)
    }

    fn check(&self, lambda: &Frequency) -> Result<()> {
        self.base.ensure_same(lambda.base())?;
        if lambda.dims() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: lambda.dims(),
            });
        }
        Ok(())
    }

    /// Appends `lambda` when it is independent of the current vectors.
    pub fn try_push(&mut self, lambda: &Frequency) -> Result<bool> {
        self.check(lambda)?;
        let (rest, mult) = self.reduce(lambda.coords());
        let Some(col) = rest.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let r = self.vectors.len();
        let mut t = vec![BigRational::zero(); r + 1];
        t[r] = BigRational::one();
        for (m, trow) in mult.iter().zip(&self.transform) {
            for (tj, x) in t.iter_mut().zip(trow) {
                *tj -= m * x;
            }
        }
        // keep older echelon rows reduced against the new pivot
        for (i, (_, row)) in self.echelon.iter_mut().enumerate() {
            let m = row[col].clone() / &rest[col];
            if !m.is_zero() {
                for (x, y) in row.iter_mut().zip(&rest) {
                    *x -= &m * y;
                }
                let trow = &mut self.transform[i];
                trow.push(BigRational::zero());
                for (x, y) in trow.iter_mut().zip(&t) {
                    *x -= &m * y;
                }
            } else {
                self.transform[i].push(BigRational::zero());
            }
        }
        self.echelon.push((col, rest));
        self.transform.push(t);
        self.vectors.push(lambda.clone());
        Ok(true)
    }

    /// Rational coordinates of `lambda` over the basis vectors.
    pub fn coords(&self, lambda: &Frequency) -> Result<Vec<BigRational>> {
        self.check(lambda)?;
        let (rest, mult) = self.reduce(lambda.coords());
        if rest.iter().any(|x| !x.is_zero()) {
            return Err(Error::Span(lambda.to_string()));
        }
        let mut out = vec![BigRational::zero(); self.vectors.len()];
        for (m, trow) in mult.iter().zip(&self.transform) {
            for (o, t) in out.iter_mut().zip(trow) {
                *o += m * t;
            }
        }
        Ok(out)
    }

    pub fn contains(&self, lambda: &Frequency) -> Result<bool> {
        self.check(lambda)?;
        let (rest, _) = self.reduce(lambda.coords());
        Ok(rest.iter().all(Zero::is_zero))
    }

    /// `sum_j coords[j] * vectors[j]`, exactly.
    pub fn reconstruct(&self, coords: &[BigRational]) -> Result<Frequency> {
        if coords.len() != self.vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vectors.len(),
                found: coords.len(),
            });
        }
        let mut acc = Frequency::zero(&self.base, self.dims);
        for (c, v) in coords.iter().zip(&self.vectors) {
            acc = acc.checked_add(&v.scale(c))?;
        }
        Ok(acc)
    }
}

/// Greedy left-to-right basis of the rational span of `freqs`; each accepted
/// vector is sign-normalized to be positive.
pub fn qlinear_basis<'a, I>(base: &RealBase, dims: usize, freqs: I) -> Result<QBasis>
where
    I: IntoIterator<Item = &'a Frequency>,
{
    let mut basis = QBasis::empty(base, dims);
    for f in freqs {
        if f.is_positive() {
            basis.try_push(f)?;
        } else {
            basis.try_push(&-f.clone())?;
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn f(b: &RealBase, c: &[[i64; 2]]) -> Frequency {
        Frequency::scalar(b, c).unwrap()
    }

    #[test]
    fn rational_multiples_collapse() {
        let b = RealBase::rational();
        let half = f(&b, &[[1, 2]]);
        let third = f(&b, &[[1, 3]]);
        let q = qlinear_basis(&b, 1, [&half, &third]).unwrap();
        assert_eq!(q.vectors(), &[half]);
        assert_eq!(q.coords(&third).unwrap(), vec![ratio(2, 3)]);
    }

    #[test]
    fn sum_of_independent_pair() {
        let b = RealBase::sqrt2();
        let one = f(&b, &[[1, 1], [0, 1]]);
        let r2 = f(&b, &[[0, 1], [1, 1]]);
        let s = f(&b, &[[1, 1], [1, 1]]);
        let q = qlinear_basis(&b, 1, [&one, &r2, &s]).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.coords(&s).unwrap(), vec![int(1), int(1)]);
    }

    #[test]
    fn half_sqrt2_first() {
        let b = RealBase::sqrt2();
        let h = f(&b, &[[0, 1], [1, 2]]);
        let r2 = f(&b, &[[0, 1], [1, 1]]);
        let q = qlinear_basis(&b, 1, [&h, &r2]).unwrap();
        assert_eq!(q.vectors(), &[h]);
        assert_eq!(q.coords(&r2).unwrap(), vec![int(2)]);
    }

    #[test]
    fn out_of_span_is_an_error() {
        let b = RealBase::sqrt2();
        let q = qlinear_basis(&b, 1, [&f(&b, &[[1, 1], [0, 1]])]).unwrap();
        assert!(matches!(q.coords(&f(&b, &[[0, 1], [1, 1]])), Err(Error::Span(_))));
    }

    #[test]
    fn coordinates_round_trip_in_two_dims() {
        let b = RealBase::sqrt2();
        let rows =
            |a: [i64; 4]| Frequency::from_pairs(&b, &[&[[a[0], 1], [a[1], 1]], &[[a[2], 1], [a[3], 2]]]).unwrap();
        let inputs = [
            rows([1, 0, 2, 1]),
            rows([0, 3, 1, 0]),
            rows([1, 3, 3, 1]),
            rows([5, -1, 0, 7]),
        ];
        let q = qlinear_basis(&b, 2, inputs.iter()).unwrap();
        assert_eq!(q.len(), 3);
        for v in &inputs {
            let c = q.coords(v).unwrap();
            assert_eq!(&q.reconstruct(&c).unwrap(), v);
        }
    }
}
