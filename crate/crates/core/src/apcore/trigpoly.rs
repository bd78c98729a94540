use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;

use super::base::RealBase;
use super::frequency::Frequency;
use crate::error::{Error, Result};

/// A finite Bohr-Fourier sum `sum_lambda a_lambda exp(2 pi i lambda . x)`.
///
/// Real-valued polynomials are stored in full complex form, both `lambda`
/// and `-lambda` carrying conjugate amplitudes. Zero amplitudes are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    base: RealBase,
    dims: usize,
    terms: BTreeMap<Frequency, Complex64>,
    real: bool,
}

impl TrigPoly {
    pub fn zero(base: &RealBase, dims: usize) -> Self {
        Self {
            base: base.clone(),
            dims,
            terms: BTreeMap::new(),
            real: true,
        }
    }

    pub fn constant(base: &RealBase, dims: usize, c: f64) -> Self {
        let mut p = Self::zero(base, dims);
        p.insert(Frequency::zero(base, dims), Complex64::new(c, 0.0));
        p
    }

    /// `amplitude * exp(2 pi i lambda . x)`
    pub fn exponential(lambda: &Frequency, amplitude: Complex64) -> Self {
        let mut p = Self::zero(lambda.base(), lambda.dims());
        p.insert(lambda.clone(), amplitude);
        p
    }

    /// `amplitude * cos(2 pi lambda . x)`
    pub fn cosine(lambda: &Frequency, amplitude: f64) -> Self {
        let mut p = Self::zero(lambda.base(), lambda.dims());
        p.add_cosine(lambda, amplitude).expect("same base");
        p
    }

    /// `amplitude * sin(2 pi lambda . x)`
    pub fn sine(lambda: &Frequency, amplitude: f64) -> Self {
        let mut p = Self::zero(lambda.base(), lambda.dims());
        p.add_sine(lambda, amplitude).expect("same base");
        p
    }

    pub fn add_cosine(&mut self, lambda: &Frequency, amplitude: f64) -> Result<()> {
        if lambda.is_zero() {
            return self.add_term(lambda, Complex64::new(amplitude, 0.0));
        }
        let half = Complex64::new(amplitude / 2.0, 0.0);
        self.add_term(lambda, half)?;
        self.add_term(&-lambda.clone(), half)
    }

    pub fn add_sine(&mut self, lambda: &Frequency, amplitude: f64) -> Result<()> {
        if lambda.is_zero() {
            return Ok(());
        }
        // sin t = (e^{it} - e^{-it}) / 2i
        let c = Complex64::new(0.0, -amplitude / 2.0);
        self.add_term(lambda, c)?;
        self.add_term(&-lambda.clone(), c.conj())
    }

    pub fn add_term(&mut self, lambda: &Frequency, amplitude: Complex64) -> Result<()> {
        self.check(lambda)?;
        let entry = self.terms.entry(lambda.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += amplitude;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(lambda);
        }
        self.refresh_real();
        Ok(())
    }

    fn insert(&mut self, lambda: Frequency, amplitude: Complex64) {
        if amplitude != Complex64::new(0.0, 0.0) {
            self.terms.insert(lambda, amplitude);
        }
        self.refresh_real();
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

    fn refresh_real(&mut self) {
        self.real = self.terms.iter().all(|(lambda, a)| {
            if lambda.is_zero() {
                a.im == 0.0
            } else {
                self.terms.get(&-lambda.clone()) == Some(&a.conj())
            }
        });
    }

    pub fn base(&self) -> &RealBase {
        &self.base
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the stored coefficients are exactly conjugate symmetric.
    pub fn is_real_valued(&self) -> bool {
        self.real
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Frequency, &Complex64)> {
        self.terms.iter()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = &Frequency> {
        self.terms.keys()
    }

    /// Sum of `|a_lambda|`, an upper bound for the sup norm.
    pub fn abs_coefficient_sum(&self) -> f64 {
        self.terms.values().map(|a| a.norm()).sum()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        if self.real {
            return Complex64::new(self.eval_real(x), 0.0);
        }
        self.terms
            .iter()
            .map(|(lambda, a)| a * Complex64::cis(TAU * lambda.dot(x)))
            .sum()
    }

    /// Real-valued evaluation: the constant term plus `2 Re(a e^{i theta})`
    /// over one representative of each `+-lambda` pair. For polynomials that
    /// are not real-valued this returns the real part of [`TrigPoly::eval`].
    pub fn eval_real(&self, x: &[f64]) -> f64 {
        if !self.real {
            return self
                .terms
                .iter()
                .map(|(lambda, a)| (a * Complex64::cis(TAU * lambda.dot(x))).re)
                .sum();
        }
        let mut acc = 0.0;
        for (lambda, a) in &self.terms {
            if lambda.is_zero() {
                acc += a.re;
            } else if lambda.is_positive() {
                acc += 2.0 * (a * Complex64::cis(TAU * lambda.dot(x))).re;
            }
        }
        acc
    }

    /// Exact Bohr-Fourier coefficient `a_lambda` (zero when absent).
    pub fn bohr_fourier(&self, lambda: &Frequency) -> Result<Complex64> {
        self.check(lambda)?;
        Ok(self.terms.get(lambda).copied().unwrap_or(Complex64::new(0.0, 0.0)))
    }

    /// Mean value, read off as the zero-frequency coefficient.
    pub fn mean_value(&self) -> Complex64 {
        self.terms
            .get(&Frequency::zero(&self.base, self.dims))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        let mut out = self.clone();
        for (lambda, a) in &other.terms {
            out.add_term(lambda, *a)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> TrigPoly {
        let mut out = TrigPoly::zero(&self.base, self.dims);
        for (lambda, a) in &self.terms {
            out.terms.insert(lambda.clone(), a * c);
        }
        out.terms.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        out.refresh_real();
        out
    }

    /// Pointwise product (convolution of spectra).
    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.base.ensure_same(&other.base)?;
        let mut acc: BTreeMap<Frequency, Complex64> = BTreeMap::new();
        for (l1, a1) in &self.terms {
            for (l2, a2) in &other.terms {
                *acc.entry(l1.checked_add(l2)?).or_insert(Complex64::new(0.0, 0.0)) += a1 * a2;
            }
        }
        acc.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        let mut out = TrigPoly::zero(&self.base, self.dims);
        out.terms = acc;
        out.refresh_real();
        Ok(out)
    }

    pub fn conj(&self) -> TrigPoly {
        let mut out = TrigPoly::zero(&self.base, self.dims);
        for (lambda, a) in &self.terms {
            out.terms.insert(-lambda.clone(), a.conj());
        }
        out.refresh_real();
        out
    }

    /// Forces exact conjugate symmetry by averaging `p` with `conj(p)`.
    pub fn real_part(&self) -> TrigPoly {
        let mut out = TrigPoly::zero(&self.base, self.dims);
        let keys: Vec<Frequency> = self.terms.keys().flat_map(|l| [l.clone(), -l.clone()]).collect();
        for lambda in keys {
            if out.terms.contains_key(&lambda) {
                continue;
            }
            let a = self.terms.get(&lambda).copied().unwrap_or_default();
            let b = self.terms.get(&-lambda.clone()).copied().unwrap_or_default();
            let c = (a + b.conj()) * 0.5;
            if lambda.is_zero() {
                if c.re != 0.0 {
                    out.terms.insert(lambda, Complex64::new(c.re, 0.0));
                }
            } else if c != Complex64::new(0.0, 0.0) {
                out.terms.insert(-lambda.clone(), c.conj());
                out.terms.insert(lambda, c);
            }
        }
        out.refresh_real();
        out
    }

    /// Gradient coefficients: `d/dx_i` multiplies `a_lambda` by `2 pi i lambda_i`.
    pub fn partial(&self, component: usize) -> TrigPoly {
        let mut out = TrigPoly::zero(&self.base, self.dims);
        for (lambda, a) in &self.terms {
            let li = lambda.to_real()[component];
            let c = a * Complex64::new(0.0, TAU * li);
            if c != Complex64::new(0.0, 0.0) {
                out.terms.insert(lambda.clone(), c);
            }
        }
        out.refresh_real();
        out
    }

    /// Multiplies every frequency by a rational factor.
    pub fn dilate(&self, factor: &BigRational) -> TrigPoly {
        let mut out = TrigPoly::zero(&self.base, self.dims);
        for (lambda, a) in &self.terms {
            *out.terms
                .entry(lambda.scale(factor))
                .or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        out.terms.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        out.refresh_real();
        out
    }
}
