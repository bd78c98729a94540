//! Cube averages of functions on `R^n` and the scaled averaging functional
//! `R^{-n} int p(x) g(x/R) dx`.

use num_complex::Complex64;

use super::trigpoly::TrigPoly;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate};

/// One entry of a cube-average refinement sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanSample {
    pub radius: f64,
    pub value: Complex64,
    /// Largest spread between this entry's predecessor and every later entry.
    pub residual: f64,
}

/// Result of [`numeric_mean`]: the last cube average together with the full
/// refinement history. Residuals are nonincreasing along the history.
#[derive(Clone, Debug)]
pub struct MeanEstimate {
    pub value: Complex64,
    pub radius: f64,
    pub residual: f64,
    pub history: Vec<MeanSample>,
}

/// Composite Gauss-Legendre rule used per coordinate on `[-R/2, R/2]`.
#[derive(Clone, Copy, Debug)]
pub struct CubeRule {
    pub panel_width: f64,
    pub order: usize,
}

impl Default for CubeRule {
    fn default() -> Self {
        Self {
            panel_width: 0.25,
            order: 8,
        }
    }
}

impl CubeRule {
    fn nodes(&self, radius: f64) -> Vec<(f64, f64)> {
        let rule = gauss_legendre(self.order);
        let panels = (radius / self.panel_width).ceil().max(1.0) as usize;
        let h = radius / panels as f64;
        let mut out = Vec::with_capacity(panels * self.order);
        for k in 0..panels {
            let a = -0.5 * radius + k as f64 * h;
            let mid = a + 0.5 * h;
            for (x, w) in rule.0.iter().zip(&rule.1) {
                out.push((mid + 0.5 * h * x, 0.5 * h * w));
            }
        }
        out
    }
}

/// Cube averages `R^{-n} int_{C_R} f` for every radius of `schedule`.
pub fn numeric_mean<F>(dims: usize, f: F, schedule: &[f64], rule: CubeRule) -> Result<MeanEstimate>
where
    F: Fn(&[f64]) -> Complex64,
{
    if schedule.is_empty() {
        return Err(Error::InvalidInput("empty radius schedule".into()));
    }
    if schedule.iter().any(|r| !(r.is_finite() && *r > 0.0)) || schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "radius schedule must be positive and increasing".into(),
        ));
    }
    if dims == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let mut values = Vec::with_capacity(schedule.len());
    for &radius in schedule {
        let nodes = rule.nodes(radius);
        let mut idx = vec![0usize; dims];
        let mut x = vec![0.0; dims];
        let mut acc = Complex64::new(0.0, 0.0);
        'outer: loop {
            let mut w = 1.0;
            for (d, &i) in idx.iter().enumerate() {
                x[d] = nodes[i].0;
                w *= nodes[i].1;
            }
            let v = f(&x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite sample at {x:?}")));
            }
            acc += v * w;
            for d in (0..dims).rev() {
                idx[d] += 1;
                if idx[d] < nodes.len() {
                    continue 'outer;
                }
                idx[d] = 0;
            }
            break;
        }
        values.push(acc / radius.powi(dims as i32));
    }
    let last = values.len() - 1;
    let history: Vec<MeanSample> = (0..values.len())
        .map(|i| {
            let tail = &values[i.saturating_sub(1)..];
            let mut spread: f64 = 0.0;
            for a in tail {
                for b in tail {
                    spread = spread.max((a - b).norm());
                }
            }
            MeanSample {
                radius: schedule[i],
                value: values[i],
                residual: spread,
            }
        })
        .collect();
    Ok(MeanEstimate {
        value: values[last],
        radius: schedule[last],
        residual: history[last].residual,
        history,
    })
}

/// A continuous, compactly supported, piecewise polynomial weight on `R`.
#[derive(Clone, Debug)]
pub struct Bump1d {
    breakpoints: Vec<f64>,
    // ascending coefficients in y, one vector per interval
    pieces: Vec<Vec<f64>>,
}

impl Bump1d {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidInput("bump needs K+1 breakpoints for K pieces".into()));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("bump breakpoints must increase".into()));
        }
        let bump = Self { breakpoints, pieces };
        let k = bump.pieces.len();
        let tol = 1e-12;
        if horner(&bump.pieces[0], bump.breakpoints[0]).abs() > tol
            || horner(&bump.pieces[k - 1], bump.breakpoints[k]).abs() > tol
        {
            return Err(Error::InvalidInput(
                "bump must vanish at the ends of its support".into(),
            ));
        }
        for i in 1..k {
            let y = bump.breakpoints[i];
            if (horner(&bump.pieces[i - 1], y) - horner(&bump.pieces[i], y)).abs() > tol {
                return Err(Error::InvalidInput(format!("bump is discontinuous at {y}")));
            }
        }
        Ok(bump)
    }

    /// `1 - |y|` on `[-1, 1]`; unit integral.
    pub fn triangle() -> Self {
        Self::new(vec![-1.0, 0.0, 1.0], vec![vec![1.0, 1.0], vec![1.0, -1.0]]).expect("valid bump")
    }

    /// `2 (1 - |y|)^3` on `[-1, 1]`; unit integral, a single derivative kink at 0.
    pub fn cusp() -> Self {
        Self::new(
            vec![-1.0, 0.0, 1.0],
            vec![vec![2.0, 6.0, 6.0, 2.0], vec![2.0, -6.0, 6.0, -2.0]],
        )
        .expect("valid bump")
    }

    pub fn eval(&self, y: f64) -> f64 {
        let k = self.pieces.len();
        if y < self.breakpoints[0] || y > self.breakpoints[k] {
            return 0.0;
        }
        let i = self.breakpoints[1..k].partition_point(|&b| b <= y);
        horner(&self.pieces[i], y)
    }

    pub fn integral(&self) -> f64 {
        self.fourier(0.0).re
    }

    /// `int g(y) exp(i omega y) dy`, exact piece by piece.
    pub fn fourier(&self, omega: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, piece) in self.pieces.iter().enumerate() {
            acc += poly_exp_integral(piece, omega, self.breakpoints[i], self.breakpoints[i + 1]);
        }
        acc
    }
}

/// Product weight `g(y) = prod_i g_i(y_i)` on `R^n`.
#[derive(Clone, Debug)]
pub struct TensorBump {
    pub factors: Vec<Bump1d>,
}

impl TensorBump {
    pub fn new(factors: Vec<Bump1d>) -> Self {
        Self { factors }
    }

    pub fn uniform(factor: Bump1d, dims: usize) -> Self {
        Self {
            factors: vec![factor; dims],
        }
    }

    pub fn dims(&self) -> usize {
        self.factors.len()
    }

    pub fn integral(&self) -> f64 {
        self.factors.iter().map(Bump1d::integral).product()
    }
}

/// `R^{-n} int p(x) g(x/R) dx`, integrated exactly term by term: the
/// substitution `x = R y` turns each mode into `prod_i ghat_i(2 pi R lambda_i)`.
pub fn scaled_average(p: &TrigPoly, g: &TensorBump, radius: f64) -> Result<Complex64> {
    if g.dims() != p.dims() {
        return Err(Error::DimensionMismatch {
            expected: p.dims(),
            found: g.dims(),
        });
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (lambda, a) in p.terms() {
        let comps = lambda.to_real();
        let mut factor = Complex64::new(1.0, 0.0);
        for (gi, li) in g.factors.iter().zip(comps) {
            factor *= gi.fourier(std::f64::consts::TAU * radius * li);
        }
        acc += a * factor;
    }
    Ok(acc)
}

fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

/// `int_a^b q(y) e^{i omega y} dy`. Uses the integration-by-parts closed form
/// `[e^{i omega y} sum_j (-1)^j q^{(j)}(y) / (i omega)^{j+1}]_a^b` when the
/// interval holds at least a third of a period, Gauss-Legendre otherwise.
fn poly_exp_integral(q: &[f64], omega: f64, a: f64, b: f64) -> Complex64 {
    if (omega * (b - a)).abs() <= 2.0 {
        let rule = gauss_legendre(24);
        return integrate(&rule, a, b, |y| Complex64::cis(omega * y) * horner(q, y));
    }
    let iw = Complex64::new(0.0, omega);
    let antiderivative = |y: f64| {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut deriv = q.to_vec();
        let mut denom = iw;
        let mut sign = 1.0;
        while !deriv.is_empty() {
            sum += horner(&deriv, y) * sign / denom;
            deriv = derivative(&deriv);
            denom *= iw;
            sign = -sign;
        }
        Complex64::cis(omega * y) * sum
    };
    antiderivative(b) - antiderivative(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apcore::{Frequency, RealBase};
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn constant_mean_has_zero_residual() {
        let est = numeric_mean(
            1,
            |_| Complex64::new(1.0, 0.0),
            &[10.0, 20.0, 40.0],
            CubeRule::default(),
        )
        .unwrap();
        assert!((est.value.re - 1.0).abs() < 1e-13);
        for s in &est.history {
            assert!((s.value.re - 1.0).abs() < 1e-13);
            assert!(s.residual < 1e-13);
        }
    }

    #[test]
    fn non_finite_samples_rejected() {
        let r = numeric_mean(
            1,
            |x| Complex64::new(1.0 / x[0].abs().min(0.0), 0.0),
            &[1.0],
            CubeRule::default(),
        );
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn bad_schedule_rejected() {
        let f = |_: &[f64]| Complex64::new(1.0, 0.0);
        assert!(numeric_mean(1, f, &[], CubeRule::default()).is_err());
        assert!(numeric_mean(1, f, &[2.0, 1.0], CubeRule::default()).is_err());
    }

    #[test]
    fn bump_integrals_and_transforms() {
        let t = Bump1d::triangle();
        assert!((t.integral() - 1.0).abs() < 1e-15);
        assert!((Bump1d::cusp().integral() - 1.0).abs() < 1e-15);
        // closed form 4 sin^2(w/2)/w^2 on both branches of poly_exp_integral
        for w in [0.3, 1.9, 2.5, 17.0, 444.0] {
            let exact = 4.0 * (w / 2.0_f64).sin().powi(2) / (w * w);
            let got = t.fourier(w);
            assert!((got.re - exact).abs() < 1e-13, "w={w}");
            assert!(got.im.abs() < 1e-13);
        }
    }

    #[test]
    fn discontinuous_bump_rejected() {
        assert!(Bump1d::new(vec![-1.0, 0.0, 1.0], vec![vec![1.0, 1.0], vec![0.5, -0.5]]).is_err());
        assert!(Bump1d::new(vec![-1.0, 1.0], vec![vec![1.0]]).is_err());
    }

    #[test]
    fn scaled_average_of_constant_is_weight_mass() {
        let b = RealBase::sqrt2();
        let p = TrigPoly::constant(&b, 1, 1.0);
        for r in [1.0, 7.5, 100.0] {
            let v = scaled_average(&p, &TensorBump::uniform(Bump1d::triangle(), 1), r).unwrap();
            assert!((v.re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn scaled_average_triangle_bound() {
        let b = RealBase::sqrt2();
        let l = Frequency::scalar(&b, &[[0, 1], [1, 1]]).unwrap();
        let p = TrigPoly::exponential(&l, Complex64::new(1.0, 0.0));
        let r = 50.0;
        let v = scaled_average(&p, &TensorBump::uniform(Bump1d::triangle(), 1), r).unwrap();
        assert!(v.norm() <= 1.0 / (2.0 * PI * PI * r * r) + 1e-15);
        let w = 2.0 * PI * SQRT_2 * r;
        let exact = 4.0 * (w / 2.0).sin().powi(2) / (w * w);
        assert!((v.re - exact).abs() < 1e-14);
    }
}
