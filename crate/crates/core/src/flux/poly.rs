//! Small dense polynomials in ascending coefficient order.

use num_rational::BigRational;
use num_traits::Zero;

use crate::rational::to_f64;

pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

pub fn eval_exact(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn to_f64_coeffs(coeffs: &[BigRational]) -> Vec<f64> {
    coeffs.iter().map(to_f64).collect()
}

fn trimmed(coeffs: &[f64]) -> &[f64] {
    let len = coeffs.iter().rposition(|c| *c != 0.0).map_or(0, |i| i + 1);
    &coeffs[..len]
}

/// Real roots in `[a, b]`, ascending, located to about `1e-12`.
///
/// Critical points split the interval into monotone pieces; each sign change
/// is then bisected.
pub fn real_roots(coeffs: &[f64], a: f64, b: f64) -> Vec<f64> {
    let c = trimmed(coeffs);
    if c.len() <= 1 || a > b {
        return Vec::new();
    }
    if c.len() == 2 {
        let r = -c[0] / c[1];
        return if (a..=b).contains(&r) { vec![r] } else { Vec::new() };
    }
    let mut knots = vec![a];
    knots.extend(real_roots(&derivative(c), a, b).into_iter().filter(|&x| x > a && x < b));
    knots.push(b);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(c, lo), eval(c, hi));
        let root = if flo == 0.0 {
            Some(lo)
        } else if fhi == 0.0 {
            Some(hi)
        } else if (flo < 0.0) != (fhi < 0.0) {
            let neg_lo = flo < 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi || hi - lo < 1e-13 {
                    break;
                }
                if (eval(c, mid) < 0.0) == neg_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(0.5 * (lo + hi))
        } else {
            None
        };
        if let Some(r) = root {
            if roots.last().is_none_or(|&l| (r - l).abs() > 1e-12) {
                roots.push(r);
            }
        }
    }
    roots
}

/// `max |p|` over `[a, b]` from endpoints and interior critical points.
pub fn max_abs(coeffs: &[f64], a: f64, b: f64) -> f64 {
    let mut m = eval(coeffs, a).abs().max(eval(coeffs, b).abs());
    for x in real_roots(&derivative(coeffs), a, b) {
        m = m.max(eval(coeffs, x).abs());
    }
    m
}
