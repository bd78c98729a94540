//! Real-coefficient piecewise polynomial `psi(u)` with fast wave-speed bounds.

use super::poly;

/// Continuous piecewise polynomial on `[breakpoints[0], breakpoints[K]]`,
/// extended outside by the end pieces.
#[derive(Clone, Debug)]
pub struct ScalarFlux {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
    derivs: Vec<Vec<f64>>,
    // points where |psi'| may have an interior maximum, with that value
    specials: Vec<(f64, f64)>,
}

impl ScalarFlux {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Self {
        assert_eq!(breakpoints.len(), pieces.len() + 1, "one piece per interval");
        let derivs: Vec<Vec<f64>> = pieces.iter().map(|p| poly::derivative(p)).collect();
        let mut specials = Vec::new();
        for (i, d) in derivs.iter().enumerate() {
            let (a, b) = (breakpoints[i], breakpoints[i + 1]);
            let lo = if i == 0 { f64::MIN } else { a };
            let hi = if i + 1 == pieces.len() { f64::MAX } else { b };
            for x in poly::real_roots(&poly::derivative(d), lo.max(-1e12), hi.min(1e12)) {
                specials.push((x, poly::eval(d, x).abs()));
            }
            if i > 0 {
                let left = poly::eval(&derivs[i - 1], a).abs();
                specials.push((a, left.max(poly::eval(d, a).abs())));
            }
        }
        specials.sort_by(|x, y| x.0.total_cmp(&y.0));
        Self {
            breakpoints,
            pieces,
            derivs,
            specials,
        }
    }

    fn piece(&self, u: f64) -> usize {
        let k = self.pieces.len();
        self.breakpoints[1..k].partition_point(|&b| b <= u)
    }

    pub fn eval(&self, u: f64) -> f64 {
        poly::eval(&self.pieces[self.piece(u)], u)
    }

    pub fn derivative(&self, u: f64) -> f64 {
        poly::eval(&self.derivs[self.piece(u)], u)
    }

    /// `max |psi'|` over `[lo, hi]` (order of arguments irrelevant).
    pub fn max_speed(&self, lo: f64, hi: f64) -> f64 {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mut m = self.derivative(lo).abs().max(self.derivative(hi).abs());
        let start = self.specials.partition_point(|s| s.0 < lo);
        for &(x, v) in &self.specials[start..] {
            if x > hi {
                break;
            }
            m = m.max(v);
        }
        m
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }
}
