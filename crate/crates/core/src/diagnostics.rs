//! Decay traces, contraction series and the decay experiment that pairs the
//! non-degeneracy verdict with either a solver run or an exact traveling wave.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::apcore::{value_range, Frequency, RealBase, TorusGrid, TrigPoly};
use crate::error::{Error, Result};
use crate::flux::{make_counterexample, nd_check_f64, NdReport, PiecewiseFlux, TravelingWave};
use crate::lift::LiftSpec;
use crate::solver::{run_pair, solve, CellField, RunConfig, RunRecord, Stepper};
use crate::specgroup::{group_generated_in, spectrum, FreqGroup};

/// Allowed per-step growth of `D` and drift of the mass.
pub const STEP_TOLERANCE: f64 = 1e-12;
/// Phase nodes used to integrate the exact traveling wave.
pub const EXACT_POINTS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: f64,
    pub distance: f64,
    pub mass: f64,
    pub entropy_residual_max: Option<f64>,
}

/// `D(t) = mean |v(t) - C|` with `C` the initial mean, one row per accepted step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayTrace {
    pub mean: f64,
    pub rows: Vec<DecayRow>,
}

impl DecayTrace {
    pub fn initial(&self) -> f64 {
        self.rows[0].distance
    }

    pub fn last(&self) -> &DecayRow {
        self.rows.last().expect("a trace has its initial row")
    }

    /// `D(t_end) / D(0)`; zero for data already at its mean.
    pub fn ratio(&self) -> f64 {
        let d0 = self.initial();
        if d0 == 0.0 {
            0.0
        } else {
            self.last().distance / d0
        }
    }

    /// Largest step-to-step increase of `D`.
    pub fn max_increase(&self) -> f64 {
        self.rows
            .windows(2)
            .map(|w| w[1].distance - w[0].distance)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_mass_drift(&self) -> f64 {
        let m0 = self.rows[0].mass;
        self.rows.iter().map(|r| (r.mass - m0).abs()).fold(0.0, f64::max)
    }

    pub fn max_entropy_residual(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.entropy_residual_max).reduce(f64::max)
    }

    /// `D` at the last row with `t <= time`.
    pub fn distance_at(&self, time: f64) -> f64 {
        self.rows
            .iter()
            .take_while(|r| r.t <= time)
            .last()
            .map_or(self.initial(), |r| r.distance)
    }

    /// CSV with columns `t,D,mass,entropy_residual_max` (empty residual when unchecked).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,D,mass,entropy_residual_max\n");
        for r in &self.rows {
            let e = r.entropy_residual_max.map(csv_number).unwrap_or_default();
            s.push_str(&format!(
                "{},{},{},{}\n",
                csv_number(r.t),
                csv_number(r.distance),
                csv_number(r.mass),
                e
            ));
        }
        s
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
pub fn csv_number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn decay_trace(run: &RunRecord) -> DecayTrace {
    DecayTrace {
        mean: run.initial_mean,
        rows: run
            .steps
            .iter()
            .map(|s| DecayRow {
                t: s.t,
                distance: s.distance,
                mass: s.mass,
                entropy_residual_max: s.entropy_max,
            })
            .collect(),
    }
}

/// Distance series of a lockstep pair run.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionSeries {
    pub times: Vec<f64>,
    pub distances: Vec<f64>,
    pub entropy_max: Option<f64>,
    pub mass_drift: f64,
}

impl ContractionSeries {
    /// Steps whose distance grew by more than [`STEP_TOLERANCE`].
    pub fn violations(&self) -> usize {
        self.distances
            .windows(2)
            .filter(|w| w[1] - w[0] > STEP_TOLERANCE)
            .count()
    }

    pub fn is_contractive(&self) -> bool {
        self.violations() == 0 && self.distances.last() <= self.distances.first()
    }
}

/// `||a(t) - b(t)||_1` over `steps` shared steps, starting with the initial distance.
pub fn contraction_check(
    stepper: &Stepper,
    a: CellField,
    b: CellField,
    steps: usize,
    entropy_points: usize,
) -> Result<ContractionSeries> {
    let run = run_pair(stepper, a, b, steps, entropy_points)?;
    let mut times = vec![0.0];
    let mut distances = vec![run.initial_distance];
    let mut drift: f64 = 0.0;
    let mut entropy: Option<f64> = None;
    for s in &run.steps {
        times.push(s.t);
        distances.push(s.distance);
        drift = drift
            .max((s.mass.0 - run.initial_mass.0).abs())
            .max((s.mass.1 - run.initial_mass.1).abs());
        if let Some(e) = s.entropy_max {
            entropy = Some(entropy.map_or(e, |x| x.max(e)));
        }
    }
    Ok(ContractionSeries {
        times,
        distances,
        entropy_max: entropy,
        mass_drift: drift,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayConfig {
    /// Cells per torus direction for the decay run.
    #[serde(default = "default_cells")]
    pub cells: usize,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    /// Largest accepted `D(t_end) / D(0)` for a decay verdict.
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "crate::solver::run::default_cfl_value")]
    pub cfl: f64,
    /// Grids of the no-decay refinement study.
    #[serde(default = "default_refinement")]
    pub refinement: Vec<usize>,
    /// End time of the refinement runs.
    #[serde(default = "default_refinement_t")]
    pub refinement_t_end: f64,
    /// Times at which the exact traveling wave is checked.
    #[serde(default = "default_exact_times")]
    pub exact_times: Vec<f64>,
    #[serde(default = "crate::solver::run::default_entropy_points_value")]
    pub entropy_points: usize,
}

fn default_cells() -> usize {
    1024
}
fn default_t_end() -> f64 {
    10.0
}
fn default_threshold() -> f64 {
    0.1
}
fn default_refinement() -> Vec<usize> {
    vec![256, 512, 1024]
}
fn default_refinement_t() -> f64 {
    5.0
}
fn default_exact_times() -> Vec<f64> {
    vec![1.0, 5.0, 10.0]
}

impl Default for DecayConfig {
    fn default() -> Self {
        Self {
            cells: default_cells(),
            t_end: default_t_end(),
            threshold: default_threshold(),
            cfl: crate::solver::DEFAULT_CFL,
            refinement: default_refinement(),
            refinement_t_end: default_refinement_t(),
            exact_times: default_exact_times(),
            entropy_points: crate::solver::run::DEFAULT_ENTROPY_POINTS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayVerdict {
    DecayConfirmed,
    DecayNotConfirmed,
    NoDecayConfirmed,
    NoDecayNotConfirmed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub t: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinementPoint {
    pub cells: usize,
    pub t: f64,
    pub distance: f64,
    pub steps: usize,
    /// Largest entropy production over the run; `None` when not sampled.
    pub entropy_max: Option<f64>,
    pub mass_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactPoint {
    pub t: f64,
    pub distance: f64,
}

#[derive(Clone, Debug)]
pub struct DecayOutcome {
    pub verdict: DecayVerdict,
    pub nd: NdReport,
    /// `D(t)/D(0)` of the solver run (decay branch).
    pub ratios: Vec<RatioPoint>,
    /// Numerical `D(T)` per grid (no-decay branch), coarse to fine.
    pub refinement: Vec<RefinementPoint>,
    /// `D(t)` of the exact traveling wave (no-decay branch), starting at `t = 0`.
    pub exact: Vec<ExactPoint>,
    pub trace: Option<DecayTrace>,
    pub wave: Option<TravelingWave>,
    pub counterexample: Option<TrigPoly>,
}

/// The profile `W` with `p = W(xi . x)`, when every spectral line is an
/// integer multiple of `xi`.
pub fn profile_along(p: &TrigPoly, xi: &Frequency) -> Result<Option<TrigPoly>> {
    let b = RealBase::rational();
    let mut w = TrigPoly::zero(&b, 1);
    let mut basis = crate::specgroup::QBasis::empty(xi.base(), xi.dims());
    basis.try_push(xi)?;
    for (lambda, a) in p.terms() {
        let Ok(c) = basis.coords(lambda) else {
            return Ok(None);
        };
        if !c[0].is_integer() {
            return Ok(None);
        }
        let k: i64 = num_traits::ToPrimitive::to_i64(&c[0].to_integer())
            .ok_or_else(|| Error::InvalidInput(format!("frequency {lambda} too large")))?;
        w.add_term(&Frequency::integer(&b, k)?, *a)?;
    }
    Ok(Some(w))
}

/// `mid + amp sin(2 pi s)` filling the middle half of `[a, b]`.
fn default_profile(a: f64, b: f64) -> Result<TrigPoly> {
    let rb = RealBase::rational();
    let mid =
        BigRational::from_float(0.5 * (a + b)).ok_or_else(|| Error::InvalidInput("non-finite interval".into()))?;
    let amp = 0.25 * (b - a);
    let mut w = TrigPoly::constant(&rb, 1, crate::rational::to_f64(&mid));
    w.add_sine(&Frequency::integer(&rb, 1)?, amp)?;
    Ok(w)
}

/// Tests decay to the mean: a solver run when the condition holds, an exact
/// traveling wave plus a grid-refinement study when it fails.
pub fn decay_experiment(
    flux: &PiecewiseFlux,
    group: &FreqGroup,
    p: &TrigPoly,
    cfg: &DecayConfig,
) -> Result<DecayOutcome> {
    let sp = spectrum(p);
    let data_group = group_generated_in(p.base(), p.dims(), sp.iter())?;
    if !group.contains_group(&data_group)? {
        return Err(Error::Config(
            "the group does not contain the frequency group of the data".into(),
        ));
    }
    let lift = LiftSpec::for_poly(p)?;
    let (lo, hi) = value_range(p, &lift, TorusGrid::default_for(lift.torus_dim()))?;
    let (dlo, dhi) = flux.domain();
    let nd = nd_check_f64(flux, group, lo.max(dlo), hi.min(dhi))?;
    if nd.holds() {
        let mut run_cfg = RunConfig::new(vec![cfg.cells; lift.torus_dim()], cfg.t_end);
        run_cfg.cfl = cfg.cfl;
        run_cfg.entropy_points = cfg.entropy_points;
        let run = solve(p, &lift, flux, &run_cfg, &mut [])?;
        let trace = decay_trace(&run);
        let d0 = trace.initial();
        let ratios = trace
            .rows
            .iter()
            .map(|r| RatioPoint {
                t: r.t,
                ratio: if d0 == 0.0 { 0.0 } else { r.distance / d0 },
            })
            .collect();
        let verdict = if trace.ratio() <= cfg.threshold {
            DecayVerdict::DecayConfirmed
        } else {
            DecayVerdict::DecayNotConfirmed
        };
        return Ok(DecayOutcome {
            verdict,
            nd,
            ratios,
            refinement: Vec::new(),
            exact: Vec::new(),
            trace: Some(trace),
            wave: None,
            counterexample: None,
        });
    }
    let witness = nd.witness.as_ref().expect("failing report carries a witness");
    let profile = match profile_along(p, &witness.xi)? {
        Some(w) => w,
        None => default_profile(
            crate::rational::to_f64(&witness.interval.0),
            crate::rational::to_f64(&witness.interval.1),
        )?,
    };
    let (u0, wave) = make_counterexample(flux, &nd, &profile)?;
    let mut times = vec![0.0];
    times.extend(cfg.exact_times.iter().copied());
    let exact: Vec<ExactPoint> = times
        .iter()
        .map(|&t| ExactPoint {
            t,
            distance: wave.distance_to_mean(t, EXACT_POINTS),
        })
        .collect();
    let d0 = exact[0].distance;
    let constant = exact.iter().all(|e| (e.distance - d0).abs() <= 1e-10);
    let wave_lift = LiftSpec::for_poly(&u0)?;
    let mut refinement = Vec::new();
    for &n in &cfg.refinement {
        let mut run_cfg = RunConfig::new(vec![n; wave_lift.torus_dim()], cfg.refinement_t_end);
        run_cfg.cfl = cfg.cfl;
        run_cfg.entropy_points = cfg.entropy_points;
        let run = solve(&u0, &wave_lift, flux, &run_cfg, &mut [])?;
        let trace = decay_trace(&run);
        refinement.push(RefinementPoint {
            cells: n,
            t: cfg.refinement_t_end,
            distance: trace.last().distance,
            steps: run.steps.len() - 1,
            entropy_max: trace.max_entropy_residual(),
            mass_drift: trace.max_mass_drift(),
        });
    }
    let trend = refinement.windows(2).all(|w| w[1].distance > w[0].distance)
        && refinement.iter().all(|r| r.distance <= d0 + 1e-10);
    let verdict = if constant && trend {
        DecayVerdict::NoDecayConfirmed
    } else {
        DecayVerdict::NoDecayNotConfirmed
    };
    Ok(DecayOutcome {
        verdict,
        nd,
        ratios: Vec::new(),
        refinement,
        exact,
        trace: None,
        wave: Some(wave),
        counterexample: Some(u0),
    })
}
