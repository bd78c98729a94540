use serde::{Deserialize, Serialize};

use super::field::{lift_initial, CellField};
use super::scheme::{LiftedFlux, Scheme, Stepper, DEFAULT_CFL};
use crate::apcore::TrigPoly;
use crate::error::{Error, Result};
use crate::flux::PiecewiseFlux;
use crate::lift::LiftSpec;

pub const DEFAULT_ENTROPY_POINTS: usize = 32;

pub(crate) fn default_cfl_value() -> f64 {
    DEFAULT_CFL
}

pub(crate) fn default_entropy_points_value() -> usize {
    DEFAULT_ENTROPY_POINTS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Cells per torus direction.
    pub sizes: Vec<usize>,
    #[serde(default = "default_cfl_value")]
    pub cfl: f64,
    pub t_end: f64,
    /// Extra snapshot times in `(0, t_end)`; the initial and final states are always kept.
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default)]
    pub scheme: Scheme,
    #[serde(default)]
    pub max_steps: Option<usize>,
    /// Number of Kruzhkov constants checked per step; 0 disables the check.
    #[serde(default = "default_entropy_points_value")]
    pub entropy_points: usize,
}

impl RunConfig {
    pub fn new(sizes: Vec<usize>, t_end: f64) -> Self {
        Self {
            sizes,
            cfl: DEFAULT_CFL,
            t_end,
            snapshot_times: Vec::new(),
            scheme: Scheme::Rusanov,
            max_steps: None,
            entropy_points: DEFAULT_ENTROPY_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::Config(format!(
                "end time {} must be finite and >= 0",
                self.t_end
            )));
        }
        if let Some(t) = self.snapshot_times.iter().find(|t| !(**t >= 0.0 && **t <= self.t_end)) {
            return Err(Error::Config(format!("snapshot time {t} outside [0, {}]", self.t_end)));
        }
        Ok(())
    }

    fn stops(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .snapshot_times
            .iter()
            .copied()
            .filter(|&t| t > 0.0 && t < self.t_end)
            .collect();
        s.push(self.t_end);
        s.sort_by(f64::total_cmp);
        s.dedup();
        s
    }
}

/// Diagnostics of one state along a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    /// Cell mean.
    pub mass: f64,
    /// Cell mean of `|v - C|`, `C` the initial mean.
    pub distance: f64,
    pub min: f64,
    pub max: f64,
    /// Largest entropy production of the step leading here.
    pub entropy_max: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub initial_mean: f64,
    pub snapshots: Vec<CellField>,
    pub steps: Vec<StepRecord>,
}

impl RunRecord {
    pub fn final_field(&self) -> &CellField {
        self.snapshots.last().expect("a run keeps its final state")
    }
}

/// Hook invoked after every accepted step.
pub trait StepObserver {
    fn after_step(
        &mut self,
        step: usize,
        before: &CellField,
        after: &CellField,
        dt: f64,
        stepper: &Stepper,
    ) -> Result<()>;
}

fn record(step: usize, f: &CellField, dt: f64, c: f64, entropy_max: Option<f64>) -> StepRecord {
    let (min, max) = f.range();
    StepRecord {
        step,
        t: f.time(),
        dt,
        mass: f.mean(),
        distance: f.distance_to(c),
        min,
        max,
        entropy_max,
    }
}

/// Advances `initial` to `cfg.t_end`, landing exactly on every snapshot time.
pub fn run_field(
    initial: CellField,
    stepper: &Stepper,
    cfg: &RunConfig,
    observers: &mut [&mut dyn StepObserver],
) -> Result<RunRecord> {
    cfg.validate()?;
    if initial.sizes() != cfg.sizes.as_slice() {
        return Err(Error::GridMismatch(format!(
            "field grid {:?} differs from configured {:?}",
            initial.sizes(),
            cfg.sizes
        )));
    }
    let c = initial.mean();
    let mut steps = vec![record(0, &initial, 0.0, c, None)];
    let mut snapshots = vec![initial.clone()];
    let mut field = initial;
    let mut count = 0usize;
    for stop in cfg.stops() {
        while field.time() < stop {
            if cfg.max_steps.is_some_and(|m| count >= m) {
                return Err(Error::Config(format!(
                    "step limit {} reached at t = {}",
                    count,
                    field.time()
                )));
            }
            let max_dt = stepper.max_dt(&field);
            let remaining = stop - field.time();
            let landing = remaining <= max_dt;
            let dt = if landing { remaining } else { max_dt };
            let mut next = stepper.step(&field, dt).map_err(|e| match e {
                Error::MaximumPrinciple { min, max, lo, hi, .. } => Error::MaximumPrinciple {
                    step: count + 1,
                    min,
                    max,
                    lo,
                    hi,
                },
                other => other,
            })?;
            if landing {
                next.set_time(stop);
            }
            count += 1;
            let entropy_max = if cfg.entropy_points > 0 {
                Some(stepper.entropy_residual_sweep(&field, &next, dt, cfg.entropy_points)?)
            } else {
                None
            };
            for obs in observers.iter_mut() {
                obs.after_step(count, &field, &next, dt, stepper)?;
            }
            steps.push(record(count, &next, dt, c, entropy_max));
            field = next;
        }
        if snapshots.last().is_none_or(|s| s.time() != field.time()) {
            snapshots.push(field.clone());
        }
    }
    Ok(RunRecord {
        initial_mean: c,
        snapshots,
        steps,
    })
}

/// Lifts `p`, builds the directional fluxes and runs to `cfg.t_end`.
pub fn solve(
    p: &TrigPoly,
    lift: &LiftSpec,
    flux: &PiecewiseFlux,
    cfg: &RunConfig,
    observers: &mut [&mut dyn StepObserver],
) -> Result<RunRecord> {
    cfg.validate()?;
    let initial = lift_initial(p, lift, &cfg.sizes)?;
    let (lo, hi) = initial.bounds();
    flux.ensure_covers(lo, hi)?;
    let stepper = Stepper::new(LiftedFlux::new(flux, lift)?, cfg.cfl)?;
    run_field(initial, &stepper, cfg, observers)
}

/// One lockstep step of a pair run.
#[derive(Clone, Debug, PartialEq)]
pub struct PairStep {
    pub t: f64,
    pub dt: f64,
    /// Cell mean of `|a - b|` after the step.
    pub distance: f64,
    /// Largest entropy production over both members.
    pub entropy_max: Option<f64>,
    pub mass: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct PairRun {
    pub initial_distance: f64,
    pub initial_mass: (f64, f64),
    pub steps: Vec<PairStep>,
    pub a: CellField,
    pub b: CellField,
}

/// Runs two fields on a shared step schedule (`dt` the smaller admissible step).
pub fn run_pair(stepper: &Stepper, a: CellField, b: CellField, steps: usize, entropy_points: usize) -> Result<PairRun> {
    a.same_grid(&b)?;
    let initial_distance = a.l1_distance(&b)?;
    let initial_mass = (a.mean(), b.mean());
    let (mut a, mut b) = (a, b);
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let dt = stepper.max_dt(&a).min(stepper.max_dt(&b));
        if !dt.is_finite() {
            break;
        }
        let (na, nb) = rayon::join(|| stepper.step(&a, dt), || stepper.step(&b, dt));
        let (na, nb) = (na?, nb?);
        let entropy_max = if entropy_points > 0 {
            Some(
                stepper
                    .entropy_residual_sweep(&a, &na, dt, entropy_points)?
                    .max(stepper.entropy_residual_sweep(&b, &nb, dt, entropy_points)?),
            )
        } else {
            None
        };
        out.push(PairStep {
            t: na.time(),
            dt,
            distance: na.l1_distance(&nb)?,
            entropy_max,
            mass: (na.mean(), nb.mean()),
        });
        a = na;
        b = nb;
    }
    Ok(PairRun {
        initial_distance,
        initial_mass,
        steps: out,
        a,
        b,
    })
}
