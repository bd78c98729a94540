//! Experiment configuration: one JSON document per run. Referenced files are
//! resolved relative to the configuration file and inlined, so the echo kept in
//! the manifest is self-contained.

use std::fs;
use std::path::{Path, PathBuf};

use bohrlift::diagnostics::DecayConfig;
use bohrlift::schema::{flux_from_doc, group_from_doc, trigpoly_from_doc, FluxDoc, GroupDoc, TrigPolyDoc};
use bohrlift::solver::DEFAULT_CFL;
use bohrlift::{FreqGroup, PiecewiseFlux, TrigPoly};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliError, CliResult, Stage};

pub const MIN_CELLS: usize = 16;
pub const MAX_CELLS: usize = 8192;

/// A document given inline or as a path to a JSON file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(PathBuf),
    Inline(T),
}

fn default_cfl() -> f64 {
    DEFAULT_CFL
}

fn default_entropy_points() -> usize {
    32
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub flux: Option<Source<FluxDoc>>,
    #[serde(default)]
    pub data: Option<Source<TrigPolyDoc>>,
    /// Frequency group for the non-degeneracy check; defaults to the group of the data.
    #[serde(default)]
    pub group: Option<Source<GroupDoc>>,
    /// Profile `W` for the counterexample builder (one-dimensional, integer frequencies).
    #[serde(default)]
    pub profile: Option<Source<TrigPolyDoc>>,
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default)]
    pub t_end: Option<f64>,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default = "default_entropy_points")]
    pub entropy_points: usize,
    /// State interval for the non-degeneracy check.
    #[serde(default)]
    pub interval: Option<[f64; 2]>,
    /// Fejér order.
    #[serde(default)]
    pub order: Option<u32>,
    #[serde(default)]
    pub decay: DecayConfig,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            flux: None,
            data: None,
            group: None,
            profile: None,
            sizes: Vec::new(),
            cfl: DEFAULT_CFL,
            t_end: None,
            snapshot_times: Vec::new(),
            entropy_points: default_entropy_points(),
            interval: None,
            order: None,
            decay: DecayConfig::default(),
            output_dir: None,
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, stage: &'static str) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        stage,
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        stage,
        path: path.to_path_buf(),
        source,
    })
}

fn inline<T: DeserializeOwned>(src: Option<Source<T>>, dir: &Path) -> CliResult<Option<Source<T>>> {
    Ok(match src {
        Some(Source::Path(p)) => Some(Source::Inline(read_json(&dir.join(p), "config")?)),
        other => other,
    })
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let cfg: Self = read_json(path, "config")?;
        let dir = path.parent().unwrap_or(Path::new("."));
        cfg.resolve(dir)
    }

    /// Inlines every file reference, reading relative to `dir`.
    pub fn resolve(self, dir: &Path) -> CliResult<Self> {
        Ok(Self {
            flux: inline(self.flux, dir)?,
            data: inline(self.data, dir)?,
            group: inline(self.group, dir)?,
            profile: inline(self.profile, dir)?,
            ..self
        })
    }

    pub fn flux(&self) -> CliResult<PiecewiseFlux> {
        match &self.flux {
            Some(Source::Inline(doc)) => flux_from_doc(doc).stage("input"),
            _ => Err(invalid("input", "no flux given (config `flux` or --flux)")),
        }
    }

    pub fn data(&self) -> CliResult<TrigPoly> {
        match &self.data {
            Some(Source::Inline(doc)) => trigpoly_from_doc(doc).stage("input"),
            _ => Err(invalid("input", "no data given (config `data` or --data)")),
        }
    }

    pub fn has_data(&self) -> bool {
        self.data.is_some()
    }

    pub fn group(&self) -> CliResult<Option<FreqGroup>> {
        match &self.group {
            Some(Source::Inline(doc)) => group_from_doc(doc).stage("input").map(Some),
            Some(Source::Path(_)) => Err(invalid("input", "unresolved group reference")),
            None => Ok(None),
        }
    }

    pub fn profile(&self) -> CliResult<Option<TrigPoly>> {
        match &self.profile {
            Some(Source::Inline(doc)) => trigpoly_from_doc(doc).stage("input").map(Some),
            Some(Source::Path(_)) => Err(invalid("input", "unresolved profile reference")),
            None => Ok(None),
        }
    }

    pub fn t_end(&self) -> CliResult<f64> {
        let t = self.t_end.ok_or_else(|| invalid("config", "missing `t_end`"))?;
        if !t.is_finite() || t < 0.0 {
            return Err(invalid("config", format!("t_end = {t} must be finite and >= 0")));
        }
        Ok(t)
    }

    pub fn validate_grid(&self) -> CliResult<()> {
        if self.sizes.is_empty() || self.sizes.len() > 3 {
            return Err(invalid("config", "`sizes` must list 1 to 3 grid sizes"));
        }
        check_cells(&self.sizes)
    }

    pub fn validate_decay(&self) -> CliResult<()> {
        let d = &self.decay;
        check_cells(&[d.cells])?;
        check_cells(&d.refinement)?;
        for (name, t) in [("decay.t_end", d.t_end), ("decay.refinement_t_end", d.refinement_t_end)] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(invalid("config", format!("{name} = {t} must be positive")));
            }
        }
        Ok(())
    }
}

pub fn check_cells(sizes: &[usize]) -> CliResult<()> {
    for &n in sizes {
        if !n.is_power_of_two() || !(MIN_CELLS..=MAX_CELLS).contains(&n) {
            return Err(invalid(
                "config",
                format!("grid size {n} must be a power of two in [{MIN_CELLS}, {MAX_CELLS}]"),
            ));
        }
    }
    Ok(())
}
