use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use bohrlift::diagnostics::{csv_number, DecayTrace};
use bohrlift::CellField;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("BOHRLIFT_VERSION");

/// Output directory that records a digest of every file written through it.
pub struct OutputDir {
    root: PathBuf,
    digests: BTreeMap<String, String>,
}

impl OutputDir {
    pub fn create(root: &Path) -> CliResult<Self> {
        fs::create_dir_all(root).map_err(|source| CliError::Io {
            stage: "output",
            path: root.to_path_buf(),
            source,
        })?;
        Ok(Self {
            root: root.to_path_buf(),
            digests: BTreeMap::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> CliResult<()> {
        let path = self.root.join(name);
        fs::write(&path, bytes).map_err(|source| CliError::Io {
            stage: "output",
            path,
            source,
        })?;
        self.digests
            .insert(name.to_string(), hex::encode(Sha256::digest(bytes)));
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, value: &Value) -> CliResult<()> {
        let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
        s.push('\n');
        self.write(name, s.as_bytes())
    }

    /// Writes `manifest.json`: version, command, full configuration echo and
    /// the digests of all files written before it.
    pub fn finish(mut self, command: &str, config: &Value, seed: u64) -> CliResult<PathBuf> {
        let outputs: Vec<Value> = self
            .digests
            .iter()
            .map(|(file, sha)| json!({ "file": file, "sha256": sha }))
            .collect();
        let manifest = json!({
            "tool": "bohrlift",
            "version": VERSION,
            "command": command,
            "seed": seed,
            "config": config,
            "outputs": outputs,
        });
        self.write_json("manifest.json", &manifest)?;
        Ok(self.root)
    }
}

/// Cell-major CSV of one snapshot, preceded by a `#` line with grid and bounds.
pub fn snapshot_csv(field: &CellField) -> String {
    let sizes = field.sizes();
    let (lo, hi) = field.bounds();
    let size_list: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
    let mut s = format!(
        "# m={} sizes={} t={} u_min={} u_max={}\n",
        sizes.len(),
        size_list.join("x"),
        csv_number(field.time()),
        csv_number(lo),
        csv_number(hi)
    );
    let cols: Vec<String> = (0..sizes.len()).map(|j| format!("i{j}")).collect();
    s.push_str(&cols.join(","));
    s.push_str(",u\n");
    let strides = field.strides();
    for (flat, v) in field.data().iter().enumerate() {
        for (j, st) in strides.iter().enumerate() {
            s.push_str(&((flat / st) % sizes[j]).to_string());
            s.push(',');
        }
        s.push_str(&csv_number(*v));
        s.push('\n');
    }
    s
}

pub fn decay_csv(trace: &DecayTrace) -> String {
    trace.to_csv()
}

/// gnuplot script for `decay.csv` and, on one-dimensional grids, the snapshots.
pub fn plot_script(snapshots: &[String], one_dimensional: bool) -> String {
    let mut s = String::from(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set terminal pngcairo size 900,600\n\
         set output 'decay.png'\n\
         set xlabel 't'\n\
         set ylabel 'mean |u - C|'\n\
         set logscale y\n\
         plot 'decay.csv' using 1:2 with lines title 'D(t)'\n",
    );
    if one_dimensional && !snapshots.is_empty() {
        s.push_str(
            "unset logscale y\n\
             set output 'snapshots.png'\n\
             set xlabel 'cell'\n\
             set ylabel 'u'\n",
        );
        let parts: Vec<String> = snapshots
            .iter()
            .map(|f| format!("'{f}' using 1:2 with lines title '{f}'"))
            .collect();
        s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    }
    s
}
