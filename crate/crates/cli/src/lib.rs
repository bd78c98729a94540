//! Command-line front end: argument parsing, configuration and dispatch.
//!
//! Exit codes: 0 success, 1 error, 2 negative result (the non-degeneracy
//! condition fails, or an experiment did not confirm its expected verdict).

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::commands::{Context, Outcome};
use crate::config::{ExperimentConfig, Source};
use crate::error::{invalid, CliResult};

/// Environment variable overriding the output directory.
pub const OUT_ENV: &str = "BOHRLIFT_OUT";

#[derive(Debug, Parser)]
#[command(name = "bohrlift", version = output::VERSION, about = "Almost periodic entropy solutions via torus lifts")]
pub struct Cli {
    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Inputs {
    /// Flux document (JSON).
    #[arg(long)]
    pub flux: Option<PathBuf>,
    /// Trigonometric polynomial document (JSON).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Frequency group document (JSON).
    #[arg(long)]
    pub group: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, generated group and rational basis of the data.
    Spectrum {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decide the non-degeneracy condition; exit 2 when it fails.
    NdCheck {
        #[command(flatten)]
        inputs: Inputs,
        /// State interval to check.
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["A", "B"])]
        interval: Option<Vec<f64>>,
    },
    /// Run the lifted solver and write snapshots, decay trace and manifest.
    Solve {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decay experiment: solver run or exact traveling wave plus refinement study.
    Decay {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Fejér weights of the data's spectral lines.
    Fejer {
        #[command(flatten)]
        inputs: Inputs,
        /// Kernel order r (1..=7).
        #[arg(long)]
        order: Option<u32>,
        /// Random points at which the kernel's positivity is probed.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Build the traveling-wave counterexample when the condition fails.
    Counterexample {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["A", "B"])]
        interval: Option<Vec<f64>>,
    },
}

fn override_path<T>(slot: &mut Option<Source<T>>, path: &Option<PathBuf>) {
    if let Some(p) = path {
        *slot = Some(Source::Path(p.clone()));
    }
}

fn build_context(cli: &Cli) -> CliResult<(Context, &'static str)> {
    let mut config = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let (inputs, name) = match &cli.command {
        Command::Spectrum { inputs } => (inputs, "spectrum"),
        Command::NdCheck { inputs, .. } => (inputs, "nd-check"),
        Command::Solve { inputs } => (inputs, "solve"),
        Command::Decay { inputs } => (inputs, "decay"),
        Command::Fejer { inputs, .. } => (inputs, "fejer"),
        Command::Counterexample { inputs, .. } => (inputs, "counterexample"),
    };
    override_path(&mut config.flux, &inputs.flux);
    override_path(&mut config.data, &inputs.data);
    override_path(&mut config.group, &inputs.group);
    let mut samples = 0;
    match &cli.command {
        Command::NdCheck { interval: Some(v), .. } | Command::Counterexample { interval: Some(v), .. } => {
            config.interval = Some([v[0], v[1]]);
        }
        Command::Fejer { order, samples: s, .. } => {
            if order.is_some() {
                config.order = *order;
            }
            samples = *s;
        }
        _ => {}
    }
    // command-line paths are relative to the working directory
    let config = config.resolve(Path::new("."))?;
    if let Some([a, b]) = config.interval {
        if !(a <= b) {
            return Err(invalid("config", format!("interval [{a}, {b}] is empty")));
        }
    }
    let out = cli
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .or_else(|| config.output_dir.clone());
    Ok((
        Context {
            config,
            out,
            seed: cli.seed,
            samples,
        },
        name,
    ))
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid("config", "--threads must be positive"));
        }
        // a second initialization (repeated in-process calls) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let (ctx, name) = build_context(cli)?;
    log::info!("running {name}");
    match cli.command {
        Command::Spectrum { .. } => commands::spectrum_cmd(&ctx),
        Command::NdCheck { .. } => commands::nd_check_cmd(&ctx),
        Command::Solve { .. } => commands::solve_cmd(&ctx),
        Command::Decay { .. } => commands::decay_cmd(&ctx),
        Command::Fejer { .. } => commands::fejer_cmd(&ctx),
        Command::Counterexample { .. } => commands::counterexample_cmd(&ctx),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Negative) => 2,
        Err(e) => {
            eprintln!("bohrlift: {e}");
            1
        }
    }
}
