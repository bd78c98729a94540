use std::path::PathBuf;

use bohrlift::apcore::{value_range, TorusGrid};
use bohrlift::diagnostics::{decay_experiment, decay_trace, profile_along, DecayVerdict, EXACT_POINTS};
use bohrlift::fejer::{fejer_weights, kernel_eval, FejerPlan, MAX_ORDER};
use bohrlift::flux::{make_counterexample, nd_check_f64, NdReport};
use bohrlift::schema::{frequency_json, group_json, nd_report_json, qbasis_json, trigpoly_to_doc};
use bohrlift::solver::{solve, RunConfig};
use bohrlift::specgroup::{group_generated_in, qlinear_basis, spectrum};
use bohrlift::{FreqGroup, LiftSpec, PiecewiseFlux, TrigPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::ExperimentConfig;
use crate::error::{invalid, CliResult, Stage};
use crate::output::{decay_csv, plot_script, snapshot_csv, OutputDir};

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Exit 0.
    Success,
    /// Exit 2: the non-degeneracy condition fails, or an experiment did not
    /// confirm its expected verdict.
    Negative,
}

pub struct Context {
    pub config: ExperimentConfig,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// Random points for the kernel positivity probe of `fejer`.
    pub samples: usize,
}

impl Context {
    fn echo(&self) -> Value {
        serde_json::to_value(&self.config).expect("configuration serializes")
    }

    fn output(&self, default: Option<&str>) -> CliResult<Option<OutputDir>> {
        match self.out.as_deref().or(default.map(std::path::Path::new)) {
            Some(p) => OutputDir::create(p).map(Some),
            None => Ok(None),
        }
    }
}

fn data_group(p: &TrigPoly) -> CliResult<FreqGroup> {
    let sp = spectrum(p);
    group_generated_in(p.base(), p.dims(), sp.iter()).stage("input")
}

fn group_or_data(ctx: &Context) -> CliResult<FreqGroup> {
    if let Some(g) = ctx.config.group()? {
        return Ok(g);
    }
    if ctx.config.has_data() {
        return data_group(&ctx.config.data()?);
    }
    Err(invalid("input", "a group or data file is needed (--group / --data)"))
}

pub fn spectrum_cmd(ctx: &Context) -> CliResult<Outcome> {
    let p = ctx.config.data()?;
    let sp = spectrum(&p);
    let g = data_group(&p)?;
    let q = qlinear_basis(p.base(), p.dims(), sp.iter()).stage("spectrum")?;
    println!("base {}", p.base());
    println!("spectrum ({} lines)", sp.len());
    for f in &sp {
        println!("  {f}");
    }
    println!("group rank {}", g.rank());
    for f in g.generators() {
        println!("  {f}");
    }
    println!("q-basis ({} vectors)", q.len());
    for f in q.vectors() {
        println!("  {f}");
    }
    if let Some(mut out) = ctx.output(None)? {
        out.write_json(
            "spectrum.json",
            &json!({
                "spectrum": sp.iter().map(frequency_json).collect::<Vec<_>>(),
                "group": group_json(&g),
                "qbasis": qbasis_json(&q),
            }),
        )?;
        out.finish("spectrum", &ctx.echo(), ctx.seed)?;
    }
    Ok(Outcome::Success)
}

fn nd_interval(ctx: &Context, flux: &PiecewiseFlux) -> CliResult<(f64, f64)> {
    let (dlo, dhi) = flux.domain();
    if let Some([a, b]) = ctx.config.interval {
        return Ok((a, b));
    }
    if ctx.config.has_data() {
        let p = ctx.config.data()?;
        let lift = LiftSpec::for_poly(&p).stage("nd-check")?;
        let (lo, hi) = value_range(&p, &lift, TorusGrid::default_for(lift.torus_dim())).stage("nd-check")?;
        return Ok((lo.max(dlo), hi.min(dhi)));
    }
    Ok((dlo, dhi))
}

fn print_report(r: &NdReport) {
    match &r.witness {
        None => println!("verdict: holds"),
        Some(w) => {
            println!("verdict: fails");
            println!(
                "witness: xi = {}  piece {}  interval [{}, {}]  slope {}",
                w.xi,
                w.piece,
                w.interval.0,
                w.interval.1,
                w.slope_f64()
            );
        }
    }
}

pub fn nd_check_cmd(ctx: &Context) -> CliResult<Outcome> {
    let flux = ctx.config.flux()?;
    let g = group_or_data(ctx)?;
    let (a, b) = nd_interval(ctx, &flux)?;
    let report = nd_check_f64(&flux, &g, a, b).stage("nd-check")?;
    print_report(&report);
    if let Some(mut out) = ctx.output(None)? {
        out.write_json(
            "nd.json",
            &json!({ "interval": [a, b], "report": nd_report_json(&report) }),
        )?;
        out.finish("nd-check", &ctx.echo(), ctx.seed)?;
    }
    Ok(if report.holds() {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}

const DEFAULT_OUT: &str = "bohrlift-out";

pub fn solve_cmd(ctx: &Context) -> CliResult<Outcome> {
    let cfg = &ctx.config;
    cfg.validate_grid()?;
    let t_end = cfg.t_end()?;
    let flux = cfg.flux()?;
    let p = cfg.data()?;
    let lift = LiftSpec::for_poly(&p).stage("solve")?;
    if lift.torus_dim() != cfg.sizes.len() {
        return Err(invalid(
            "config",
            format!(
                "the data lifts to a {}-torus but `sizes` has {} entries",
                lift.torus_dim(),
                cfg.sizes.len()
            ),
        ));
    }
    let mut run_cfg = RunConfig::new(cfg.sizes.clone(), t_end);
    run_cfg.cfl = cfg.cfl;
    run_cfg.snapshot_times = cfg.snapshot_times.clone();
    run_cfg.entropy_points = cfg.entropy_points;
    let run = solve(&p, &lift, &flux, &run_cfg, &mut []).stage("solve")?;
    let trace = decay_trace(&run);

    let mut out = ctx.output(Some(DEFAULT_OUT))?.expect("default output directory");
    let mut names = Vec::new();
    for (i, snap) in run.snapshots.iter().enumerate() {
        let name = format!("snapshot_{i:04}.csv");
        out.write(&name, snapshot_csv(snap).as_bytes())?;
        names.push(name);
    }
    out.write("decay.csv", decay_csv(&trace).as_bytes())?;
    out.write("plot.gp", plot_script(&names, lift.torus_dim() == 1).as_bytes())?;
    let dir = out.finish("solve", &ctx.echo(), ctx.seed)?;

    println!("torus dimension {}  cells {:?}", lift.torus_dim(), cfg.sizes);
    println!("steps {}  t = {}", run.steps.len() - 1, run.final_field().time());
    println!(
        "D(0) = {}  D(T) = {}  ratio {}",
        trace.initial(),
        trace.last().distance,
        trace.ratio()
    );
    println!("mass drift {:e}", trace.max_mass_drift());
    if run.steps.len() > 1 {
        println!("largest D increase {:e}", trace.max_increase());
    }
    if let Some(e) = trace.max_entropy_residual() {
        println!("largest entropy residual {e:e}");
    }
    println!("wrote {}", dir.display());
    Ok(Outcome::Success)
}

pub fn decay_cmd(ctx: &Context) -> CliResult<Outcome> {
    let cfg = &ctx.config;
    cfg.validate_decay()?;
    let flux = cfg.flux()?;
    let p = cfg.data()?;
    let g = match cfg.group()? {
        Some(g) => g,
        None => data_group(&p)?,
    };
    let outcome = decay_experiment(&flux, &g, &p, &cfg.decay).stage("decay")?;
    let verdict = serde_json::to_value(outcome.verdict).expect("verdict serializes");
    let mut out = ctx.output(Some(DEFAULT_OUT))?.expect("default output directory");
    out.write_json(
        "verdict.json",
        &json!({
            "verdict": verdict,
            "nd": nd_report_json(&outcome.nd),
            "ratios": outcome.ratios,
            "refinement": outcome.refinement,
            "exact": outcome.exact,
        }),
    )?;
    if let Some(trace) = &outcome.trace {
        out.write("decay.csv", decay_csv(trace).as_bytes())?;
        out.write("plot.gp", plot_script(&[], false).as_bytes())?;
    }
    if let Some(u0) = &outcome.counterexample {
        let doc = trigpoly_to_doc(u0).stage("decay")?;
        out.write_json(
            "counterexample.json",
            &serde_json::to_value(doc).expect("document serializes"),
        )?;
    }
    let dir = out.finish("decay", &ctx.echo(), ctx.seed)?;

    println!("verdict: {}", verdict.as_str().unwrap_or_default());
    print_report(&outcome.nd);
    if let Some(trace) = &outcome.trace {
        println!(
            "D(0) = {}  D(T) = {}  ratio {}",
            trace.initial(),
            trace.last().distance,
            trace.ratio()
        );
    }
    for e in &outcome.exact {
        println!("exact D({}) = {}", e.t, e.distance);
    }
    for r in &outcome.refinement {
        println!("cells {}  D({}) = {}", r.cells, r.t, r.distance);
    }
    println!("wrote {}", dir.display());
    Ok(match outcome.verdict {
        DecayVerdict::DecayConfirmed | DecayVerdict::NoDecayConfirmed => Outcome::Success,
        _ => Outcome::Negative,
    })
}

pub fn fejer_cmd(ctx: &Context) -> CliResult<Outcome> {
    let p = ctx.config.data()?;
    let r = ctx
        .config
        .order
        .ok_or_else(|| invalid("fejer", "missing order (--order or config `order`)"))?;
    if r == 0 || r > MAX_ORDER {
        return Err(invalid("fejer", format!("order {r} is outside 1..={MAX_ORDER}")));
    }
    let sp = spectrum(&p);
    let q = qlinear_basis(p.base(), p.dims(), sp.iter()).stage("fejer")?;
    let mut rows = Vec::new();
    println!("order {r}  basis {} vectors", q.len());
    println!("frequency\tindex\tweight\tdecimal");
    let plan = if q.is_empty() {
        None
    } else {
        Some(FejerPlan::new(q.clone(), r).stage("fejer")?)
    };
    let weights = plan.as_ref().map(fejer_weights);
    for lambda in &sp {
        let (index, weight, decimal) = match &weights {
            None => (Some(Vec::new()), "1".to_string(), 1.0),
            Some(w) => {
                let lw = w.at(lambda).stage("fejer")?;
                let dec = lw.weight_f64();
                (lw.index, lw.weight.to_string(), dec)
            }
        };
        let index_text = match &index {
            Some(k) => format!("{k:?}"),
            None => "outside index range".to_string(),
        };
        println!("{lambda}\t{index_text}\t{weight}\t{decimal}");
        rows.push(json!({
            "frequency": frequency_json(lambda),
            "index": index,
            "weight": weight,
            "decimal": decimal,
            "outside_index_range": index.is_none(),
        }));
    }
    let samples = ctx.samples;
    let mut min_kernel = Value::Null;
    if let (Some(plan), true) = (&plan, samples > 0) {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let mut lo = f64::INFINITY;
        for _ in 0..samples {
            let x: Vec<f64> = (0..p.dims()).map(|_| rng.random_range(-100.0..100.0)).collect();
            lo = lo.min(kernel_eval(plan, &x));
        }
        println!("kernel minimum over {samples} random points: {lo}");
        min_kernel = json!(lo);
    }
    if let Some(mut out) = ctx.output(None)? {
        out.write_json(
            "fejer.json",
            &json!({ "order": r, "lines": rows, "kernel_min": min_kernel }),
        )?;
        out.finish("fejer", &ctx.echo(), ctx.seed)?;
    }
    Ok(Outcome::Success)
}

pub fn counterexample_cmd(ctx: &Context) -> CliResult<Outcome> {
    let flux = ctx.config.flux()?;
    let g = group_or_data(ctx)?;
    let (a, b) = nd_interval(ctx, &flux)?;
    let report = nd_check_f64(&flux, &g, a, b).stage("counterexample")?;
    print_report(&report);
    let Some(w) = &report.witness else {
        println!("the condition holds: no traveling-wave counterexample exists");
        return Ok(Outcome::Negative);
    };
    let profile = match ctx.config.profile()? {
        Some(prof) => prof,
        None => {
            let from_data = if ctx.config.has_data() {
                profile_along(&ctx.config.data()?, &w.xi).stage("counterexample")?
            } else {
                None
            };
            from_data.ok_or_else(|| {
                invalid(
                    "counterexample",
                    "no profile given and the data is not a function of the witness direction",
                )
            })?
        }
    };
    let (u0, wave) = make_counterexample(&flux, &report, &profile).stage("counterexample")?;
    let mut times = vec![0.0];
    times.extend(ctx.config.decay.exact_times.iter().copied());
    let exact: Vec<Value> = times
        .iter()
        .map(|&t| json!({ "t": t, "distance": wave.distance_to_mean(t, EXACT_POINTS) }))
        .collect();
    println!("u(t, x) = W(xi . x - {} t)  mean {}", wave.speed(), wave.mean() + 0.0);
    for e in &exact {
        println!("exact D({}) = {}", e["t"], e["distance"]);
    }
    let mut out = ctx.output(Some(DEFAULT_OUT))?.expect("default output directory");
    out.write_json(
        "counterexample.json",
        &json!({
            "report": nd_report_json(&report),
            "xi": frequency_json(wave.xi()),
            "speed": wave.speed(),
            "mean": wave.mean(),
            "initial": serde_json::to_value(trigpoly_to_doc(&u0).stage("counterexample")?).expect("document serializes"),
            "exact": exact,
        }),
    )?;
    let dir = out.finish("counterexample", &ctx.echo(), ctx.seed)?;
    println!("wrote {}", dir.display());
    Ok(Outcome::Success)
}
