use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use avsoc_core::experiments::io::{read_raw, write_comparisons, write_raw, write_summary};
use avsoc_core::experiments::{
    builtin_set, builtin_specs, compare_modes, plot_data, run_sweep, run_sweep_with_threads, run_traced,
    sonar_safety_matrix, ConfigSeries, ExperimentSpec, SetId, SpecError, SweepSummary, MATRIX_SOURCES,
};
use avsoc_core::fuzzy::table_io::to_text;
use avsoc_core::fuzzy::validation::{evaluate_all, UNDESIRABILITY_ROWS};
use avsoc_core::fuzzy::{
    build_undesirability_fis, calibrate_undesirability, CalibrationError, IntensityScale, MembershipLayout,
    UNDESIRABILITY,
};
use avsoc_core::society::trace::{write_agent_trace, write_fear_trace};
use avsoc_core::society::WorldConfig;

#[derive(Parser)]
#[command(
    name = "avsoc",
    version,
    about = "Fear-driven norm compliance in a society of autonomous vehicles"
)]
struct Cli {
    /// Output root; raw/, summary/ and report/ are created below it.
    #[arg(long, global = true, env = "AVSOC_OUT_DIR", default_value = "out")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the undesirability system against the 14 hand-traced rows.
    ValidateFuzzy {
        /// Recompute membership peaks instead of using the frozen ones.
        #[arg(long)]
        recalibrate: bool,
        /// Write the evaluated system (peaks and rules) to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Run one simulation and print its total collisions.
    Run {
        /// World config file (TOML). Defaults apply to missing keys.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        num_avs: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Defaults to the config's tick count.
        #[arg(long)]
        ticks: Option<u64>,
        /// Overrides the config's metacognition switch.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Also write per-agent and fear traces.
        #[arg(long)]
        trace: bool,
    },
    /// Run a built-in experiment set or a spec file.
    Sweep {
        /// a1..a5, b1..b5 or all.
        #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
        set: Option<String>,
        /// Experiment spec file (TOML).
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        base_seed: Option<u64>,
        #[arg(long)]
        repetitions: Option<u32>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Summarise raw sweep files into comparison, matrix and plot files.
    Report {
        /// Sets to include: a1..a5, b1..b5 or all.
        #[arg(long, default_value = "all")]
        set: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    RandomWalk,
    Norms,
}

/// A failed check, as opposed to an error.
const CHECK_FAILED: u8 = 1;
const ERROR: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool> {
    let out = &cli.out_dir;
    match &cli.command {
        Command::ValidateFuzzy { recalibrate, export } => validate_fuzzy(*recalibrate, export.as_deref()),
        Command::Run {
            config,
            num_avs,
            seed,
            ticks,
            mode,
            trace,
        } => {
            let mut cfg = match config {
                Some(path) => WorldConfig::from_toml(&read(path)?).with_context(|| path.display().to_string())?,
                None => WorldConfig::default(),
            };
            if let Some(n) = num_avs {
                cfg.num_avs = *n;
            }
            if let Some(m) = mode {
                cfg.metacognition = matches!(m, ModeArg::Norms);
            }
            run(out, &cfg, ticks.unwrap_or(cfg.ticks), *seed, *trace)
        }
        Command::Sweep {
            set,
            spec,
            base_seed,
            repetitions,
            threads,
        } => {
            let mut specs = match (set, spec) {
                (_, Some(path)) => {
                    vec![ExperimentSpec::from_toml(&read(path)?).with_context(|| path.display().to_string())?]
                }
                (Some(set), None) => named_specs(set)?,
                (None, None) => unreachable!("clap requires one"),
            };
            for s in &mut specs {
                if let Some(b) = base_seed {
                    *s = s.clone().with_base_seed(*b);
                }
                if let Some(r) = repetitions {
                    *s = s.clone().with_repetitions(*r);
                }
            }
            sweep(out, &specs, *threads)
        }
        Command::Report { set } => report(out, &named_specs(set)?),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn named_specs(set: &str) -> Result<Vec<ExperimentSpec>, SpecError> {
    if set.eq_ignore_ascii_case("all") {
        Ok(builtin_specs())
    } else {
        Ok(builtin_set(set.parse::<SetId>()?))
    }
}

fn validate_fuzzy(recalibrate: bool, export: Option<&Path>) -> Result<bool> {
    let fis = if recalibrate {
        let cal = match calibrate_undesirability::<f64>(&UNDESIRABILITY_ROWS) {
            Ok(cal) => cal,
            Err(CalibrationError::Infeasible(violations)) => {
                for v in &violations {
                    eprintln!("constraint violated: {v}");
                }
                bail!(
                    "calibration infeasible ({} label constraints violated)",
                    violations.len()
                );
            }
            Err(e) => return Err(e.into()),
        };
        info!("calibrated peaks {:?}", cal.peaks.peaks);
        UNDESIRABILITY.build(&MembershipLayout::new(IntensityScale::standard(), cal.peaks))?
    } else {
        build_undesirability_fis::<f64>()
    };
    let outcomes = evaluate_all(&fis, &UNDESIRABILITY_ROWS)?;
    let var = fis.output();
    let mut stdout = io::stdout().lock();
    writeln!(
        stdout,
        "test_no,imp_goal,ach_goal,expected,expected_token,actual,actual_token,pass"
    )?;
    for o in &outcomes {
        let r = &o.row;
        writeln!(
            stdout,
            "{},{},{},{},{},{:.3},{},{}",
            r.test_no,
            r.imp_goal.0,
            r.ach_goal.0,
            r.undesirability.0,
            var.token(r.undesirability.1),
            o.actual,
            var.token(o.actual_level),
            if o.passed() { "pass" } else { "fail" }
        )?;
    }
    stdout.flush()?;
    if let Some(path) = export {
        create(path)?.write_all(to_text(&fis).as_bytes())?;
        info!("wrote {}", path.display());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.row.test_no).collect();
    if failed.is_empty() {
        info!("all {} rows pass", outcomes.len());
    } else {
        warn!("{} of {} rows fail: {failed:?}", failed.len(), outcomes.len());
    }
    Ok(failed.is_empty())
}

fn run(out: &Path, cfg: &WorldConfig, ticks: u64, seed: u64, trace: bool) -> Result<bool> {
    cfg.validate()?;
    let traced = run_traced(cfg, ticks, seed)?;
    let mode = if cfg.metacognition { "norms" } else { "random-walk" };
    let stem = format!("run-{mode}-n{}-seed{seed}", cfg.num_avs);

    let path = out.join("raw").join(format!("{stem}.csv"));
    let mut w = create(&path)?;
    writeln!(w, "tick,collisions")?;
    for (t, c) in traced.result.per_tick.iter().enumerate() {
        writeln!(w, "{},{c}", t + 1)?;
    }
    w.flush()?;
    info!("wrote {}", path.display());

    if trace {
        let path = out.join("raw").join(format!("{stem}-agents.csv"));
        let mut w = create(&path)?;
        write_agent_trace(&mut w, &traced.agents, true)?;
        w.flush()?;
        let path = out.join("raw").join(format!("{stem}-fear.csv"));
        let mut w = create(&path)?;
        write_fear_trace(&mut w, &traced.fear, true)?;
        w.flush()?;
        info!("wrote traces next to {stem}.csv");
    }
    println!("total_collisions={}", traced.result.total_collisions);
    Ok(true)
}

fn sweep(out: &Path, specs: &[ExperimentSpec], threads: Option<usize>) -> Result<bool> {
    let mut summaries = Vec::with_capacity(specs.len());
    for spec in specs {
        info!(
            "sweeping {} ({} rows x {} reps)",
            spec.set,
            spec.rows.len(),
            spec.repetitions
        );
        let s = match threads {
            Some(n) => run_sweep_with_threads(spec, n)?,
            None => run_sweep(spec)?,
        };
        let path = out.join("raw").join(format!("{}.csv", spec.set));
        let mut w = create(&path)?;
        write_raw(&mut w, &s.runs)?;
        w.flush()?;
        let path = out.join("summary").join(format!("{}.csv", spec.set));
        let mut w = create(&path)?;
        write_summary(&mut w, &[&s])?;
        w.flush()?;
        summaries.push(s);
    }
    let refs: Vec<&SweepSummary> = summaries.iter().collect();
    write_summary(io::stdout().lock(), &refs)?;
    Ok(true)
}

fn report(out: &Path, specs: &[ExperimentSpec]) -> Result<bool> {
    let raw_dir = out.join("raw");
    let paths: Vec<(String, PathBuf)> = specs
        .iter()
        .map(|s| (s.set.clone(), raw_dir.join(format!("{}.csv", s.set))))
        .collect();
    let missing: Vec<String> = paths
        .iter()
        .filter(|(_, p)| !p.is_file())
        .map(|(_, p)| p.display().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(anyhow!("missing raw files: {}", missing.join(", ")));
    }

    let mut summaries = Vec::with_capacity(paths.len());
    for (label, path) in &paths {
        let runs = read_raw(File::open(path)?).with_context(|| path.display().to_string())?;
        summaries.push(SweepSummary::from_runs(label, runs));
    }
    let by_label = |label: &str| summaries.iter().find(|s| s.set == label);

    let refs: Vec<&SweepSummary> = summaries.iter().collect();
    let mut w = create(&out.join("summary").join("summary.csv"))?;
    write_summary(&mut w, &refs)?;
    w.flush()?;

    let mut ok = true;
    let mut reports = Vec::new();
    for a in summaries.iter().filter(|s| s.set.starts_with('A')) {
        let b_label = format!("B{}", &a.set[1..]);
        let Some(b) = by_label(&b_label) else { continue };
        let r = compare_modes(a, b)?;
        if r.all_pass() {
            info!("{} below {} at every AV count", b.set, a.set);
        } else {
            warn!("{} not below {} at every AV count", b.set, a.set);
        }
        ok &= r.all_pass();
        let suffix = a.set[1..].to_lowercase();
        let mut w = create(&out.join("report").join(format!("plot-{suffix}.csv")))?;
        w.write_all(plot_data(&[a, b])?.as_bytes())?;
        w.flush()?;
        reports.push(r);
    }
    let mut w = create(&out.join("report").join("comparison.csv"))?;
    write_comparisons(&mut w, &reports)?;
    w.flush()?;
    write_comparisons(io::stdout().lock(), &reports)?;

    let series: Option<Vec<ConfigSeries>> = MATRIX_SOURCES
        .iter()
        .map(|&((safety, sonar), label)| by_label(label).map(|s| ConfigSeries::from_summary(safety, sonar, s)))
        .collect();
    match series {
        Some(series) => {
            let m = sonar_safety_matrix(&series)?;
            let mut w = create(&out.join("report").join("matrix.csv"))?;
            w.write_all(m.to_csv().as_bytes())?;
            w.flush()?;
            if m.short_sonar_worse() {
                info!("(safety 3, sonar 2) has the most collisions of the compared cells at every AV count");
            } else {
                warn!("(safety 3, sonar 2) is not above (3, 3) and (2, 2) at every AV count");
            }
            ok &= m.short_sonar_worse();
        }
        None => info!("matrix skipped: not every source set is included"),
    }
    Ok(ok)
}
