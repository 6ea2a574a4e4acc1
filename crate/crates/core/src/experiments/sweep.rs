use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::statistics::Statistics;
use thiserror::Error;

use super::run::run_simulation;
use super::spec::{ExperimentSpec, SpecError, SEED_STRIDE};
use crate::society::Mode;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{0}")]
    Shape(String),
}

/// Seed of repetition `rep` of the row at `row_index`.
pub fn seed_for(base_seed: u64, row_index: usize, rep: u32) -> u64 {
    base_seed
        .wrapping_add(row_index as u64 * SEED_STRIDE)
        .wrapping_add(u64::from(rep))
}

/// One run, as written to the raw CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub set: String,
    pub experiment_no: u32,
    pub num_avs: usize,
    pub mode: Mode,
    pub rep: u32,
    pub seed: u64,
    pub ticks: u64,
    pub collisions: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub experiment_no: u32,
    pub num_avs: usize,
    pub mode: Mode,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single repetition.
    pub stdev: f64,
    pub totals: Vec<u64>,
    pub seeds: Vec<u64>,
}

impl SummaryRow {
    pub fn from_totals(experiment_no: u32, num_avs: usize, mode: Mode, totals: Vec<u64>, seeds: Vec<u64>) -> Self {
        let (mean, stdev) = mean_stdev(&totals);
        Self {
            experiment_no,
            num_avs,
            mode,
            mean,
            stdev,
            totals,
            seeds,
        }
    }
}

/// Mean and sample standard deviation.
pub fn mean_stdev(totals: &[u64]) -> (f64, f64) {
    let xs: Vec<f64> = totals.iter().map(|&t| t as f64).collect();
    let mean = xs.iter().mean();
    let stdev = if xs.len() < 2 { 0.0 } else { xs.iter().std_dev() };
    (mean, stdev)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub set: String,
    pub rows: Vec<SummaryRow>,
    /// Every run, sorted by row then repetition.
    pub runs: Vec<RunRecord>,
}

impl SweepSummary {
    /// Groups raw runs into summary rows. Rows appear in order of first
    /// appearance of each `(experiment_no, num_avs, mode)`.
    pub fn from_runs(set: &str, runs: Vec<RunRecord>) -> Self {
        let mut keys: Vec<(u32, usize, Mode)> = Vec::new();
        for r in &runs {
            let k = (r.experiment_no, r.num_avs, r.mode);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
        let rows = keys
            .into_iter()
            .map(|(no, n, mode)| {
                let mut mine: Vec<&RunRecord> = runs
                    .iter()
                    .filter(|r| (r.experiment_no, r.num_avs, r.mode) == (no, n, mode))
                    .collect();
                mine.sort_by_key(|r| r.rep);
                SummaryRow::from_totals(
                    no,
                    n,
                    mode,
                    mine.iter().map(|r| r.collisions).collect(),
                    mine.iter().map(|r| r.seed).collect(),
                )
            })
            .collect();
        Self {
            set: set.to_owned(),
            rows,
            runs,
        }
    }

    pub fn row(&self, num_avs: usize) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.num_avs == num_avs)
    }

    /// `(num_avs, mean)` per row.
    pub fn means(&self) -> Vec<(usize, f64)> {
        self.rows.iter().map(|r| (r.num_avs, r.mean)).collect()
    }
}

/// Runs every row `repetitions` times on the global rayon pool.
pub fn run_sweep(spec: &ExperimentSpec) -> Result<SweepSummary, SweepError> {
    spec.validate()?;
    let jobs: Vec<(usize, u32)> = (0..spec.rows.len())
        .flat_map(|i| (0..spec.repetitions).map(move |rep| (i, rep)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(i, rep)| {
            let row = &spec.rows[i];
            let seed = seed_for(spec.base_seed, i, rep);
            let result = run_simulation(&row.config, row.config.ticks, seed).map_err(|source| SpecError::Row {
                set: spec.set.clone(),
                experiment_no: row.experiment_no,
                source,
            })?;
            Ok(RunRecord {
                set: spec.set.clone(),
                experiment_no: row.experiment_no,
                num_avs: row.config.num_avs,
                mode: Mode::of(&row.config),
                rep,
                seed,
                ticks: row.config.ticks,
                collisions: result.total_collisions,
            })
        })
        .collect::<Result<Vec<_>, SweepError>>()?;
    Ok(SweepSummary::from_runs(&spec.set, runs))
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(spec: &ExperimentSpec, threads: usize) -> Result<SweepSummary, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    pool.install(|| run_sweep(spec))
}
