//! Seeded parameter sweeps over the society simulator: built-in experiment
//! sets, repetition with derived seeds, statistics and mode comparison.

mod compare;
pub mod io;
mod run;
mod spec;
mod sweep;

pub use compare::{
    compare_modes, plot_data, sonar_safety_matrix, ComparisonReport, ConfigSeries, ModeComparisonRow, ShapeError,
    SonarSafetyMatrix, MATRIX_CELLS, MATRIX_SOURCES,
};
pub use run::{run_simulation, run_traced, RunResult, TracedRun};
pub use spec::{
    builtin_set, builtin_spec, builtin_specs, ExperimentRow, ExperimentSpec, ExperimentType, SetId, SpecError,
    AV_COUNTS, DEFAULT_BASE_SEED, DEFAULT_REPETITIONS, SEED_STRIDE,
};
pub use sweep::{
    mean_stdev, run_sweep, run_sweep_with_threads, seed_for, RunRecord, SummaryRow, SweepError, SweepSummary,
};
