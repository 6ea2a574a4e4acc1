//! Hand-traced undesirability checks: 14 input pairs with the expected crisp
//! output and the token each value is labelled with.

use crate::scalar::Scalar;

use super::intensity::Level;
use super::system::FuzzyInferenceSystem;
use super::FuzzyError;

/// Allowed absolute error on a crisp output.
pub const VALUE_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationRow {
    pub test_no: u32,
    pub imp_goal: (f64, Level),
    pub ach_goal: (f64, Level),
    pub undesirability: (f64, Level),
}

const fn row(
    test_no: u32,
    imp_goal: (f64, Level),
    ach_goal: (f64, Level),
    undesirability: (f64, Level),
) -> ValidationRow {
    ValidationRow {
        test_no,
        imp_goal,
        ach_goal,
        undesirability,
    }
}

use Level::{High as H, Low as L, Medium as M, VeryHigh as VH, VeryLow as VL};

pub const UNDESIRABILITY_ROWS: [ValidationRow; 14] = [
    row(1, (0.1, VL), (0.5, M), (0.25, L)),
    row(2, (0.2, VL), (1.0, VH), (0.08, VL)),
    row(3, (0.27, L), (0.0, VL), (0.52, M)),
    row(4, (0.30, L), (0.5, M), (0.31, L)),
    row(5, (0.4, L), (1.0, VH), (0.09, VL)),
    row(6, (0.5, M), (0.0, VL), (0.74, H)),
    row(7, (0.56, M), (0.5, M), (0.567, M)),
    row(8, (0.6, M), (1.0, VH), (0.09, VL)),
    row(9, (0.8, H), (0.0, VL), (0.91, VH)),
    row(10, (0.85, H), (0.5, M), (0.746, H)),
    row(11, (0.79, H), (1.0, VH), (0.085, VL)),
    row(12, (0.96, VH), (0.0, VL), (0.917, VH)),
    row(13, (0.98, VH), (0.5, M), (0.747, H)),
    row(14, (1.0, VH), (1.0, VH), (0.08, VL)),
];

impl ValidationRow {
    /// Every `(value, level)` label in the row, inputs and output alike.
    pub fn labels(&self) -> [(f64, Level); 3] {
        [self.imp_goal, self.ach_goal, self.undesirability]
    }
}

/// Result of running one row through a system.
#[derive(Debug, Clone, PartialEq)]
pub struct RowOutcome {
    pub row: ValidationRow,
    pub actual: f64,
    pub actual_level: Level,
}

impl RowOutcome {
    pub fn residual(&self) -> f64 {
        self.actual - self.row.undesirability.0
    }

    pub fn value_ok(&self) -> bool {
        self.residual().abs() <= VALUE_TOLERANCE
    }

    pub fn level_ok(&self) -> bool {
        self.actual_level == self.row.undesirability.1
    }

    pub fn passed(&self) -> bool {
        self.value_ok() && self.level_ok()
    }
}

pub fn evaluate_row<T: Scalar>(fis: &FuzzyInferenceSystem<T>, row: &ValidationRow) -> Result<RowOutcome, FuzzyError> {
    let out = fis.infer(T::lit(row.imp_goal.0), T::lit(row.ach_goal.0))?;
    Ok(RowOutcome {
        row: *row,
        actual: out.as_f64(),
        actual_level: fis.output().classify(out)?,
    })
}

pub fn evaluate_all<T: Scalar>(
    fis: &FuzzyInferenceSystem<T>,
    rows: &[ValidationRow],
) -> Result<Vec<RowOutcome>, FuzzyError> {
    rows.iter().map(|r| evaluate_row(fis, r)).collect()
}
