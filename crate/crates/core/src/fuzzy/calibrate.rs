//! Grid search for membership peaks.
//!
//! Supports are fixed; only the five peak positions move. The search is a
//! coordinate descent over a 0.01 grid, started from a handful of seeds,
//! minimising (label violations, failed rows, squared residual of the passing
//! rows) in that lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

use super::intensity::{classify_intensity, IntensityScale, Level, MembershipLayout, PeakLayout};
use super::system::FuzzyInferenceSystem;
use super::validation::{evaluate_all, RowOutcome, ValidationRow};
use super::FuzzyError;

/// `value` must classify as `level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelConstraint {
    pub value: f64,
    pub level: Level,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelViolation {
    pub value: f64,
    pub expected: Level,
    pub actual: Level,
}

impl fmt::Display for LabelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} classified {} (expected {})",
            self.value, self.actual, self.expected
        )
    }
}

/// Crisp-output rows to fit, together with the system they run through.
pub struct CalibrationTarget<'a, T> {
    pub build: fn(&MembershipLayout<T>) -> Result<FuzzyInferenceSystem<T>, FuzzyError>,
    pub rows: &'a [ValidationRow],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration<T> {
    pub peaks: PeakLayout<T>,
    pub outcomes: Vec<RowOutcome>,
}

impl<T> Calibration<T> {
    pub fn failed_rows(&self) -> impl Iterator<Item = &RowOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CalibrationError {
    #[error("no peak layout satisfies the label constraints: {}", fmt_violations(.0))]
    Infeasible(Vec<LabelViolation>),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

fn fmt_violations(v: &[LabelViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Label constraints implied by validation rows (inputs and outputs).
pub fn label_constraints(rows: &[ValidationRow]) -> Vec<LabelConstraint> {
    rows.iter()
        .flat_map(|r| r.labels())
        .map(|(value, level)| LabelConstraint { value, level })
        .collect()
}

/// Inclusive grid range, in hundredths, that each peak may occupy.
fn peak_range(scale: &IntensityScale<f64>, level: Level) -> (i32, i32) {
    let (lo, hi) = scale.support(level);
    let lo = (lo * 100.0).round() as i32;
    let hi = (hi * 100.0).round() as i32;
    match level {
        Level::VeryLow => (lo, hi - 1),
        Level::VeryHigh => (lo + 1, hi),
        _ => (lo + 1, hi - 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Score {
    violations: usize,
    failed_rows: usize,
    sse: f64,
}

impl Score {
    fn cmp(&self, other: &Score) -> Ordering {
        self.violations
            .cmp(&other.violations)
            .then(self.failed_rows.cmp(&other.failed_rows))
            .then(self.sse.total_cmp(&other.sse))
    }
}

struct Search<'a, T> {
    scale: IntensityScale<T>,
    constraints: &'a [LabelConstraint],
    target: Option<&'a CalibrationTarget<'a, T>>,
}

impl<T: Scalar> Search<'_, T> {
    fn layout(&self, grid: &[i32; 5]) -> MembershipLayout<T> {
        MembershipLayout::new(
            self.scale,
            PeakLayout {
                peaks: grid.map(|k| T::lit(k as f64 / 100.0)),
            },
        )
    }

    fn violations(&self, layout: &MembershipLayout<T>) -> Result<Vec<LabelViolation>, FuzzyError> {
        let functions = layout.functions()?;
        let mut out = Vec::new();
        for c in self.constraints {
            let actual = classify_intensity(T::lit(c.value), &functions)?;
            if actual != c.level {
                out.push(LabelViolation {
                    value: c.value,
                    expected: c.level,
                    actual,
                });
            }
        }
        Ok(out)
    }

    fn outcomes(&self, layout: &MembershipLayout<T>) -> Result<Vec<RowOutcome>, FuzzyError> {
        match self.target {
            Some(t) => evaluate_all(&(t.build)(layout)?, t.rows),
            None => Ok(Vec::new()),
        }
    }

    fn score(&self, grid: &[i32; 5]) -> Result<Score, FuzzyError> {
        let layout = self.layout(grid);
        let violations = self.violations(&layout)?.len();
        let outcomes = self.outcomes(&layout)?;
        Ok(Score {
            violations,
            failed_rows: outcomes.iter().filter(|o| !o.passed()).count(),
            // Rows that cannot pass would otherwise pull the fit away from
            // the ones that can.
            sse: outcomes
                .iter()
                .filter(|o| o.passed())
                .map(|o| o.residual().powi(2))
                .sum(),
        })
    }

    fn descend(&self, start: [i32; 5], ranges: &[(i32, i32); 5]) -> Result<([i32; 5], Score), FuzzyError> {
        let mut best = start;
        let mut best_score = self.score(&best)?;
        for _ in 0..50 {
            let mut improved = false;
            for level in 0..5 {
                let (lo, hi) = ranges[level];
                for k in lo..=hi {
                    if k == best[level] {
                        continue;
                    }
                    let mut cand = best;
                    cand[level] = k;
                    let s = self.score(&cand)?;
                    if s.cmp(&best_score) == Ordering::Less {
                        best = cand;
                        best_score = s;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        Ok((best, best_score))
    }
}

/// Chooses peaks so that every constraint value classifies to its level and
/// as many target rows as possible land within tolerance.
///
/// Rows that no layout can satisfy are left in `Calibration::outcomes` as
/// failures; only unsatisfiable label constraints are an error.
pub fn calibrate_membership_peaks<T: Scalar>(
    scale: &IntensityScale<T>,
    constraints: &[LabelConstraint],
    target: Option<&CalibrationTarget<'_, T>>,
) -> Result<Calibration<T>, CalibrationError> {
    let scale_f64 = IntensityScale::<f64>::standard();
    let ranges = Level::ALL.map(|l| peak_range(&scale_f64, l));
    let search = Search {
        scale: *scale,
        constraints,
        target,
    };

    let symmetric = PeakLayout::symmetric(scale)
        .peaks
        .map(|p| (p.as_f64() * 100.0).round() as i32);
    // Seeds: the symmetric layout, then layouts pushed towards each end of
    // the allowed ranges.
    let mut seeds = vec![symmetric];
    for frac in [0.25, 0.75] {
        seeds.push(ranges.map(|(lo, hi)| lo + ((hi - lo) as f64 * frac).round() as i32));
    }

    let mut best: Option<([i32; 5], Score)> = None;
    for seed in seeds {
        let found = search.descend(seed, &ranges)?;
        if best.as_ref().is_none_or(|b| found.1.cmp(&b.1) == Ordering::Less) {
            best = Some(found);
        }
        if best
            .as_ref()
            .is_some_and(|b| b.1.violations == 0 && b.1.failed_rows == 0)
        {
            break;
        }
    }
    let (grid, _) = best.expect("at least one seed");
    let layout = search.layout(&grid);
    let violations = search.violations(&layout)?;
    if !violations.is_empty() {
        return Err(CalibrationError::Infeasible(violations));
    }
    Ok(Calibration {
        peaks: layout.peaks,
        outcomes: search.outcomes(&layout)?,
    })
}

/// Calibration against the undesirability validation table.
pub fn calibrate_undesirability<T: Scalar>(rows: &[ValidationRow]) -> Result<Calibration<T>, CalibrationError> {
    let target = CalibrationTarget {
        build: |layout| super::rulebases::UNDESIRABILITY.build(layout),
        rows,
    };
    calibrate_membership_peaks(&IntensityScale::standard(), &label_constraints(rows), Some(&target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::validation::UNDESIRABILITY_ROWS;

    #[test]
    fn endpoint_constraints_keep_symmetric_layout() {
        let scale = IntensityScale::<f64>::standard();
        let constraints = [
            LabelConstraint {
                value: 0.0,
                level: Level::VeryLow,
            },
            LabelConstraint {
                value: 1.0,
                level: Level::VeryHigh,
            },
        ];
        let cal = calibrate_membership_peaks(&scale, &constraints, None).unwrap();
        assert_eq!(cal.peaks, PeakLayout::symmetric(&scale));
        assert!(cal.outcomes.is_empty());
    }

    #[test]
    fn contradictory_labels_are_infeasible() {
        let scale = IntensityScale::<f64>::standard();
        let constraints = [LabelConstraint {
            value: 0.05,
            level: Level::VeryHigh,
        }];
        let err = calibrate_membership_peaks(&scale, &constraints, None).unwrap_err();
        match err {
            CalibrationError::Infeasible(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].actual, Level::VeryLow);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn frozen_peaks_match_a_fresh_calibration() {
        let cal = calibrate_undesirability::<f64>(&UNDESIRABILITY_ROWS).unwrap();
        assert_eq!(cal.peaks, PeakLayout::calibrated());
    }

    #[test]
    fn table_labels_hold_under_frozen_peaks() {
        let f = MembershipLayout::<f64>::calibrated().functions().unwrap();
        for c in label_constraints(&UNDESIRABILITY_ROWS) {
            assert_eq!(classify_intensity(c.value, &f).unwrap(), c.level, "{}", c.value);
        }
    }

    #[test]
    fn specific_labels() {
        let f = MembershipLayout::<f64>::calibrated().functions().unwrap();
        assert_eq!(classify_intensity(0.27, &f).unwrap(), Level::Low);
        assert_eq!(classify_intensity(0.5, &f).unwrap(), Level::Medium);
    }
}
