use std::fmt::Write as _;

use thiserror::Error;

use super::sweep::SweepSummary;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("summaries cover different AV counts: {a:?} vs {b:?}")]
    MismatchedRows { a: Vec<usize>, b: Vec<usize> },
    #[error("missing configurations (safety, sonar): {0:?}")]
    MissingCells(Vec<(u32, u32)>),
    #[error("configuration (safety {0}, sonar {1}) given more than once")]
    DuplicateCell(u32, u32),
    #[error("configurations cover different AV counts")]
    RaggedMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeComparisonRow {
    pub num_avs: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    /// `mean_a - mean_b`
    pub delta: f64,
    /// `mean_b / mean_a`; infinite or NaN when `mean_a` is 0.
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub set_a: String,
    pub set_b: String,
    pub rows: Vec<ModeComparisonRow>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Row-by-row check that `b` has strictly fewer collisions than `a`.
pub fn compare_modes(a: &SweepSummary, b: &SweepSummary) -> Result<ComparisonReport, ShapeError> {
    let na: Vec<usize> = a.rows.iter().map(|r| r.num_avs).collect();
    let nb: Vec<usize> = b.rows.iter().map(|r| r.num_avs).collect();
    if na != nb {
        return Err(ShapeError::MismatchedRows { a: na, b: nb });
    }
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(ra, rb)| ModeComparisonRow {
            num_avs: ra.num_avs,
            mean_a: ra.mean,
            mean_b: rb.mean,
            delta: ra.mean - rb.mean,
            ratio: rb.mean / ra.mean,
            pass: rb.mean < ra.mean,
        })
        .collect();
    Ok(ComparisonReport {
        set_a: a.set.clone(),
        set_b: b.set.clone(),
        rows,
    })
}

/// Mean collisions per AV count for one (safety distance, sonar range)
/// configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigSeries {
    pub safety_distance: u32,
    pub sonar_range: u32,
    pub source: String,
    pub means: Vec<(usize, f64)>,
}

impl ConfigSeries {
    pub fn from_summary(safety_distance: u32, sonar_range: u32, s: &SweepSummary) -> Self {
        Self {
            safety_distance,
            sonar_range,
            source: s.set.clone(),
            means: s.means(),
        }
    }
}

/// Matrix rows in display order.
pub const MATRIX_CELLS: [(u32, u32); 6] = [(1, 1), (2, 2), (2, 5), (3, 2), (3, 3), (3, 5)];

/// Which norms-mode sweep feeds each matrix cell.
pub const MATRIX_SOURCES: [((u32, u32), &str); 6] = [
    ((1, 1), "B5"),
    ((2, 2), "B3"),
    ((2, 5), "B2-s5"),
    ((3, 2), "B1-s2"),
    ((3, 3), "B4"),
    ((3, 5), "B1-s5"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SonarSafetyMatrix {
    pub av_counts: Vec<usize>,
    /// In [`MATRIX_CELLS`] order.
    pub rows: Vec<ConfigSeries>,
}

impl SonarSafetyMatrix {
    pub fn cell(&self, safety: u32, sonar: u32) -> Option<&ConfigSeries> {
        self.rows
            .iter()
            .find(|r| (r.safety_distance, r.sonar_range) == (safety, sonar))
    }

    /// Per AV count: does (3, 2) exceed both (3, 3) and (2, 2)?
    pub fn short_sonar_flags(&self) -> Vec<(usize, bool)> {
        let (hi, a, b) = (self.cell(3, 2), self.cell(3, 3), self.cell(2, 2));
        self.av_counts
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let ok = match (hi, a, b) {
                    (Some(hi), Some(a), Some(b)) => hi.means[i].1 > a.means[i].1 && hi.means[i].1 > b.means[i].1,
                    _ => false,
                };
                (n, ok)
            })
            .collect()
    }

    pub fn short_sonar_worse(&self) -> bool {
        self.short_sonar_flags().iter().all(|&(_, ok)| ok)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("safety_distance,sonar_range,source");
        for n in &self.av_counts {
            let _ = write!(out, ",avs_{n}");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{},{}", r.safety_distance, r.sonar_range, r.source);
            for (_, m) in &r.means {
                let _ = write!(out, ",{m}");
            }
            out.push('\n');
        }
        out
    }
}

/// Arranges per-configuration results into the six-cell matrix.
pub fn sonar_safety_matrix(series: &[ConfigSeries]) -> Result<SonarSafetyMatrix, ShapeError> {
    for (i, s) in series.iter().enumerate() {
        let key = (s.safety_distance, s.sonar_range);
        if series[..i].iter().any(|o| (o.safety_distance, o.sonar_range) == key) {
            return Err(ShapeError::DuplicateCell(key.0, key.1));
        }
    }
    let find = |c: (u32, u32)| series.iter().find(|s| (s.safety_distance, s.sonar_range) == c);
    let missing: Vec<(u32, u32)> = MATRIX_CELLS.iter().copied().filter(|&c| find(c).is_none()).collect();
    if !missing.is_empty() {
        return Err(ShapeError::MissingCells(missing));
    }
    let rows: Vec<ConfigSeries> = MATRIX_CELLS.iter().map(|&c| find(c).unwrap().clone()).collect();
    let av_counts: Vec<usize> = rows[0].means.iter().map(|&(n, _)| n).collect();
    if rows
        .iter()
        .any(|r| r.means.iter().map(|&(n, _)| n).ne(av_counts.iter().copied()))
    {
        return Err(ShapeError::RaggedMatrix);
    }
    Ok(SonarSafetyMatrix { av_counts, rows })
}

/// Plot data: one line per AV count, mean and stdev columns for each
/// summary (labelled by its mode).
pub fn plot_data(series: &[&SweepSummary]) -> Result<String, ShapeError> {
    let Some(first) = series.first() else {
        return Ok(String::from("num_avs\n"));
    };
    let counts: Vec<usize> = first.rows.iter().map(|r| r.num_avs).collect();
    for s in series {
        let n: Vec<usize> = s.rows.iter().map(|r| r.num_avs).collect();
        if n != counts {
            return Err(ShapeError::MismatchedRows { a: counts, b: n });
        }
    }
    let mut out = String::from("num_avs");
    for s in series {
        let mode = s.rows.first().map_or("empty", |r| r.mode.name());
        let _ = write!(out, ",{mode}_mean,{mode}_stdev");
    }
    out.push('\n');
    for (i, n) in counts.iter().enumerate() {
        let _ = write!(out, "{n}");
        for s in series {
            let _ = write!(out, ",{},{}", s.rows[i].mean, s.rows[i].stdev);
        }
        out.push('\n');
    }
    Ok(out)
}
