//! Five-level intensity scale shared by every linguistic variable.

use std::fmt;

use crate::scalar::Scalar;

use super::membership::{MembershipFunction, Shape};
use super::FuzzyError;

/// One of the five ordered intensity levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    VeryLow,
    Low,
    Medium,
    High,
    VeryHigh,
}

impl Level {
    pub const ALL: [Level; 5] = [Level::VeryLow, Level::Low, Level::Medium, Level::High, Level::VeryHigh];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Level> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::VeryLow => "VL",
            Level::Low => "L",
            Level::Medium => "M",
            Level::High => "H",
            Level::VeryHigh => "VH",
        };
        f.write_str(s)
    }
}

/// Support intervals of the five levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityScale<T> {
    supports: [(T, T); 5],
}

impl<T: Scalar> IntensityScale<T> {
    /// Support ranges, identical for undesirability, likelihood
    /// and the global intensity variable.
    pub const RANGES: [(f64, f64); 5] = [(0.0, 0.24), (0.1, 0.5), (0.25, 0.73), (0.51, 0.9), (0.76, 1.0)];

    pub fn standard() -> Self {
        Self {
            supports: Self::RANGES.map(|(lo, hi)| (T::lit(lo), T::lit(hi))),
        }
    }

    pub fn support(&self, level: Level) -> (T, T) {
        self.supports[level.index()]
    }

    pub fn supports(&self) -> &[(T, T); 5] {
        &self.supports
    }
}

/// Peak position chosen for each level. For the two edge levels the "peak"
/// is the inner end of the flat shoulder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakLayout<T> {
    pub peaks: [T; 5],
}

impl<T: Scalar> PeakLayout<T> {
    /// Peaks fixed by running the calibration against the undesirability
    /// validation table (see `calibrate`). Regenerate with
    /// `avsoc validate-fuzzy --recalibrate`.
    pub const CALIBRATED: [f64; 5] = [0.15, 0.4, 0.72, 0.88, 0.94];

    /// Shoulders collapsed onto the domain edges and interior peaks at the
    /// middle of their supports, snapped down to the 0.01 grid.
    pub fn symmetric(scale: &IntensityScale<T>) -> Self {
        let mut peaks = [T::zero(); 5];
        for level in Level::ALL {
            let (lo, hi) = scale.support(level);
            let hundredths = |x: T| (x.as_f64() * 100.0).round() as i64;
            peaks[level.index()] = match level {
                Level::VeryLow => T::zero(),
                Level::VeryHigh => T::one(),
                _ => T::lit(((hundredths(lo) + hundredths(hi)) / 2) as f64 / 100.0),
            };
        }
        Self { peaks }
    }

    pub fn calibrated() -> Self {
        Self {
            peaks: Self::CALIBRATED.map(T::lit),
        }
    }

    pub fn peak(&self, level: Level) -> T {
        self.peaks[level.index()]
    }
}

/// Supports plus peaks: everything needed to build the five membership
/// functions of a variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipLayout<T> {
    pub scale: IntensityScale<T>,
    pub peaks: PeakLayout<T>,
}

impl<T: Scalar> MembershipLayout<T> {
    pub fn new(scale: IntensityScale<T>, peaks: PeakLayout<T>) -> Self {
        Self { scale, peaks }
    }

    pub fn calibrated() -> Self {
        Self::new(IntensityScale::standard(), PeakLayout::calibrated())
    }

    pub fn functions(&self) -> Result<[MembershipFunction<T>; 5], FuzzyError> {
        let mut out = Vec::with_capacity(5);
        for level in Level::ALL {
            let (lo, hi) = self.scale.support(level);
            let peak = self.peaks.peak(level);
            let shape = match level {
                Level::VeryLow => Shape::LeftShoulder,
                Level::VeryHigh => Shape::RightShoulder,
                _ => Shape::Triangle,
            };
            out.push(MembershipFunction::new(lo, peak, hi, shape)?);
        }
        Ok(out.try_into().expect("five levels"))
    }
}

impl<T: Scalar> Default for MembershipLayout<T> {
    fn default() -> Self {
        Self::calibrated()
    }
}

/// Level with the highest membership at `value`; exact ties go to the lower
/// level.
pub fn classify_intensity<T: Scalar>(value: T, functions: &[MembershipFunction<T>; 5]) -> Result<Level, FuzzyError> {
    if !value.in_unit() {
        return Err(FuzzyError::Domain(value.as_f64()));
    }
    let mut best = Level::VeryLow;
    let mut best_degree = functions[0].degree(value);
    for level in &Level::ALL[1..] {
        let d = functions[level.index()].degree(value);
        if d > best_degree {
            best = *level;
            best_degree = d;
        }
    }
    Ok(best)
}
