//! Prospect-based fear: three appraisal variables are combined into a fear
//! potential, gated by a threshold into an intensity, and the intensity is
//! the agent's willingness to obey a norm.

use crate::fuzzy::{FisSet, FuzzyError};
use crate::scalar::Scalar;

/// How undesirability, likelihood and Ig are combined into a potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Combiner {
    #[default]
    ArithmeticMean,
    Min,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FearConfig<T> {
    pub threshold: T,
    pub combiner: Combiner,
    /// Weights for (undesirability, likelihood, ig), used by the mean.
    pub weights: [T; 3],
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FearConfigError {
    #[error("fear threshold {0} is outside [0, 1]")]
    Threshold(f64),
    #[error("combiner weights must be nonnegative and sum to 1, got {0:?}")]
    Weights([f64; 3]),
}

impl<T: Scalar> FearConfig<T> {
    pub fn new(threshold: T, combiner: Combiner, weights: [T; 3]) -> Result<Self, FearConfigError> {
        let cfg = Self {
            threshold,
            combiner,
            weights,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), FearConfigError> {
        if !self.threshold.in_unit() {
            return Err(FearConfigError::Threshold(self.threshold.as_f64()));
        }
        let w = self.weights.map(Scalar::as_f64);
        let sum: f64 = w.iter().sum();
        // 1e-9, or a few ulps for types coarser than f64.
        let tol = 1e-9f64.max(8.0 * T::epsilon().as_f64());
        if w.iter().any(|x| x.is_nan() || *x < 0.0) || (sum - 1.0).abs() > tol {
            return Err(FearConfigError::Weights(w));
        }
        Ok(())
    }

    pub fn with_threshold(mut self, threshold: T) -> Self {
        self.threshold = threshold;
        self
    }
}

impl<T: Scalar> Default for FearConfig<T> {
    fn default() -> Self {
        let third = T::one() / T::lit(3.0);
        Self {
            threshold: T::lit(0.1),
            combiner: Combiner::ArithmeticMean,
            weights: [third; 3],
        }
    }
}

/// One appraisal, kept whole for the trace log.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FearState<T> {
    pub undesirability: T,
    pub likelihood: T,
    pub ig: T,
    pub potential: T,
    pub threshold: T,
    pub intensity: T,
    pub willingness: T,
}

pub fn fear_potential<T: Scalar>(undesirability: T, likelihood: T, ig: T, cfg: &FearConfig<T>) -> T {
    let v = [undesirability, likelihood, ig];
    let p = match cfg.combiner {
        Combiner::ArithmeticMean => {
            // Equal weights are summed then divided so that equal inputs come
            // back unchanged.
            if cfg.weights[0] == cfg.weights[1] && cfg.weights[1] == cfg.weights[2] {
                (v[0] + v[1] + v[2]) / T::lit(3.0)
            } else {
                v.iter().zip(cfg.weights.iter()).map(|(x, w)| *x * *w).sum()
            }
        }
        Combiner::Min => v[0].min(v[1]).min(v[2]),
        Combiner::Product => v[0] * v[1] * v[2],
    };
    p.clamp_unit()
}

/// `potential - threshold` when the potential strictly exceeds the
/// threshold, otherwise exactly zero.
pub fn fear_intensity<T: Scalar>(potential: T, threshold: T) -> T {
    if potential > threshold {
        // Nudge by the rounding residual so that intensity + threshold == potential.
        let mut i = potential - threshold;
        for _ in 0..4 {
            let r = potential - (i + threshold);
            if r == T::zero() {
                break;
            }
            i = i + r;
        }
        i
    } else {
        T::zero()
    }
}

/// Willingness to obey a norm.
#[inline]
pub fn willingness<T: Scalar>(intensity: T) -> T {
    intensity
}

/// Chains potential, intensity and willingness from the three appraisal
/// values.
pub fn fear_from_appraisal<T: Scalar>(undesirability: T, likelihood: T, ig: T, cfg: &FearConfig<T>) -> FearState<T> {
    let potential = fear_potential(undesirability, likelihood, ig, cfg);
    let intensity = fear_intensity(potential, cfg.threshold);
    FearState {
        undesirability,
        likelihood,
        ig,
        potential,
        threshold: cfg.threshold,
        intensity,
        willingness: willingness(intensity),
    }
}

/// Raw appraisal inputs, each already normalised to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AppraisalInputs<T> {
    pub imp_goal: T,
    pub ach_goal: T,
    pub distance: T,
    pub speed: T,
    pub sense_of_reality: T,
    pub proximity: T,
}

/// Runs the three fuzzy legs and the fear chain.
pub fn appraise<T: Scalar>(
    inputs: &AppraisalInputs<T>,
    fis: &FisSet<T>,
    cfg: &FearConfig<T>,
) -> Result<FearState<T>, FuzzyError> {
    let undesirability = fis.undesirability.infer(inputs.imp_goal, inputs.ach_goal)?;
    let likelihood = fis.likelihood.infer(inputs.distance, inputs.speed)?;
    let ig = fis.ig.infer(inputs.sense_of_reality, inputs.proximity)?;
    Ok(fear_from_appraisal(undesirability, likelihood, ig, cfg))
}
