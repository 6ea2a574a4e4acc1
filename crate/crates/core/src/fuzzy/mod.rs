//! Two-input Mamdani inference over five-level linguistic variables, the
//! three fear-appraisal rule bases, and peak calibration.

mod calibrate;
mod intensity;
mod membership;
mod rulebases;
mod system;
pub mod table_io;
pub mod validation;
mod variable;

pub use calibrate::{
    calibrate_membership_peaks, calibrate_undesirability, label_constraints, Calibration, CalibrationError,
    CalibrationTarget, LabelConstraint, LabelViolation,
};
pub use intensity::{classify_intensity, IntensityScale, Level, MembershipLayout, PeakLayout};
pub use membership::{MembershipFunction, Shape};
pub use rulebases::{
    build_ig_fis, build_likelihood_fis, build_undesirability_fis, FisSet, RuleBaseSpec, IG, LIKELIHOOD, UNDESIRABILITY,
};
pub use system::{FuzzyInferenceSystem, FuzzyRule, DEFAULT_RESOLUTION};
pub use variable::LinguisticVariable;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FuzzyError {
    #[error("input {0} is outside [0, 1]")]
    Domain(f64),
    #[error("invalid membership function ({a}, {b}, {c})")]
    InvalidMembership { a: f64, b: f64, c: f64 },
    #[error("invalid linguistic variable: {0}")]
    InvalidVariable(String),
    #[error("invalid rule base: {0}")]
    InvalidRuleBase(String),
    #[error("unknown token {token} for variable {variable}")]
    UnknownToken { variable: String, token: String },
    #[error("no rule fired in {system} for inputs {inputs:?}")]
    NoRuleFired { system: String, inputs: (f64, f64) },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
