//! Fuzzy-appraised fear driving social norm compliance in a simulated
//! society of autonomous vehicles.
//!
//! [`fuzzy`] and [`emotion`] are generic over the scalar type; the aliases
//! below fix it. [`society`] and [`experiments`] run in `f64`.

pub mod emotion;
pub mod experiments;
pub mod fuzzy;
mod scalar;
pub mod society;

pub use scalar::Scalar;

pub type Fis = fuzzy::FuzzyInferenceSystem<f64>;
pub type Fis32 = fuzzy::FuzzyInferenceSystem<f32>;
pub type FisSet = fuzzy::FisSet<f64>;
pub type FisSet32 = fuzzy::FisSet<f32>;
pub type Membership = fuzzy::MembershipFunction<f64>;
pub type Membership32 = fuzzy::MembershipFunction<f32>;
pub type Variable = fuzzy::LinguisticVariable<f64>;
pub type Variable32 = fuzzy::LinguisticVariable<f32>;
pub type FearState = emotion::FearState<f64>;
pub type FearState32 = emotion::FearState<f32>;
pub type FearConfig = emotion::FearConfig<f64>;
pub type FearConfig32 = emotion::FearConfig<f32>;
