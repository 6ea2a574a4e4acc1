use crate::scalar::Scalar;

use super::intensity::{classify_intensity, Level, MembershipLayout};
use super::membership::MembershipFunction;
use super::FuzzyError;

/// A five-token linguistic variable over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable<T> {
    name: String,
    tokens: [String; 5],
    functions: [MembershipFunction<T>; 5],
}

impl<T: Scalar> LinguisticVariable<T> {
    pub fn new(
        name: impl Into<String>,
        tokens: [&str; 5],
        functions: [MembershipFunction<T>; 5],
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || tokens[..i].contains(t) {
                return Err(FuzzyError::InvalidVariable(format!(
                    "{name}: token names must be unique and nonempty"
                )));
            }
        }
        let var = Self {
            name,
            tokens: tokens.map(str::to_owned),
            functions,
        };
        var.check_coverage()?;
        Ok(var)
    }

    pub fn with_layout(
        name: impl Into<String>,
        tokens: [&str; 5],
        layout: &MembershipLayout<T>,
    ) -> Result<Self, FuzzyError> {
        Self::new(name, tokens, layout.functions()?)
    }

    fn check_coverage(&self) -> Result<(), FuzzyError> {
        // Supports are piecewise linear, so a fine grid plus the endpoints
        // catches any gap wider than the grid step.
        const STEPS: usize = 1000;
        for i in 0..=STEPS {
            let x = T::lit(i as f64 / STEPS as f64);
            if self.functions.iter().all(|f| f.degree(x) <= T::zero()) {
                return Err(FuzzyError::InvalidVariable(format!(
                    "{}: no token covers {}",
                    self.name, x
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tokens(&self) -> &[String; 5] {
        &self.tokens
    }

    pub fn token(&self, level: Level) -> &str {
        &self.tokens[level.index()]
    }

    pub fn level_of(&self, token: &str) -> Option<Level> {
        self.tokens.iter().position(|t| t == token).and_then(Level::from_index)
    }

    pub fn function(&self, level: Level) -> &MembershipFunction<T> {
        &self.functions[level.index()]
    }

    pub fn functions(&self) -> &[MembershipFunction<T>; 5] {
        &self.functions
    }

    /// Degrees of all five tokens at `x`.
    pub fn fuzzify(&self, x: T) -> Result<[T; 5], FuzzyError> {
        if !x.in_unit() {
            return Err(FuzzyError::Domain(x.as_f64()));
        }
        Ok(self.functions.map(|f| f.degree(x)))
    }

    pub fn classify(&self, x: T) -> Result<Level, FuzzyError> {
        classify_intensity(x, &self.functions)
    }
}
