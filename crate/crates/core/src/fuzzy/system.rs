use crate::scalar::Scalar;

use super::intensity::Level;
use super::variable::LinguisticVariable;
use super::FuzzyError;

/// `IF in1 IS a AND in2 IS b THEN out IS c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FuzzyRule {
    pub antecedent: (Level, Level),
    pub consequent: Level,
}

impl FuzzyRule {
    pub fn new(first: Level, second: Level, consequent: Level) -> Self {
        Self {
            antecedent: (first, second),
            consequent,
        }
    }
}

/// Default number of samples used by the centroid defuzzifier.
pub const DEFAULT_RESOLUTION: usize = 1001;

/// Two-input, single-output Mamdani system: min for AND and implication,
/// max aggregation, centroid defuzzification.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyInferenceSystem<T> {
    name: String,
    inputs: [LinguisticVariable<T>; 2],
    output: LinguisticVariable<T>,
    rules: Vec<FuzzyRule>,
    /// Rule consequent indexed by `[first.index()][second.index()]`.
    table: [[Level; 5]; 5],
    resolution: usize,
}

impl<T: Scalar> FuzzyInferenceSystem<T> {
    /// Rules must cover the 5x5 antecedent grid exactly once.
    pub fn new(
        name: impl Into<String>,
        inputs: [LinguisticVariable<T>; 2],
        output: LinguisticVariable<T>,
        rules: Vec<FuzzyRule>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        if rules.len() != 25 {
            return Err(FuzzyError::InvalidRuleBase(format!(
                "{name}: expected 25 rules, got {}",
                rules.len()
            )));
        }
        let mut table = [[None; 5]; 5];
        for r in &rules {
            let slot = &mut table[r.antecedent.0.index()][r.antecedent.1.index()];
            if slot.is_some() {
                return Err(FuzzyError::InvalidRuleBase(format!(
                    "{name}: duplicate antecedent ({}, {})",
                    inputs[0].token(r.antecedent.0),
                    inputs[1].token(r.antecedent.1)
                )));
            }
            *slot = Some(r.consequent);
        }
        // 25 distinct antecedents on a 5x5 grid fill it.
        let table = table.map(|row| row.map(|c| c.expect("full grid")));
        Ok(Self {
            name,
            inputs,
            output,
            rules,
            table,
            resolution: DEFAULT_RESOLUTION,
        })
    }

    pub fn with_resolution(mut self, samples: usize) -> Self {
        self.resolution = samples.max(3);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &[LinguisticVariable<T>; 2] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable<T> {
        &self.output
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn lookup(&self, first: Level, second: Level) -> Level {
        self.table[first.index()][second.index()]
    }

    /// Lookup by token names, e.g. `("VHD", "MS")`.
    pub fn lookup_tokens(&self, first: &str, second: &str) -> Option<&str> {
        let a = self.inputs[0].level_of(first)?;
        let b = self.inputs[1].level_of(second)?;
        Some(self.output.token(self.lookup(a, b)))
    }

    /// Activation of each output token after min-firing every rule and
    /// max-aggregating per consequent.
    pub fn activations(&self, in1: T, in2: T) -> Result<[T; 5], FuzzyError> {
        let d1 = self.inputs[0].fuzzify(in1)?;
        let d2 = self.inputs[1].fuzzify(in2)?;
        let mut act = [T::zero(); 5];
        for r in &self.rules {
            let w = d1[r.antecedent.0.index()].min(d2[r.antecedent.1.index()]);
            let slot = &mut act[r.consequent.index()];
            *slot = slot.max(w);
        }
        Ok(act)
    }

    /// Crisp output for two inputs in `[0, 1]`.
    pub fn infer(&self, in1: T, in2: T) -> Result<T, FuzzyError> {
        let act = self.activations(in1, in2)?;
        if act.iter().all(|a| *a <= T::zero()) {
            return Err(FuzzyError::NoRuleFired {
                system: self.name.clone(),
                inputs: (in1.as_f64(), in2.as_f64()),
            });
        }
        Ok(self.centroid(&act))
    }

    /// Trapezoid-rule centroid of the union of clipped output sets sampled
    /// on a uniform grid over `[0, 1]`.
    fn centroid(&self, act: &[T; 5]) -> T {
        let n = self.resolution;
        let step = T::one() / T::lit((n - 1) as f64);
        let half = T::lit(0.5);
        let mut area = T::zero();
        let mut moment = T::zero();
        for i in 0..n {
            let x = T::lit(i as f64) * step;
            let mut mu = T::zero();
            for level in Level::ALL {
                let a = act[level.index()];
                if a > T::zero() {
                    mu = mu.max(a.min(self.output.function(level).degree(x)));
                }
            }
            let w = if i == 0 || i == n - 1 { half } else { T::one() };
            area = area + w * mu;
            moment = moment + w * mu * x;
        }
        (moment / area).clamp_unit()
    }
}
