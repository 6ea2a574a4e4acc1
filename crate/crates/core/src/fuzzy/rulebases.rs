//! The three fear-appraisal rule bases, 25 rows each in table order.

use crate::scalar::Scalar;

use super::intensity::MembershipLayout;
use super::system::{FuzzyInferenceSystem, FuzzyRule};
use super::variable::LinguisticVariable;
use super::FuzzyError;

/// Token names and rule rows for one two-input system.
#[derive(Debug, Clone, Copy)]
pub struct RuleBaseSpec {
    pub name: &'static str,
    pub inputs: [(&'static str, [&'static str; 5]); 2],
    pub output: (&'static str, [&'static str; 5]),
    pub rows: &'static [(&'static str, &'static str, &'static str)],
}

pub const LIKELIHOOD: RuleBaseSpec = RuleBaseSpec {
    name: "likelihood",
    inputs: [
        ("Distance", ["VLD", "LD", "MD", "HD", "VHD"]),
        ("Speed", ["VLS", "LS", "MS", "HS", "VHS"]),
    ],
    output: ("Likelihood", ["VLLH", "LLH", "MLH", "HLH", "VHLH"]),
    rows: &[
        ("VHD", "VHS", "MLH"),
        ("VHD", "HS", "LLH"),
        ("VHD", "MS", "VLLH"),
        ("VHD", "LS", "VLLH"),
        ("VHD", "VLS", "VLLH"),
        ("HD", "VHS", "HLH"),
        ("HD", "HS", "MLH"),
        ("HD", "MS", "VLLH"),
        ("HD", "LS", "VLLH"),
        ("HD", "VLS", "VLLH"),
        ("MD", "VHS", "VHLH"),
        ("MD", "HS", "VHLH"),
        ("MD", "MS", "MLH"),
        ("MD", "LS", "LLH"),
        ("MD", "VLS", "VLLH"),
        ("LD", "VHS", "VHLH"),
        ("LD", "HS", "VHLH"),
        ("LD", "MS", "HLH"),
        ("LD", "LS", "MLH"),
        ("LD", "VLS", "VLLH"),
        ("VLD", "VHS", "VHLH"),
        ("VLD", "HS", "VHLH"),
        ("VLD", "MS", "VHLH"),
        ("VLD", "LS", "HLH"),
        ("VLD", "VLS", "MLH"),
    ],
};

pub const UNDESIRABILITY: RuleBaseSpec = RuleBaseSpec {
    name: "undesirability",
    inputs: [
        ("ImpGoal", ["VLImpG", "LImpG", "MImpG", "HImpG", "VHImpG"]),
        ("AchGoal", ["NAG", "LAG", "MAG", "HAG", "VHFAG"]),
    ],
    output: ("Undesirability", ["VLUD", "LUD", "MUD", "HUD", "VHUD"]),
    rows: &[
        ("VLImpG", "NAG", "MUD"),
        ("VLImpG", "LAG", "LUD"),
        ("VLImpG", "MAG", "LUD"),
        ("VLImpG", "HAG", "VLUD"),
        ("VLImpG", "VHFAG", "VLUD"),
        ("LImpG", "NAG", "MUD"),
        ("LImpG", "LAG", "MUD"),
        ("LImpG", "MAG", "LUD"),
        ("LImpG", "HAG", "VLUD"),
        ("LImpG", "VHFAG", "VLUD"),
        ("MImpG", "NAG", "HUD"),
        ("MImpG", "LAG", "MUD"),
        ("MImpG", "MAG", "MUD"),
        ("MImpG", "HAG", "LUD"),
        ("MImpG", "VHFAG", "LUD"),
        ("HImpG", "NAG", "VHUD"),
        ("HImpG", "LAG", "HUD"),
        ("HImpG", "MAG", "HUD"),
        ("HImpG", "HAG", "MUD"),
        ("HImpG", "VHFAG", "VHUD"),
        ("VHImpG", "NAG", "VHUD"),
        ("VHImpG", "LAG", "HUD"),
        ("VHImpG", "MAG", "HUD"),
        ("VHImpG", "HAG", "HUD"),
        ("VHImpG", "VHFAG", "MUD"),
    ],
};

pub const IG: RuleBaseSpec = RuleBaseSpec {
    name: "ig",
    inputs: [
        ("SenseOfReality", ["VLSOR", "LSOR", "MSOR", "HSOR", "VHSOR"]),
        // Ordered by spatial distance: an imminent event sits at 0.
        ("Proximity", ["AboutTo", "GoingTo", "MChance", "LChance", "NChance"]),
    ],
    output: ("Ig", ["VLIG", "LIG", "MIG", "HIG", "VHIG"]),
    rows: &[
        ("VLSOR", "AboutTo", "MIG"),
        ("VLSOR", "GoingTo", "MIG"),
        ("VLSOR", "MChance", "LIG"),
        ("VLSOR", "LChance", "VLIG"),
        ("VLSOR", "NChance", "VLIG"),
        ("LSOR", "AboutTo", "HIG"),
        ("LSOR", "GoingTo", "MIG"),
        ("LSOR", "MChance", "MIG"),
        ("LSOR", "LChance", "LIG"),
        ("LSOR", "NChance", "VLIG"),
        ("MSOR", "AboutTo", "HIG"),
        ("MSOR", "GoingTo", "HIG"),
        ("MSOR", "MChance", "MIG"),
        ("MSOR", "LChance", "LIG"),
        ("MSOR", "NChance", "VLIG"),
        ("HSOR", "AboutTo", "VHIG"),
        ("HSOR", "GoingTo", "HIG"),
        ("HSOR", "MChance", "MIG"),
        ("HSOR", "LChance", "LIG"),
        ("HSOR", "NChance", "VLIG"),
        ("VHSOR", "AboutTo", "VHIG"),
        ("VHSOR", "GoingTo", "VHIG"),
        ("VHSOR", "MChance", "HIG"),
        ("VHSOR", "LChance", "HIG"),
        ("VHSOR", "NChance", "MIG"),
    ],
};

impl RuleBaseSpec {
    pub fn build<T: Scalar>(&self, layout: &MembershipLayout<T>) -> Result<FuzzyInferenceSystem<T>, FuzzyError> {
        let [(n1, t1), (n2, t2)] = self.inputs;
        let in1 = LinguisticVariable::with_layout(n1, t1, layout)?;
        let in2 = LinguisticVariable::with_layout(n2, t2, layout)?;
        let out = LinguisticVariable::with_layout(self.output.0, self.output.1, layout)?;
        let mut rules = Vec::with_capacity(self.rows.len());
        for &(a, b, c) in self.rows {
            let level = |var: &LinguisticVariable<T>, tok: &str| {
                var.level_of(tok).ok_or_else(|| FuzzyError::UnknownToken {
                    variable: var.name().to_owned(),
                    token: tok.to_owned(),
                })
            };
            rules.push(FuzzyRule::new(level(&in1, a)?, level(&in2, b)?, level(&out, c)?));
        }
        FuzzyInferenceSystem::new(self.name, [in1, in2], out, rules)
    }
}

pub fn build_likelihood_fis<T: Scalar>() -> FuzzyInferenceSystem<T> {
    LIKELIHOOD
        .build(&MembershipLayout::calibrated())
        .expect("likelihood rule base is well formed")
}

pub fn build_undesirability_fis<T: Scalar>() -> FuzzyInferenceSystem<T> {
    UNDESIRABILITY
        .build(&MembershipLayout::calibrated())
        .expect("undesirability rule base is well formed")
}

pub fn build_ig_fis<T: Scalar>() -> FuzzyInferenceSystem<T> {
    IG.build(&MembershipLayout::calibrated())
        .expect("ig rule base is well formed")
}

/// The three systems feeding the fear appraisal.
#[derive(Debug, Clone, PartialEq)]
pub struct FisSet<T> {
    pub undesirability: FuzzyInferenceSystem<T>,
    pub likelihood: FuzzyInferenceSystem<T>,
    pub ig: FuzzyInferenceSystem<T>,
}

impl<T: Scalar> FisSet<T> {
    pub fn with_layout(layout: &MembershipLayout<T>) -> Result<Self, FuzzyError> {
        Ok(Self {
            undesirability: UNDESIRABILITY.build(layout)?,
            likelihood: LIKELIHOOD.build(layout)?,
            ig: IG.build(layout)?,
        })
    }
}

impl<T: Scalar> Default for FisSet<T> {
    fn default() -> Self {
        Self {
            undesirability: build_undesirability_fis(),
            likelihood: build_likelihood_fis(),
            ig: build_ig_fis(),
        }
    }
}
