//! Plain-text rule/peak tables.
//!
//! ```text
//! # fis: likelihood
//! Distance,VLD,0,0.08,0.24
//! ...                              (5 lines per variable: VARIABLE,TOKEN,a,b,c)
//! VHD,VHS,MLH
//! ...                              (25 lines: IN1_TOKEN,IN2_TOKEN,OUT_TOKEN)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored, except that a
//! `# fis: <name>` line names the system. Variables are taken in order of
//! first appearance: first input, second input, output. Within a variable the
//! token lines are ordered from the lowest to the highest level.

use std::fmt::Write as _;

use crate::scalar::Scalar;

use super::intensity::Level;
use super::membership::{MembershipFunction, Shape};
use super::system::{FuzzyInferenceSystem, FuzzyRule};
use super::variable::LinguisticVariable;
use super::FuzzyError;

/// Rule lines only, in rule order.
pub fn rules_to_text<T: Scalar>(fis: &FuzzyInferenceSystem<T>) -> String {
    let [in1, in2] = fis.inputs();
    let mut s = String::new();
    for r in fis.rules() {
        let _ = writeln!(
            s,
            "{},{},{}",
            in1.token(r.antecedent.0),
            in2.token(r.antecedent.1),
            fis.output().token(r.consequent)
        );
    }
    s
}

/// Peak lines for the three variables.
pub fn peaks_to_text<T: Scalar>(fis: &FuzzyInferenceSystem<T>) -> String {
    let mut s = String::new();
    let [in1, in2] = fis.inputs();
    for var in [in1, in2, fis.output()] {
        for level in Level::ALL {
            let f = var.function(level);
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                var.name(),
                var.token(level),
                f.a().as_f64(),
                f.peak().as_f64(),
                f.c().as_f64()
            );
        }
    }
    s
}

pub fn to_text<T: Scalar>(fis: &FuzzyInferenceSystem<T>) -> String {
    format!("# fis: {}\n{}{}", fis.name(), peaks_to_text(fis), rules_to_text(fis))
}

struct PendingVariable {
    name: String,
    tokens: Vec<String>,
    breakpoints: Vec<(f64, f64, f64)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> FuzzyError {
    FuzzyError::Parse {
        line,
        message: msg.into(),
    }
}

pub fn from_text<T: Scalar>(text: &str) -> Result<FuzzyInferenceSystem<T>, FuzzyError> {
    let mut name = String::from("unnamed");
    let mut vars: Vec<PendingVariable> = Vec::new();
    let mut rule_lines: Vec<(usize, [String; 3])> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("fis:") {
                name = n.trim().to_owned();
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        match fields.len() {
            5 => {
                if !rule_lines.is_empty() {
                    return Err(parse_err(lineno, "peak line after rule lines"));
                }
                let num = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| parse_err(lineno, format!("not a number: {s}")))
                };
                let bp = (num(fields[2])?, num(fields[3])?, num(fields[4])?);
                match vars.iter_mut().find(|v| v.name == fields[0]) {
                    Some(v) => {
                        v.tokens.push(fields[1].to_owned());
                        v.breakpoints.push(bp);
                    }
                    None => vars.push(PendingVariable {
                        name: fields[0].to_owned(),
                        tokens: vec![fields[1].to_owned()],
                        breakpoints: vec![bp],
                    }),
                }
            }
            3 => rule_lines.push((
                lineno,
                [fields[0].to_owned(), fields[1].to_owned(), fields[2].to_owned()],
            )),
            n => return Err(parse_err(lineno, format!("expected 3 or 5 fields, got {n}"))),
        }
    }

    if vars.len() != 3 {
        return Err(parse_err(0, format!("expected 3 variables, got {}", vars.len())));
    }
    let mut built = Vec::with_capacity(3);
    for v in vars {
        if v.tokens.len() != 5 {
            return Err(parse_err(
                0,
                format!("{}: expected 5 tokens, got {}", v.name, v.tokens.len()),
            ));
        }
        let mut functions = Vec::with_capacity(5);
        for (i, (a, b, c)) in v.breakpoints.iter().enumerate() {
            let shape = match i {
                0 => Shape::LeftShoulder,
                4 => Shape::RightShoulder,
                _ => Shape::Triangle,
            };
            functions.push(MembershipFunction::new(T::lit(*a), T::lit(*b), T::lit(*c), shape)?);
        }
        let tokens: [&str; 5] = std::array::from_fn(|i| v.tokens[i].as_str());
        built.push(LinguisticVariable::new(
            v.name.clone(),
            tokens,
            functions.try_into().expect("five functions"),
        )?);
    }
    let output = built.pop().expect("three variables");
    let in2 = built.pop().expect("three variables");
    let in1 = built.pop().expect("three variables");

    let mut rules = Vec::with_capacity(rule_lines.len());
    for (lineno, [a, b, c]) in &rule_lines {
        let level = |var: &LinguisticVariable<T>, tok: &str| {
            var.level_of(tok)
                .ok_or_else(|| parse_err(*lineno, format!("unknown token {tok} for {}", var.name())))
        };
        rules.push(FuzzyRule::new(level(&in1, a)?, level(&in2, b)?, level(&output, c)?));
    }
    FuzzyInferenceSystem::new(name, [in1, in2], output, rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::rulebases::{build_ig_fis, build_likelihood_fis, build_undesirability_fis};

    #[test]
    fn round_trip_preserves_systems() {
        for fis in [
            build_likelihood_fis::<f64>(),
            build_undesirability_fis(),
            build_ig_fis(),
        ] {
            let text = to_text(&fis);
            let back = from_text::<f64>(&text).unwrap();
            assert_eq!(back, fis);
        }
    }

    #[test]
    fn rejects_wrong_field_count() {
        let err = from_text::<f64>("a,b\n").unwrap_err();
        assert!(matches!(err, FuzzyError::Parse { line: 1, .. }));
    }

    #[test]
    fn rejects_unknown_rule_token() {
        let fis = build_likelihood_fis::<f64>();
        let text = to_text(&fis).replacen("VHD,VHS,MLH", "VHD,XXS,MLH", 1);
        assert!(matches!(from_text::<f64>(&text), Err(FuzzyError::Parse { .. })));
    }

    #[test]
    fn rejects_missing_rule() {
        let fis = build_likelihood_fis::<f64>();
        let text = to_text(&fis).replacen("VHD,VHS,MLH\n", "", 1);
        assert!(matches!(from_text::<f64>(&text), Err(FuzzyError::InvalidRuleBase(_))));
    }
}
