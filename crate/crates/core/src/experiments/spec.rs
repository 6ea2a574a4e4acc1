//! Experiment definitions and their text format.
//!
//! A spec file is TOML:
//!
//! ```toml
//! set = "B1-s2"          # label used in every output row
//! repetitions = 7        # runs per row, at most 1000
//! base_seed = 1          # run seed = base_seed + row_index * 1000 + rep
//!
//! [base]                 # world settings shared by every row
//! metacognition = true
//! max_velocity = 0.8
//!
//! [[row]]                # one section per experiment row
//! experiment_no = 1
//! num_avs = 10           # any other world setting may be overridden here
//! ```
//!
//! Keys under `[base]` and `[[row]]` are the fields of [`WorldConfig`];
//! anything left out takes its default.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;
use toml::{Table, Value};

use crate::society::{ConfigError, WorldConfig};

pub const DEFAULT_REPETITIONS: u32 = 7;
pub const DEFAULT_BASE_SEED: u64 = 1;
/// Seed stride between rows; also the repetition limit.
pub const SEED_STRIDE: u64 = 1000;
pub const AV_COUNTS: [usize; 5] = [10, 15, 20, 25, 30];

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("unknown experiment set '{0}' (expected a1..a5, b1..b5 or all)")]
    UnknownSet(String),
    #[error("spec parse error: {0}")]
    Parse(String),
    #[error("{set} experiment {experiment_no}: {source}")]
    Row {
        set: String,
        experiment_no: u32,
        #[source]
        source: ConfigError,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentType {
    /// Random walk.
    A,
    /// Norms and fear.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetId {
    pub kind: ExperimentType,
    /// 1..=5
    pub index: u8,
}

impl SetId {
    pub fn all() -> Vec<SetId> {
        [ExperimentType::A, ExperimentType::B]
            .into_iter()
            .flat_map(|kind| (1..=5).map(move |index| SetId { kind, index }))
            .collect()
    }

    pub fn new(kind: ExperimentType, index: u8) -> Result<SetId, SpecError> {
        if (1..=5).contains(&index) {
            Ok(SetId { kind, index })
        } else {
            Err(SpecError::UnknownSet(format!("{kind:?}{index}")))
        }
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.index)
    }
}

impl FromStr for SetId {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SpecError::UnknownSet(s.to_owned());
        let mut chars = s.trim().chars();
        let kind = match chars.next().map(|c| c.to_ascii_lowercase()) {
            Some('a') => ExperimentType::A,
            Some('b') => ExperimentType::B,
            _ => return Err(unknown()),
        };
        let index: u8 = chars.as_str().parse().map_err(|_| unknown())?;
        SetId::new(kind, index).map_err(|_| unknown())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub experiment_no: u32,
    pub config: WorldConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub set: String,
    pub repetitions: u32,
    pub base_seed: u64,
    pub rows: Vec<ExperimentRow>,
}

/// Parameters of one built-in set: (max velocity, accel = decel rate,
/// safety distance, sonar ranges).
fn set_parameters(index: u8) -> (f64, f64, u32, &'static [u32]) {
    match index {
        1 => (0.8, 0.1, 3, &[2, 5]),
        2 => (0.5, 0.2, 2, &[2, 5]),
        3 => (0.3, 0.1, 2, &[2]),
        4 => (0.3, 0.3, 3, &[3]),
        5 => (0.3, 0.1, 1, &[1]),
        _ => unreachable!("set index checked by SetId"),
    }
}

/// Built-in specs for one set. Sets listing two sonar ranges yield
/// one sub-sweep per range, labelled `A1-s2`, `A1-s5` and so on.
pub fn builtin_set(id: SetId) -> Vec<ExperimentSpec> {
    let (max_velocity, rate, safety_distance, sonars) = set_parameters(id.index);
    let norms = id.kind == ExperimentType::B;
    sonars
        .iter()
        .map(|&sonar_range| {
            let set = if sonars.len() > 1 {
                format!("{id}-s{sonar_range}")
            } else {
                id.to_string()
            };
            let rows = AV_COUNTS
                .iter()
                .zip(1..)
                .map(|(&num_avs, experiment_no)| ExperimentRow {
                    experiment_no,
                    config: WorldConfig {
                        num_avs,
                        min_velocity: 0.14,
                        max_velocity,
                        acceleration_rate: rate,
                        deceleration_rate: rate,
                        safety_distance,
                        sonar_range,
                        metacognition: norms,
                        li: 0.1,
                        ud: 0.1,
                        ig: 1.0,
                        ..WorldConfig::default()
                    },
                })
                .collect();
            ExperimentSpec {
                set,
                repetitions: DEFAULT_REPETITIONS,
                base_seed: DEFAULT_BASE_SEED,
                rows,
            }
        })
        .collect()
}

/// Every built-in spec, A sets first.
pub fn builtin_specs() -> Vec<ExperimentSpec> {
    SetId::all().into_iter().flat_map(builtin_set).collect()
}

/// Looks a built-in spec up by its label (`B3`, `a1-s5`, ...).
pub fn builtin_spec(label: &str) -> Option<ExperimentSpec> {
    builtin_specs().into_iter().find(|s| s.set.eq_ignore_ascii_case(label))
}

/// Keys always written to `[base]`, so a fixture shows every experiment
/// column even where it equals the default.
const TABLE_KEYS: [&str; 7] = [
    "metacognition",
    "min_velocity",
    "max_velocity",
    "acceleration_rate",
    "deceleration_rate",
    "safety_distance",
    "sonar_range",
];
const SLIDER_KEYS: [&str; 3] = ["li", "ud", "ig"];

fn config_table(cfg: &WorldConfig) -> Table {
    Table::try_from(cfg).expect("config serialises")
}

fn merge(into: &mut Table, from: &Table) {
    for (k, v) in from {
        match (into.get_mut(k), v) {
            (Some(Value::Table(dst)), Value::Table(src)) => merge(dst, src),
            _ => {
                into.insert(k.clone(), v.clone());
            }
        }
    }
}

impl ExperimentSpec {
    pub fn with_base_seed(mut self, base_seed: u64) -> Self {
        self.base_seed = base_seed;
        self
    }

    pub fn with_repetitions(mut self, repetitions: u32) -> Self {
        self.repetitions = repetitions;
        self
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.rows.is_empty() {
            return Err(SpecError::Invalid(format!("{}: no rows", self.set)));
        }
        if !(1..=SEED_STRIDE).contains(&u64::from(self.repetitions)) {
            return Err(SpecError::Invalid(format!(
                "{}: repetitions must be in [1, {SEED_STRIDE}], got {}",
                self.set, self.repetitions
            )));
        }
        for row in &self.rows {
            row.config.validate().map_err(|source| SpecError::Row {
                set: self.set.clone(),
                experiment_no: row.experiment_no,
                source,
            })?;
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        let mut doc: Table = text
            .parse()
            .map_err(|e: toml::de::Error| SpecError::Parse(e.message().to_owned()))?;
        let field = |doc: &mut Table, key: &str| doc.remove(key);
        let set = match field(&mut doc, "set") {
            Some(Value::String(s)) => s,
            Some(_) => return Err(SpecError::Parse("'set' must be a string".into())),
            None => return Err(SpecError::Parse("missing 'set'".into())),
        };
        let int = |v: Option<Value>, key: &str, default: i64| -> Result<i64, SpecError> {
            match v {
                None => Ok(default),
                Some(Value::Integer(i)) if i >= 0 => Ok(i),
                Some(_) => Err(SpecError::Parse(format!("'{key}' must be a non-negative integer"))),
            }
        };
        let repetitions = int(
            field(&mut doc, "repetitions"),
            "repetitions",
            i64::from(DEFAULT_REPETITIONS),
        )?;
        let repetitions = u32::try_from(repetitions).map_err(|_| SpecError::Parse("'repetitions' too large".into()))?;
        let base_seed = int(field(&mut doc, "base_seed"), "base_seed", DEFAULT_BASE_SEED as i64)? as u64;
        let base = match field(&mut doc, "base") {
            Some(Value::Table(t)) => t,
            None => Table::new(),
            Some(_) => return Err(SpecError::Parse("'base' must be a table".into())),
        };
        let rows = match field(&mut doc, "row") {
            Some(Value::Array(rows)) => rows,
            None => Vec::new(),
            Some(_) => return Err(SpecError::Parse("'row' must be an array of tables".into())),
        };
        if let Some(key) = doc.keys().next() {
            return Err(SpecError::Parse(format!("unknown key '{key}'")));
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let Value::Table(mut row) = row else {
                    return Err(SpecError::Parse(format!("row {} is not a table", i + 1)));
                };
                let experiment_no = match row.remove("experiment_no") {
                    Some(Value::Integer(n)) if n > 0 => n as u32,
                    None => i as u32 + 1,
                    Some(_) => return Err(SpecError::Parse(format!("row {}: bad experiment_no", i + 1))),
                };
                let mut table = base.clone();
                merge(&mut table, &row);
                let config: WorldConfig = table.try_into().map_err(|e: toml::de::Error| SpecError::Row {
                    set: set.clone(),
                    experiment_no,
                    source: ConfigError::Parse(e.message().to_owned()),
                })?;
                Ok(ExperimentRow { experiment_no, config })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let spec = ExperimentSpec {
            set,
            repetitions,
            base_seed,
            rows,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Writes settings shared by all rows under `[base]` and the rest per
    /// row. Values equal to the defaults are omitted, except the experiment
    /// table columns.
    pub fn to_toml(&self) -> String {
        let default = config_table(&WorldConfig::default());
        let tables: Vec<Table> = self.rows.iter().map(|r| config_table(&r.config)).collect();
        let norms = self.rows.iter().any(|r| r.config.metacognition);
        let forced = |k: &str| TABLE_KEYS.contains(&k) || (norms && SLIDER_KEYS.contains(&k));

        let mut base = Table::new();
        let keys: Vec<&String> = default.keys().collect();
        let mut per_row: Vec<Table> = vec![Table::new(); tables.len()];
        for key in keys {
            let first = tables.first().and_then(|t| t.get(key));
            let shared = tables.iter().all(|t| t.get(key) == first);
            if shared {
                if let Some(v) = first {
                    if forced(key) || default.get(key) != Some(v) {
                        base.insert(key.clone(), v.clone());
                    }
                }
            } else {
                for (dst, t) in per_row.iter_mut().zip(&tables) {
                    if let Some(v) = t.get(key) {
                        dst.insert(key.clone(), v.clone());
                    }
                }
            }
        }

        let mut out = String::new();
        out.push_str(&format!("set = {}\n", Value::String(self.set.clone())));
        out.push_str(&format!("repetitions = {}\n", self.repetitions));
        out.push_str(&format!("base_seed = {}\n", self.base_seed));
        let mut doc = Table::new();
        doc.insert("base".into(), Value::Table(base));
        out.push('\n');
        out.push_str(&toml::to_string(&doc).expect("table serialises"));
        for (row, table) in self.rows.iter().zip(per_row) {
            let mut t = Table::new();
            t.insert("experiment_no".into(), Value::Integer(i64::from(row.experiment_no)));
            t.extend(table);
            let mut doc = Table::new();
            doc.insert("row".into(), Value::Array(vec![Value::Table(t)]));
            out.push('\n');
            out.push_str(&toml::to_string(&doc).expect("table serialises"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ids_parse_case_insensitively() {
        assert_eq!(
            "b3".parse::<SetId>().unwrap(),
            SetId::new(ExperimentType::B, 3).unwrap()
        );
        assert_eq!("A5".parse::<SetId>().unwrap().to_string(), "A5");
        for bad in ["z9", "a0", "a6", "b", ""] {
            assert!(matches!(bad.parse::<SetId>(), Err(SpecError::UnknownSet(_))), "{bad}");
        }
    }

    #[test]
    fn sonar_lists_split_into_sub_sweeps() {
        let a1 = builtin_set("a1".parse().unwrap());
        assert_eq!(
            a1.iter().map(|s| s.set.as_str()).collect::<Vec<_>>(),
            ["A1-s2", "A1-s5"]
        );
        assert_eq!(a1[1].rows[0].config.sonar_range, 5);
        let b3 = builtin_set("b3".parse().unwrap());
        assert_eq!(b3.len(), 1);
        assert_eq!(b3[0].set, "B3");
        assert_eq!(builtin_specs().len(), 14);
    }

    #[test]
    fn type_b_rows_carry_sliders_and_norms() {
        for spec in builtin_specs() {
            assert_eq!(spec.rows.len(), 5);
            for row in &spec.rows {
                let c = &row.config;
                assert_eq!(c.metacognition, spec.set.starts_with('B'));
                assert_eq!((c.li, c.ud, c.ig), (0.1, 0.1, 1.0));
            }
        }
    }

    #[test]
    fn toml_round_trip() {
        for spec in builtin_specs() {
            let text = spec.to_toml();
            assert_eq!(ExperimentSpec::from_toml(&text).unwrap(), spec, "{text}");
        }
    }

    #[test]
    fn row_overrides_and_errors() {
        let text = "set = \"x\"\n[base]\nmax_velocity = 0.5\n[[row]]\nnum_avs = 12\n[[row]]\nexperiment_no = 7\nnum_avs = 31\n";
        match ExperimentSpec::from_toml(text) {
            Err(SpecError::Row {
                experiment_no, source, ..
            }) => {
                assert_eq!(experiment_no, 7);
                assert_eq!(source.key(), Some("num_avs"));
            }
            other => panic!("{other:?}"),
        }
        let ok = ExperimentSpec::from_toml("set = \"x\"\n[base]\nmax_velocity = 0.5\n[[row]]\nnum_avs = 12\n").unwrap();
        assert_eq!(ok.rows[0].experiment_no, 1);
        assert_eq!(ok.rows[0].config.max_velocity, 0.5);
        assert_eq!(ok.repetitions, DEFAULT_REPETITIONS);
        assert!(ExperimentSpec::from_toml("set = \"x\"\nbogus = 1\n[[row]]\n").is_err());
        assert!(ExperimentSpec::from_toml("set = \"x\"\n[[row]]\nsonar = 3\n").is_err());
    }
}
