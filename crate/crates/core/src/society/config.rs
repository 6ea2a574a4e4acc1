use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::emotion::{Combiner, FearConfig};

use super::actors::LambdaTable;

/// Trucks-to-cars ratio `r:1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VehicleRatio(u32);

impl VehicleRatio {
    pub const ALLOWED: [u32; 3] = [2, 3, 4];

    pub fn new(trucks_per_car: u32) -> Result<Self, ConfigError> {
        if Self::ALLOWED.contains(&trucks_per_car) {
            Ok(Self(trucks_per_car))
        } else {
            Err(ConfigError::out_of_range(
                "vehicle_ratio",
                format!("{trucks_per_car}:1"),
                "one of 2:1, 3:1, 4:1",
            ))
        }
    }

    pub fn trucks_per_car(self) -> u32 {
        self.0
    }

    /// Trucks among `n` vehicles, rounding half up.
    pub fn trucks(self, n: usize) -> usize {
        let r = self.0 as usize;
        // round(n * r / (r + 1)) with halves rounded up, in integers.
        (2 * n * r + (r + 1)) / (2 * (r + 1))
    }
}

impl Default for VehicleRatio {
    fn default() -> Self {
        Self(2)
    }
}

impl fmt::Display for VehicleRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:1", self.0)
    }
}

impl FromStr for VehicleRatio {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::out_of_range("vehicle_ratio", s.to_owned(), "one of 2:1, 3:1, 4:1");
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        if b.trim() != "1" {
            return Err(bad());
        }
        Self::new(a.trim().parse().map_err(|_| bad())?)
    }
}

impl TryFrom<String> for VehicleRatio {
    type Error = ConfigError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<VehicleRatio> for String {
    fn from(r: VehicleRatio) -> String {
        r.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weather {
    #[default]
    Bright,
    Rainy,
}

/// Where the three fear inputs come from in norms mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppraisalMode {
    /// Crisp `li`, `ud`, `ig` constants from the configuration.
    #[default]
    Sliders,
    /// Fuzzy inference on each agent's current belief.
    Dynamic,
}

/// Goal-related inputs used by dynamic appraisal; the situational inputs
/// (distance, speed, proximity) come from the belief.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicAppraisal {
    pub imp_goal: f64,
    pub ach_goal: f64,
    pub sense_of_reality: f64,
}

impl Default for DynamicAppraisal {
    fn default() -> Self {
        Self {
            imp_goal: 0.8,
            ach_goal: 0.3,
            sense_of_reality: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FearSettings {
    pub threshold: f64,
    pub combiner: Combiner,
    pub weights: [f64; 3],
}

impl Default for FearSettings {
    fn default() -> Self {
        let d = FearConfig::<f64>::default();
        Self {
            threshold: d.threshold,
            combiner: d.combiner,
            weights: d.weights,
        }
    }
}

impl FearSettings {
    pub fn to_config(&self) -> Result<FearConfig<f64>, ConfigError> {
        FearConfig::new(self.threshold, self.combiner, self.weights).map_err(|e| ConfigError::Invalid {
            key: "fear",
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorldConfig {
    pub num_avs: usize,
    pub vehicle_ratio: VehicleRatio,
    pub min_velocity: f64,
    pub max_velocity: f64,
    pub acceleration_rate: f64,
    pub deceleration_rate: f64,
    pub safety_distance: u32,
    pub sonar_range: u32,
    /// `false`: random walk. `true`: norms and fear.
    pub metacognition: bool,
    pub li: f64,
    pub ud: f64,
    pub ig: f64,
    pub world_width: f64,
    pub world_height: f64,
    pub ticks: u64,
    pub collision_radius: f64,
    pub weather: Weather,
    pub appraisal: AppraisalMode,
    pub dynamic: DynamicAppraisal,
    pub fear: FearSettings,
    pub lambda: LambdaTable,
}

impl Default for WorldConfig {
    fn default() -> Self {
        Self {
            num_avs: 10,
            vehicle_ratio: VehicleRatio::default(),
            min_velocity: 0.14,
            max_velocity: 0.8,
            acceleration_rate: 0.1,
            deceleration_rate: 0.1,
            safety_distance: 3,
            sonar_range: 2,
            metacognition: false,
            li: 0.1,
            ud: 0.1,
            ig: 1.0,
            world_width: 50.0,
            world_height: 50.0,
            ticks: 1000,
            collision_radius: 0.5,
            weather: Weather::Bright,
            appraisal: AppraisalMode::Sliders,
            dynamic: DynamicAppraisal::default(),
            fear: FearSettings::default(),
            lambda: LambdaTable::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{key} = {value} is out of range (expected {expected})")]
    OutOfRange {
        key: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("{key}: {message}")]
    Invalid { key: &'static str, message: String },
    #[error("cannot place {agents} agents without overlap in a {width}x{height} world")]
    Crowded { agents: usize, width: f64, height: f64 },
    #[error("config file: {0}")]
    Parse(String),
}

impl ConfigError {
    fn out_of_range(key: &'static str, value: impl ToString, expected: &'static str) -> Self {
        ConfigError::OutOfRange {
            key,
            value: value.to_string(),
            expected,
        }
    }

    /// Name of the offending key, when there is one.
    pub fn key(&self) -> Option<&'static str> {
        match self {
            ConfigError::OutOfRange { key, .. } | ConfigError::Invalid { key, .. } => Some(key),
            _ => None,
        }
    }
}

fn unit(key: &'static str, v: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(ConfigError::out_of_range(key, v, "[0, 1]"))
    }
}

impl WorldConfig {
    pub const MAX_AVS: usize = 30;

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: WorldConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.message().to_owned()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(1..=Self::MAX_AVS).contains(&self.num_avs) {
            return Err(ConfigError::out_of_range("num_avs", self.num_avs, "[1, 30]"));
        }
        unit("min_velocity", self.min_velocity)?;
        unit("max_velocity", self.max_velocity)?;
        if self.min_velocity > self.max_velocity {
            return Err(ConfigError::out_of_range(
                "min_velocity",
                self.min_velocity,
                "min_velocity <= max_velocity",
            ));
        }
        unit("acceleration_rate", self.acceleration_rate)?;
        unit("deceleration_rate", self.deceleration_rate)?;
        // The slider range starts at 2, but the low-range experiment
        // sets run at 1.
        if !(1..=10).contains(&self.safety_distance) {
            return Err(ConfigError::out_of_range(
                "safety_distance",
                self.safety_distance,
                "[1, 10]",
            ));
        }
        if !(1..=10).contains(&self.sonar_range) {
            return Err(ConfigError::out_of_range("sonar_range", self.sonar_range, "[1, 10]"));
        }
        unit("li", self.li)?;
        unit("ud", self.ud)?;
        unit("ig", self.ig)?;
        for (key, v) in [("world_width", self.world_width), ("world_height", self.world_height)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::out_of_range(key, v, "a positive size"));
            }
        }
        if !(self.collision_radius.is_finite() && self.collision_radius > 0.0) {
            return Err(ConfigError::out_of_range(
                "collision_radius",
                self.collision_radius,
                "> 0",
            ));
        }
        unit("dynamic.imp_goal", self.dynamic.imp_goal)?;
        unit("dynamic.ach_goal", self.dynamic.ach_goal)?;
        unit("dynamic.sense_of_reality", self.dynamic.sense_of_reality)?;
        for (key, v) in self.lambda.values() {
            unit(key, v)?;
        }
        self.fear.to_config()?;
        Ok(())
    }

    pub fn fear_config(&self) -> FearConfig<f64> {
        self.fear.to_config().expect("validated config")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truck_counts_round_half_up() {
        assert_eq!(VehicleRatio::new(2).unwrap().trucks(30), 20);
        assert_eq!(VehicleRatio::new(3).unwrap().trucks(10), 8);
        assert_eq!(VehicleRatio::new(4).unwrap().trucks(10), 8);
        assert_eq!(VehicleRatio::new(2).unwrap().trucks(1), 1);
        assert_eq!(VehicleRatio::new(3).unwrap().trucks(2), 2);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!("3:1".parse::<VehicleRatio>().unwrap().trucks_per_car(), 3);
        assert!("5:1".parse::<VehicleRatio>().is_err());
        assert!("2:2".parse::<VehicleRatio>().is_err());
    }

    #[test]
    fn default_is_valid() {
        WorldConfig::default().validate().unwrap();
    }

    #[test]
    fn range_errors_name_the_key() {
        let cfg = WorldConfig {
            num_avs: 31,
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().key(), Some("num_avs"));
        let cfg = WorldConfig {
            min_velocity: 0.9,
            max_velocity: 0.5,
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().key(), Some("min_velocity"));
        let cfg = WorldConfig {
            sonar_range: 0,
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().key(), Some("sonar_range"));
        let cfg = WorldConfig {
            ig: 1.5,
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().key(), Some("ig"));
    }

    #[test]
    fn toml_round_trip_and_unknown_keys() {
        let cfg = WorldConfig {
            num_avs: 25,
            vehicle_ratio: VehicleRatio::new(4).unwrap(),
            ..Default::default()
        };
        assert_eq!(WorldConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
        let err = WorldConfig::from_toml("num_avz = 3\n").unwrap_err();
        assert!(err.to_string().contains("num_avz"), "{err}");
        let cfg = WorldConfig::from_toml("num_avs = 12\nvehicle_ratio = \"3:1\"\n").unwrap();
        assert_eq!(cfg.num_avs, 12);
    }
}
