//! The simulated society: actors, sensing, norm-driven decisions,
//! kinematics on a torus and collision counting.

mod action;
mod actors;
mod agent;
mod config;
mod geometry;
mod norms;
pub mod trace;
mod world;

pub use action::{apply_action, Action, ActionKind, YIELD_TURN};
pub use actors::{ActorKind, Dominance, LambdaTable, Personality, Stature, WeightRange};
pub use agent::{Belief, NeighborSnapshot, VehicleAgent};
pub use config::{AppraisalMode, ConfigError, DynamicAppraisal, FearSettings, VehicleRatio, Weather, WorldConfig};
pub use geometry::{normalize_angle, Torus};
pub use norms::{
    classify_maneuver, match_norm_rule, Condition, Emotion, Maneuver, NormRule, RoadNorm, ScenarioPattern,
    DEFAULT_KEEP_COURSE, DEFAULT_YIELD_TO_STRONGER, NORM_RULES,
};
pub use world::{
    decide_norm, decide_random_walk, find_collisions, spawn_kinds, spawn_society, AgentTrace, Decision, FearTrace,
    Mode, TickReport, World,
};
