use crate::emotion::FearState;

use super::actors::{ActorKind, Personality};

/// What an agent knows about one neighbour inside its sonar range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborSnapshot {
    pub id: usize,
    pub kind: ActorKind,
    pub distance: f64,
    /// Magnitude of the velocity difference vector.
    pub relative_speed: f64,
    /// Direction of the neighbour relative to own heading, in `(-PI, PI]`;
    /// positive is to the left.
    pub bearing: f64,
    pub velocity: f64,
}

impl NeighborSnapshot {
    pub fn is_ahead(&self) -> bool {
        self.bearing.abs() <= std::f64::consts::FRAC_PI_2
    }
}

/// Situation awareness for one tick.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Belief {
    pub tick: u64,
    /// Norm rule the current situation was matched to.
    pub scenario: Option<&'static str>,
    pub nearest: Option<NeighborSnapshot>,
    /// Sorted by distance, then id.
    pub in_sonar: Vec<NeighborSnapshot>,
    pub pre_crash: bool,
    /// Nearest distance over sonar range, 1 when nobody is in range.
    pub distance_norm: f64,
    /// Own speed over max velocity.
    pub speed_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VehicleAgent {
    pub id: usize,
    pub kind: ActorKind,
    pub personality: Personality,
    pub position: (f64, f64),
    /// Radians, counter-clockwise from +x.
    pub heading: f64,
    pub velocity: f64,
    pub belief: Belief,
    pub fear: Option<FearState<f64>>,
    pub collisions: u64,
}
