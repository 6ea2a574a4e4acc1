use std::f64::consts::PI;
use std::fmt;

use super::agent::VehicleAgent;
use super::config::WorldConfig;
use super::geometry::{normalize_angle, Torus};

/// Heading offset applied by a passage-yielding manoeuvre.
pub const YIELD_TURN: f64 = 15.0 * PI / 180.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    KeepCourse,
    Decelerate,
    Accelerate,
    /// Slow down and veer left for one tick.
    YieldPassage,
    /// Slow down while the nearest neighbour is inside the safety distance.
    MaintainSafeDistance,
    RandomTurn {
        heading_delta: f64,
        velocity_delta: f64,
    },
}

/// Actions without a payload, for rule tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    KeepCourse,
    Decelerate,
    Accelerate,
    YieldPassage,
    MaintainSafeDistance,
}

impl From<ActionKind> for Action {
    fn from(k: ActionKind) -> Action {
        match k {
            ActionKind::KeepCourse => Action::KeepCourse,
            ActionKind::Decelerate => Action::Decelerate,
            ActionKind::Accelerate => Action::Accelerate,
            ActionKind::YieldPassage => Action::YieldPassage,
            ActionKind::MaintainSafeDistance => Action::MaintainSafeDistance,
        }
    }
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::KeepCourse => "keep-course",
            Action::Decelerate => "decelerate",
            Action::Accelerate => "accelerate",
            Action::YieldPassage => "yield-passage",
            Action::MaintainSafeDistance => "maintain-safe-distance",
            Action::RandomTurn { .. } => "random-turn",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn clamp_velocity(v: f64, cfg: &WorldConfig) -> f64 {
    v.clamp(cfg.min_velocity, cfg.max_velocity)
}

/// Applies the action's speed/heading change, then advances the agent one
/// tick along its heading.
pub fn apply_action(agent: &mut VehicleAgent, action: Action, cfg: &WorldConfig) {
    match action {
        Action::KeepCourse => {}
        Action::Decelerate => agent.velocity = clamp_velocity(agent.velocity - cfg.deceleration_rate, cfg),
        Action::Accelerate => agent.velocity = clamp_velocity(agent.velocity + cfg.acceleration_rate, cfg),
        Action::YieldPassage => {
            agent.velocity = clamp_velocity(agent.velocity - cfg.deceleration_rate, cfg);
            agent.heading = normalize_angle(agent.heading + YIELD_TURN);
        }
        Action::MaintainSafeDistance => {
            let close = agent
                .belief
                .nearest
                .is_some_and(|n| n.distance < f64::from(cfg.safety_distance));
            if close {
                agent.velocity = clamp_velocity(agent.velocity - cfg.deceleration_rate, cfg);
            }
        }
        Action::RandomTurn {
            heading_delta,
            velocity_delta,
        } => {
            agent.heading = normalize_angle(agent.heading + heading_delta);
            agent.velocity = clamp_velocity(agent.velocity + velocity_delta, cfg);
        }
    }
    advance(agent, cfg);
}

fn advance(agent: &mut VehicleAgent, cfg: &WorldConfig) {
    let torus = Torus::new(cfg.world_width, cfg.world_height);
    let (x, y) = agent.position;
    agent.position = torus.wrap((
        x + agent.velocity * agent.heading.cos(),
        y + agent.velocity * agent.heading.sin(),
    ));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::society::actors::{ActorKind, LambdaTable, Personality};
    use crate::society::agent::{Belief, NeighborSnapshot};

    fn agent(velocity: f64) -> VehicleAgent {
        VehicleAgent {
            id: 0,
            kind: ActorKind::Car3000cc,
            personality: Personality::for_kind(ActorKind::Car3000cc, &LambdaTable::default()),
            position: (10.0, 10.0),
            heading: 0.0,
            velocity,
            belief: Belief::default(),
            fear: None,
            collisions: 0,
        }
    }

    fn cfg() -> WorldConfig {
        WorldConfig {
            min_velocity: 0.14,
            max_velocity: 0.8,
            deceleration_rate: 0.2,
            acceleration_rate: 0.2,
            ..Default::default()
        }
    }

    #[test]
    fn decelerate_and_clamp() {
        let mut a = agent(0.5);
        apply_action(&mut a, Action::Decelerate, &cfg());
        assert!((a.velocity - 0.3).abs() < 1e-12);
        let mut a = agent(0.2);
        apply_action(&mut a, Action::Decelerate, &cfg());
        assert_eq!(a.velocity, 0.14);
        let mut a = agent(0.7);
        apply_action(&mut a, Action::Accelerate, &cfg());
        assert_eq!(a.velocity, 0.8);
    }

    #[test]
    fn wraps_across_the_edge() {
        let mut a = agent(0.5);
        a.position = (49.8, 0.0);
        apply_action(&mut a, Action::KeepCourse, &cfg());
        assert!((a.position.0 - 0.3).abs() < 1e-9);
        assert!(a.position.1.abs() < 1e-12);
    }

    #[test]
    fn maintain_safe_distance_only_slows_when_close() {
        let near = NeighborSnapshot {
            id: 1,
            kind: ActorKind::Truck,
            distance: 1.0,
            relative_speed: 0.0,
            bearing: 0.0,
            velocity: 0.3,
        };
        let mut a = agent(0.5);
        a.belief.nearest = Some(near);
        apply_action(&mut a, Action::MaintainSafeDistance, &cfg());
        assert!((a.velocity - 0.3).abs() < 1e-12);

        let mut a = agent(0.5);
        a.belief.nearest = Some(NeighborSnapshot { distance: 5.0, ..near });
        apply_action(&mut a, Action::MaintainSafeDistance, &cfg());
        assert_eq!(a.velocity, 0.5);
    }

    #[test]
    fn yield_turns_left_and_slows() {
        let mut a = agent(0.5);
        apply_action(&mut a, Action::YieldPassage, &cfg());
        assert!((a.heading - YIELD_TURN).abs() < 1e-12);
        assert!((a.velocity - 0.3).abs() < 1e-12);
        assert!(a.position.1 > 10.0);
    }

    #[test]
    fn random_turn_clamps_at_max() {
        let mut a = agent(0.8);
        apply_action(
            &mut a,
            Action::RandomTurn {
                heading_delta: 0.1,
                velocity_delta: 0.05,
            },
            &cfg(),
        );
        assert_eq!(a.velocity, 0.8);
        assert!((a.heading - 0.1).abs() < 1e-12);
    }
}
