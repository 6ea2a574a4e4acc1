//! Road interaction rules: who is leading whom, which social norm applies,
//! and the road-norm predicates that gate it.

use std::f64::consts::FRAC_PI_4;

use super::action::ActionKind;
use super::actors::{ActorKind, Stature};
use super::agent::{Belief, NeighborSnapshot, VehicleAgent};
use super::config::{Weather, WorldConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Maneuver {
    /// The neighbour is ahead and outside the safety distance.
    Following,
    /// The neighbour is behind: it is the one that may want to pass.
    OvertakingRequest,
    /// The neighbour is ahead and inside the safety distance.
    Tailgating,
}

impl Maneuver {
    /// True when the deciding agent is the one in front.
    pub fn self_leads(self) -> bool {
        matches!(self, Maneuver::OvertakingRequest)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Bright,
    Rainy,
    Any,
}

impl Condition {
    fn admits(self, w: Weather) -> bool {
        matches!(
            (self, w),
            (Condition::Any, _) | (Condition::Bright, Weather::Bright) | (Condition::Rainy, Weather::Rainy)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScenarioPattern {
    pub leader: Stature,
    pub follower: Stature,
    pub maneuver: Maneuver,
    pub condition: Condition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Emotion {
    Fear,
    /// Sympathy, guilt, shame: named by the rule but not appraised.
    Other,
}

/// Machine-checkable stand-ins for the informal road norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoadNorm {
    /// "Assist an overtaking vehicle": the neighbour behind is at least as
    /// fast as us, or already inside the safety distance.
    AssistOvertaking,
    /// "Keep your lane": no third agent ahead (within 45 degrees of the
    /// heading) inside the safety distance.
    KeepLane,
    /// "Must not drive in a bus lane": the left side, where a yield would
    /// take us, holds no third agent inside the safety distance.
    NoBusLane,
    /// "Change speed to keep a safe distance": there is speed headroom in
    /// the direction that opens the gap (slower for a follower, faster for a
    /// leader).
    OpenGap,
    /// "Two-second rule": the gap to the leader is shorter than the safety
    /// distance plus two ticks of own travel.
    TwoSecondRule,
}

impl RoadNorm {
    pub fn holds(self, agent: &VehicleAgent, belief: &Belief, cfg: &WorldConfig) -> bool {
        let Some(n) = belief.nearest else {
            return false;
        };
        let safety = f64::from(cfg.safety_distance);
        let others = || belief.in_sonar.iter().filter(move |o| o.id != n.id);
        match self {
            RoadNorm::AssistOvertaking => n.velocity >= agent.velocity || n.distance < safety,
            RoadNorm::KeepLane => !others().any(|o| o.distance < safety && o.bearing.abs() < FRAC_PI_4),
            RoadNorm::NoBusLane => !others().any(|o| o.distance < safety && o.bearing > 0.0),
            RoadNorm::OpenGap => {
                if n.is_ahead() {
                    agent.velocity > cfg.min_velocity
                } else {
                    agent.velocity < cfg.max_velocity
                }
            }
            RoadNorm::TwoSecondRule => n.distance < safety + 2.0 * agent.velocity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRule {
    pub id: &'static str,
    pub pattern: ScenarioPattern,
    pub social_norm: &'static str,
    pub emotion: Emotion,
    pub p: RoadNorm,
    pub q: Option<RoadNorm>,
    pub comply: ActionKind,
    pub violate: ActionKind,
}

impl NormRule {
    /// `p`, and `q` when present.
    pub fn road_norms_hold(&self, agent: &VehicleAgent, belief: &Belief, cfg: &WorldConfig) -> bool {
        self.p.holds(agent, belief, cfg) && self.q.is_none_or(|q| q.holds(agent, belief, cfg))
    }
}

const fn rule(
    id: &'static str,
    (leader, follower, maneuver, condition): (Stature, Stature, Maneuver, Condition),
    social_norm: &'static str,
    emotion: Emotion,
    (p, q): (RoadNorm, Option<RoadNorm>),
    comply: ActionKind,
) -> NormRule {
    NormRule {
        id,
        pattern: ScenarioPattern {
            leader,
            follower,
            maneuver,
            condition,
        },
        social_norm,
        emotion,
        p,
        q,
        comply,
        violate: ActionKind::KeepCourse,
    }
}

use Condition::{Any, Bright, Rainy};
use Maneuver::{Following, OvertakingRequest, Tailgating};
use RoadNorm::{AssistOvertaking, KeepLane, NoBusLane, OpenGap, TwoSecondRule};
use Stature::{Strong, Weak};

/// The interaction rules in priority order.
pub const NORM_RULES: [NormRule; 8] = [
    rule(
        "strong-leads-weak-overtakes",
        (Strong, Weak, OvertakingRequest, Any),
        "help-the-weaker",
        Emotion::Other,
        (AssistOvertaking, Some(KeepLane)),
        ActionKind::MaintainSafeDistance,
    ),
    rule(
        "weak-leads-strong-overtakes",
        (Weak, Strong, OvertakingRequest, Any),
        "maintain-distance-from-stronger",
        Emotion::Fear,
        (NoBusLane, Some(AssistOvertaking)),
        ActionKind::YieldPassage,
    ),
    rule(
        "weak-leads-weak-overtakes",
        (Weak, Weak, OvertakingRequest, Any),
        "tit-for-tat",
        Emotion::Other,
        (NoBusLane, Some(AssistOvertaking)),
        ActionKind::MaintainSafeDistance,
    ),
    rule(
        "strong-leads-strong-overtakes",
        (Strong, Strong, OvertakingRequest, Any),
        "tit-for-tat",
        Emotion::Fear,
        (OpenGap, Some(AssistOvertaking)),
        ActionKind::Accelerate,
    ),
    rule(
        "weak-follows-strong-bright",
        (Strong, Weak, Following, Bright),
        "keep-distance-from-stronger",
        Emotion::Fear,
        (TwoSecondRule, None),
        ActionKind::MaintainSafeDistance,
    ),
    rule(
        "weak-follows-strong-rainy",
        (Strong, Weak, Following, Rainy),
        "keep-distance-from-stronger",
        Emotion::Fear,
        (TwoSecondRule, None),
        ActionKind::MaintainSafeDistance,
    ),
    rule(
        "weak-tailgates-strong",
        (Strong, Weak, Tailgating, Any),
        "keep-distance-from-stronger",
        Emotion::Fear,
        (OpenGap, None),
        ActionKind::MaintainSafeDistance,
    ),
    rule(
        "strong-tailgates-weak",
        (Weak, Strong, Tailgating, Any),
        "keep-distance-from-stronger-abide-the-rule",
        Emotion::Fear,
        (OpenGap, Some(NoBusLane)),
        ActionKind::MaintainSafeDistance,
    ),
];

/// Fallback when nothing in the table matches.
pub const DEFAULT_YIELD_TO_STRONGER: NormRule = rule(
    "default-stronger-neighbor",
    (Strong, Strong, Following, Any),
    "maintain-distance-from-stronger",
    Emotion::Other,
    (KeepLane, None),
    ActionKind::MaintainSafeDistance,
);

pub const DEFAULT_KEEP_COURSE: NormRule = rule(
    "default-keep-course",
    (Weak, Weak, Following, Any),
    "none",
    Emotion::Other,
    (KeepLane, None),
    ActionKind::KeepCourse,
);

pub fn classify_maneuver(nearest: &NeighborSnapshot, cfg: &WorldConfig) -> Maneuver {
    if !nearest.is_ahead() {
        Maneuver::OvertakingRequest
    } else if nearest.distance < f64::from(cfg.safety_distance) {
        Maneuver::Tailgating
    } else {
        Maneuver::Following
    }
}

/// First rule, in table order, whose pattern fits the situation with the
/// nearest neighbour. Falls back to keeping a distance when the neighbour
/// dominates us and to keeping course otherwise (including when there is no
/// neighbour at all).
pub fn match_norm_rule(
    rules: &[NormRule],
    belief: &Belief,
    self_kind: ActorKind,
    other_kind: Option<ActorKind>,
    cfg: &WorldConfig,
) -> NormRule {
    let (Some(nearest), Some(other_kind)) = (belief.nearest, other_kind) else {
        return DEFAULT_KEEP_COURSE;
    };
    let maneuver = classify_maneuver(&nearest, cfg);
    let (me, them) = (self_kind.dominance().stature(), other_kind.dominance().stature());
    let (leader, follower) = if maneuver.self_leads() { (me, them) } else { (them, me) };
    let found = rules.iter().find(|r| {
        let p = &r.pattern;
        p.leader == leader && p.follower == follower && p.maneuver == maneuver && p.condition.admits(cfg.weather)
    });
    match found {
        Some(r) => *r,
        None if other_kind.dominance().dominates(self_kind.dominance()) => DEFAULT_YIELD_TO_STRONGER,
        None => DEFAULT_KEEP_COURSE,
    }
}
