use std::f64::consts::{FRAC_PI_4, TAU};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::emotion::{appraise, fear_from_appraisal, AppraisalInputs, FearConfig, FearState};
use crate::fuzzy::FisSet;

use super::action::{apply_action, Action};
use super::actors::{ActorKind, Personality};
use super::agent::{Belief, NeighborSnapshot, VehicleAgent};
use super::config::{AppraisalMode, ConfigError, WorldConfig};
use super::geometry::{normalize_angle, Torus};
use super::norms::{match_norm_rule, Emotion, NormRule, NORM_RULES};

/// Placement attempts per agent before the world is declared too crowded.
const MAX_PLACEMENT_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    RandomWalk,
    Norms,
}

impl Mode {
    pub fn of(cfg: &WorldConfig) -> Mode {
        if cfg.metacognition {
            Mode::Norms
        } else {
            Mode::RandomWalk
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::RandomWalk => "random-walk",
            Mode::Norms => "norms",
        }
    }
}

/// Outcome of one agent's decision step.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub action: Action,
    pub rule: Option<&'static str>,
    /// Last appraisal made while deciding, if any.
    pub fear: Option<FearState<f64>>,
    /// The pre-crash re-appraisal was used.
    pub escalated: bool,
}

impl Decision {
    fn plain(action: Action, rule: Option<&'static str>) -> Self {
        Self {
            action,
            rule,
            fear: None,
            escalated: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentTrace {
    pub tick: u64,
    pub agent_id: usize,
    pub kind: ActorKind,
    pub x: f64,
    pub y: f64,
    pub velocity: f64,
    pub mode: Mode,
    pub fw: Option<f64>,
    pub action: &'static str,
    pub collisions_this_tick: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FearTrace {
    pub tick: u64,
    pub agent_id: usize,
    pub state: FearState<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TickReport {
    pub tick: u64,
    pub collisions: Vec<(usize, usize)>,
    /// Filled only when tracing is on.
    pub agents: Vec<AgentTrace>,
    pub fear: Vec<FearTrace>,
}

#[derive(Debug, Clone)]
pub struct World {
    cfg: WorldConfig,
    fear_cfg: FearConfig<f64>,
    torus: Torus,
    agents: Vec<VehicleAgent>,
    fis: Option<FisSet<f64>>,
    tick: u64,
    trace: bool,
}

/// Creates `cfg.num_avs` agents: trucks and 3000cc cars in the configured
/// ratio, non-overlapping, with random headings and speeds.
pub fn spawn_society<R: Rng + ?Sized>(cfg: &WorldConfig, rng: &mut R) -> Result<World, ConfigError> {
    cfg.validate()?;
    let n = cfg.num_avs;
    let trucks = cfg.vehicle_ratio.trucks(n);
    let mut kinds: Vec<ActorKind> = std::iter::repeat_n(ActorKind::Truck, trucks)
        .chain(std::iter::repeat_n(ActorKind::Car3000cc, n - trucks))
        .collect();
    kinds.shuffle(rng);
    spawn_kinds(cfg, &kinds, rng)
}

/// Like [`spawn_society`] with an explicit kind per agent.
pub fn spawn_kinds<R: Rng + ?Sized>(cfg: &WorldConfig, kinds: &[ActorKind], rng: &mut R) -> Result<World, ConfigError> {
    cfg.validate()?;
    let torus = Torus::new(cfg.world_width, cfg.world_height);
    let mut agents: Vec<VehicleAgent> = Vec::with_capacity(kinds.len());
    for (id, &kind) in kinds.iter().enumerate() {
        let mut placed = None;
        for _ in 0..MAX_PLACEMENT_ATTEMPTS {
            let p = (rng.gen::<f64>() * cfg.world_width, rng.gen::<f64>() * cfg.world_height);
            if agents
                .iter()
                .all(|a| torus.distance(a.position, p) > cfg.collision_radius)
            {
                placed = Some(p);
                break;
            }
        }
        let position = placed.ok_or(ConfigError::Crowded {
            agents: kinds.len(),
            width: cfg.world_width,
            height: cfg.world_height,
        })?;
        let heading = normalize_angle(rng.gen::<f64>() * TAU);
        let velocity = cfg.min_velocity + (cfg.max_velocity - cfg.min_velocity) * rng.gen::<f64>();
        agents.push(VehicleAgent {
            id,
            kind,
            personality: Personality::for_kind(kind, &cfg.lambda),
            position,
            heading,
            velocity,
            belief: Belief::default(),
            fear: None,
            collisions: 0,
        });
    }
    World::from_agents(cfg.clone(), agents)
}

impl World {
    /// Wraps hand-built agents. Ids must be `0..n` in order.
    pub fn from_agents(cfg: WorldConfig, agents: Vec<VehicleAgent>) -> Result<Self, ConfigError> {
        if agents.iter().enumerate().any(|(i, a)| a.id != i) {
            return Err(ConfigError::Invalid {
                key: "agents",
                message: "agent ids must be 0..n in order".into(),
            });
        }
        let fear_cfg = cfg.fear.to_config()?;
        let fis = (cfg.metacognition && cfg.appraisal == AppraisalMode::Dynamic).then(FisSet::default);
        Ok(Self {
            torus: Torus::new(cfg.world_width, cfg.world_height),
            fear_cfg,
            cfg,
            agents,
            fis,
            tick: 0,
            trace: false,
        })
    }

    pub fn set_trace(&mut self, on: bool) {
        self.trace = on;
    }

    pub fn config(&self) -> &WorldConfig {
        &self.cfg
    }

    pub fn agents(&self) -> &[VehicleAgent] {
        &self.agents
    }

    pub fn agents_mut(&mut self) -> &mut [VehicleAgent] {
        &mut self.agents
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn mode(&self) -> Mode {
        Mode::of(&self.cfg)
    }

    pub fn total_collisions(&self) -> u64 {
        // Every event increments two counters.
        self.agents.iter().map(|a| a.collisions).sum::<u64>() / 2
    }

    /// Current situation awareness of agent `id`.
    pub fn sense(&self, id: usize) -> Belief {
        let me = &self.agents[id];
        let sonar = f64::from(self.cfg.sonar_range);
        let (vx, vy) = (me.velocity * me.heading.cos(), me.velocity * me.heading.sin());
        let mut in_sonar: Vec<NeighborSnapshot> = self
            .agents
            .iter()
            .filter(|o| o.id != id)
            .filter_map(|o| {
                let (dx, dy) = self.torus.delta(me.position, o.position);
                let distance = dx.hypot(dy);
                if distance > sonar {
                    return None;
                }
                let (ox, oy) = (o.velocity * o.heading.cos(), o.velocity * o.heading.sin());
                Some(NeighborSnapshot {
                    id: o.id,
                    kind: o.kind,
                    distance,
                    relative_speed: (ox - vx).hypot(oy - vy),
                    bearing: normalize_angle(dy.atan2(dx) - me.heading),
                    velocity: o.velocity,
                })
            })
            .collect();
        in_sonar.sort_by(|a, b| a.distance.total_cmp(&b.distance).then(a.id.cmp(&b.id)));
        let nearest = in_sonar.first().copied();
        let speed_norm = if self.cfg.max_velocity > 0.0 {
            (me.velocity / self.cfg.max_velocity).clamp(0.0, 1.0)
        } else {
            0.0
        };
        Belief {
            tick: self.tick,
            scenario: None,
            nearest,
            pre_crash: nearest.is_some_and(|n| n.distance < f64::from(self.cfg.safety_distance)),
            distance_norm: nearest.map_or(1.0, |n| (n.distance / sonar).clamp(0.0, 1.0)),
            speed_norm,
            in_sonar,
        }
    }

    /// Counts pairs closer than the collision radius and charges both
    /// participants.
    pub fn detect_collisions(&mut self) -> Vec<(usize, usize)> {
        let events = find_collisions(&self.agents, self.torus, self.cfg.collision_radius);
        for &(a, b) in &events {
            self.agents[a].collisions += 1;
            self.agents[b].collisions += 1;
        }
        events
    }

    /// One tick: each agent in id order senses, decides and moves (later
    /// agents see earlier agents' new positions), then collisions are
    /// counted.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> TickReport {
        self.tick += 1;
        let mode = self.mode();
        let mut report = TickReport {
            tick: self.tick,
            ..Default::default()
        };
        for id in 0..self.agents.len() {
            let mut belief = self.sense(id);
            belief.tick = self.tick;
            let decision = match mode {
                Mode::RandomWalk => {
                    Decision::plain(decide_random_walk(&self.agents[id], &belief, &self.cfg, rng), None)
                }
                Mode::Norms => {
                    let other = belief.nearest.map(|n| n.kind);
                    let rule = match_norm_rule(&NORM_RULES, &belief, self.agents[id].kind, other, &self.cfg);
                    belief.scenario = Some(rule.id);
                    decide_norm(
                        &self.agents[id],
                        &belief,
                        &rule,
                        self.fis.as_ref(),
                        &self.fear_cfg,
                        &self.cfg,
                    )
                }
            };
            let agent = &mut self.agents[id];
            agent.belief = belief;
            agent.fear = decision.fear;
            apply_action(agent, decision.action, &self.cfg);
            if let Some(state) = decision.fear {
                if self.trace {
                    report.fear.push(FearTrace {
                        tick: self.tick,
                        agent_id: id,
                        state,
                    });
                }
            }
            if self.trace {
                report.agents.push(AgentTrace {
                    tick: self.tick,
                    agent_id: id,
                    kind: agent.kind,
                    x: agent.position.0,
                    y: agent.position.1,
                    velocity: agent.velocity,
                    mode,
                    fw: decision.fear.map(|f| f.willingness),
                    action: decision.action.name(),
                    collisions_this_tick: 0,
                });
            }
        }
        report.collisions = self.detect_collisions();
        if self.trace {
            for &(a, b) in &report.collisions {
                report.agents[a].collisions_this_tick += 1;
                report.agents[b].collisions_this_tick += 1;
            }
        }
        report
    }
}

/// All unordered pairs `(i, j)`, `i < j`, closer than `radius`.
pub fn find_collisions(agents: &[VehicleAgent], torus: Torus, radius: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, a) in agents.iter().enumerate() {
        for (j, b) in agents.iter().enumerate().skip(i + 1) {
            if torus.distance(a.position, b.position) < radius {
                out.push((i, j));
            }
        }
    }
    out
}

/// Random-walk baseline: ignores the belief, turns by up to 45 degrees
/// either way and nudges speed by up to the acceleration rate.
pub fn decide_random_walk<R: Rng + ?Sized>(
    _agent: &VehicleAgent,
    _belief: &Belief,
    cfg: &WorldConfig,
    rng: &mut R,
) -> Action {
    let heading_delta = rng.gen_range(-FRAC_PI_4..=FRAC_PI_4);
    let velocity_delta = rng.gen_range(-cfg.acceleration_rate..=cfg.acceleration_rate);
    Action::RandomTurn {
        heading_delta,
        velocity_delta,
    }
}

/// Fear appraisal for the current situation. `likelihood_override` replaces
/// the likelihood leg (used for pre-crash escalation).
fn appraise_situation(
    belief: &Belief,
    fis: Option<&FisSet<f64>>,
    fear_cfg: &FearConfig<f64>,
    cfg: &WorldConfig,
    likelihood_override: Option<f64>,
) -> FearState<f64> {
    let (ud, li, ig) = match cfg.appraisal {
        AppraisalMode::Sliders => (cfg.ud, cfg.li, cfg.ig),
        AppraisalMode::Dynamic => {
            let fis = fis.expect("dynamic appraisal needs the fuzzy systems");
            let inputs = AppraisalInputs {
                imp_goal: cfg.dynamic.imp_goal,
                ach_goal: cfg.dynamic.ach_goal,
                distance: belief.distance_norm,
                speed: belief.speed_norm,
                sense_of_reality: cfg.dynamic.sense_of_reality,
                proximity: belief.distance_norm,
            };
            let s = appraise(&inputs, fis, fear_cfg).expect("belief inputs are normalised");
            (s.undesirability, s.likelihood, s.ig)
        }
    };
    fear_from_appraisal(ud, likelihood_override.unwrap_or(li), ig, fear_cfg)
}

/// Norm-compliance decision for one agent.
///
/// Non-fear rules keep a distance without appraisal. For fear rules the
/// willingness is compared with the agent's egoist threshold; a reluctant
/// agent in a pre-crash situation re-appraises once with certain
/// likelihood. A willing agent complies if the rule's road norms hold and
/// takes the violate action otherwise; an unwilling one keeps course.
pub fn decide_norm(
    agent: &VehicleAgent,
    belief: &Belief,
    rule: &NormRule,
    fis: Option<&FisSet<f64>>,
    fear_cfg: &FearConfig<f64>,
    cfg: &WorldConfig,
) -> Decision {
    if belief.nearest.is_none() {
        return Decision::plain(Action::KeepCourse, Some(rule.id));
    }
    if rule.emotion != Emotion::Fear {
        return Decision::plain(rule.comply.into(), Some(rule.id));
    }
    let fear_cfg = match agent.personality.fear_threshold {
        Some(t) => fear_cfg.with_threshold(t),
        None => *fear_cfg,
    };
    let lambda = agent.personality.lambda;
    let mut fear = appraise_situation(belief, fis, &fear_cfg, cfg, None);
    let mut escalated = false;
    if fear.willingness < lambda && belief.pre_crash {
        fear = appraise_situation(belief, fis, &fear_cfg, cfg, Some(1.0));
        escalated = true;
    }
    let action = if fear.willingness < lambda {
        Action::KeepCourse
    } else if rule.road_norms_hold(agent, belief, cfg) {
        rule.comply.into()
    } else {
        rule.violate.into()
    };
    Decision {
        action,
        rule: Some(rule.id),
        fear: Some(fear),
        escalated,
    }
}
