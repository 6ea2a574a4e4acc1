use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::society::{spawn_society, AgentTrace, ConfigError, FearTrace, WorldConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub total_collisions: u64,
    /// Collision events in each tick, starting at tick 1.
    pub per_tick: Vec<u32>,
}

/// A run together with its per-agent and fear traces.
#[derive(Debug, Clone, PartialEq)]
pub struct TracedRun {
    pub result: RunResult,
    pub agents: Vec<AgentTrace>,
    pub fear: Vec<FearTrace>,
}

/// Spawns a society from `seed` and steps it `ticks` times.
pub fn run_simulation(cfg: &WorldConfig, ticks: u64, seed: u64) -> Result<RunResult, ConfigError> {
    run(cfg, ticks, seed, false).map(|r| r.result)
}

/// Same run as [`run_simulation`], recording traces.
pub fn run_traced(cfg: &WorldConfig, ticks: u64, seed: u64) -> Result<TracedRun, ConfigError> {
    run(cfg, ticks, seed, true)
}

fn run(cfg: &WorldConfig, ticks: u64, seed: u64, trace: bool) -> Result<TracedRun, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut world = spawn_society(cfg, &mut rng)?;
    world.set_trace(trace);
    let mut per_tick = Vec::with_capacity(ticks as usize);
    let (mut agents, mut fear) = (Vec::new(), Vec::new());
    for _ in 0..ticks {
        let report = world.step(&mut rng);
        per_tick.push(report.collisions.len() as u32);
        agents.extend(report.agents);
        fear.extend(report.fear);
    }
    Ok(TracedRun {
        result: RunResult {
            total_collisions: per_tick.iter().map(|&c| u64::from(c)).sum(),
            per_tick,
        },
        agents,
        fear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracing_does_not_change_the_run() {
        let cfg = WorldConfig {
            num_avs: 12,
            metacognition: true,
            ..WorldConfig::default()
        };
        let traced = run_traced(&cfg, 200, 5).unwrap();
        assert_eq!(traced.result, run_simulation(&cfg, 200, 5).unwrap());
        assert_eq!(traced.agents.len(), 12 * 200);
        let from_trace: u64 = traced.agents.iter().map(|a| u64::from(a.collisions_this_tick)).sum();
        assert_eq!(from_trace, 2 * traced.result.total_collisions);
    }
}
