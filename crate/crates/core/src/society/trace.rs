//! Plain CSV writers for per-tick traces and world snapshots.

use std::io::{self, Write};

use super::agent::VehicleAgent;
use super::world::{AgentTrace, FearTrace};

pub const AGENT_TRACE_HEADER: &str = "tick,agent_id,kind,x,y,velocity,mode,fw,action,collisions_this_tick";
pub const FEAR_TRACE_HEADER: &str = "tick,agent_id,undesirability,likelihood,ig,potential,intensity,willingness";
pub const SNAPSHOT_HEADER: &str = "id,kind,x,y,heading,velocity,collisions";

pub fn write_agent_trace<W: Write>(out: &mut W, rows: &[AgentTrace], header: bool) -> io::Result<()> {
    if header {
        writeln!(out, "{AGENT_TRACE_HEADER}")?;
    }
    for r in rows {
        let fw = r.fw.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.tick,
            r.agent_id,
            r.kind.symbol(),
            r.x,
            r.y,
            r.velocity,
            r.mode.name(),
            fw,
            r.action,
            r.collisions_this_tick
        )?;
    }
    Ok(())
}

pub fn write_fear_trace<W: Write>(out: &mut W, rows: &[FearTrace], header: bool) -> io::Result<()> {
    if header {
        writeln!(out, "{FEAR_TRACE_HEADER}")?;
    }
    for r in rows {
        let s = &r.state;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.tick, r.agent_id, s.undesirability, s.likelihood, s.ig, s.potential, s.intensity, s.willingness
        )?;
    }
    Ok(())
}

pub fn write_snapshot<W: Write>(out: &mut W, agents: &[VehicleAgent]) -> io::Result<()> {
    writeln!(out, "{SNAPSHOT_HEADER}")?;
    for a in agents {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            a.id,
            a.kind.symbol(),
            a.position.0,
            a.position.1,
            a.heading,
            a.velocity,
            a.collisions
        )?;
    }
    Ok(())
}
