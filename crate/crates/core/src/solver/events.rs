use crate::graph::{strongly_connected_components, VertexId};
use crate::mapf::{validate_plan, AgentId, MapfInstance, Plan, PlanFailure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    Leave,
    Enter,
    /// The agent's last move of the whole plan.
    Settle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SccEvent {
    pub agent: AgentId,
    pub kind: EventKind,
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEvents {
    pub members: Vec<VertexId>,
    pub events: Vec<SccEvent>,
}

/// Boundary events of a plan, grouped by strongly connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccEventTrace {
    pub agent_count: usize,
    pub components: Vec<ComponentEvents>,
}

impl SccEventTrace {
    pub fn max_events_per_component(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.events.len())
            .max()
            .unwrap_or(0)
    }

    pub fn total_events(&self) -> usize {
        self.components.iter().map(|c| c.events.len()).sum()
    }

    /// True iff no component sees more than `2|R|` events.
    pub fn within_bound(&self) -> bool {
        self.max_events_per_component() <= 2 * self.agent_count
    }
}

/// Splits a valid plan into enter/leave/settle events per SCC.
///
/// A move across components is a leave for its source component and an enter
/// for its target component. Each agent's final move is additionally a settle
/// in the component containing its target. Agents that never move produce no
/// events. Within one step events are ordered leave, enter, settle.
pub fn decompose_plan_events(inst: &MapfInstance, p: &Plan) -> Result<SccEventTrace, PlanFailure> {
    validate_plan(inst, p)?;
    let scc = strongly_connected_components(inst.digraph());
    let mut components: Vec<ComponentEvents> = scc
        .components()
        .iter()
        .map(|members| ComponentEvents {
            members: members.clone(),
            events: Vec::new(),
        })
        .collect();

    let mut last_move = vec![None; inst.agent_count()];
    for (step, m) in p.moves.iter().enumerate() {
        last_move[m.agent.index()] = Some(step);
    }

    for (step, m) in p.moves.iter().enumerate() {
        let (src, dst) = (scc.component_of(m.from), scc.component_of(m.to));
        if src != dst {
            components[src].events.push(SccEvent {
                agent: m.agent,
                kind: EventKind::Leave,
                step,
            });
            components[dst].events.push(SccEvent {
                agent: m.agent,
                kind: EventKind::Enter,
                step,
            });
        }
        if last_move[m.agent.index()] == Some(step) {
            components[dst].events.push(SccEvent {
                agent: m.agent,
                kind: EventKind::Settle,
                step,
            });
        }
    }

    Ok(SccEventTrace {
        agent_count: inst.agent_count(),
        components,
    })
}
