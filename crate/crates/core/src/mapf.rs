//! The diMAPF model: instances, states, single-agent moves and plans.

use std::fmt;

use thiserror::Error;

use crate::graph::{Digraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub u32);

impl AgentId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for AgentId {
    fn from(i: usize) -> Self {
        AgentId(i as u32)
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A digraph, an ordered agent set and start/goal placements.
///
/// Construction does not check the instance invariants; call
/// [`validate_instance`] (or use [`MapfInstance::checked`]) before handing an
/// instance to anything that relies on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapfInstance {
    digraph: Digraph,
    agent_names: Vec<String>,
    start: Vec<VertexId>,
    goal: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooManyAgents {
        agents: usize,
        vertices: usize,
    },
    StartNotInjective {
        agents: (AgentId, AgentId),
        vertex: VertexId,
    },
    GoalNotInjective {
        agents: (AgentId, AgentId),
        vertex: VertexId,
    },
    UnknownStartVertex {
        agent: AgentId,
        vertex: VertexId,
    },
    UnknownGoalVertex {
        agent: AgentId,
        vertex: VertexId,
    },
    DuplicateAgentName {
        name: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyAgents { agents, vertices } => {
                write!(
                    f,
                    "|R| <= |V| fails: {agents} agents on {vertices} vertices"
                )
            }
            Violation::StartNotInjective {
                agents: (a, b),
                vertex,
            } => {
                write!(
                    f,
                    "start not injective: agents {a} and {b} both start on vertex {vertex}"
                )
            }
            Violation::GoalNotInjective {
                agents: (a, b),
                vertex,
            } => {
                write!(
                    f,
                    "goal not injective: agents {a} and {b} share goal vertex {vertex}"
                )
            }
            Violation::UnknownStartVertex { agent, vertex } => {
                write!(f, "start vertex {vertex} of agent {agent} does not exist")
            }
            Violation::UnknownGoalVertex { agent, vertex } => {
                write!(f, "goal vertex {vertex} of agent {agent} does not exist")
            }
            Violation::DuplicateAgentName { name } => {
                write!(f, "agent name `{name}` is used twice")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidInstance(pub Vec<Violation>);

impl MapfInstance {
    /// `agents` lists `(name, start, goal)` in agent-id order.
    pub fn new(digraph: Digraph, agents: Vec<(String, VertexId, VertexId)>) -> Self {
        let mut agent_names = Vec::with_capacity(agents.len());
        let mut start = Vec::with_capacity(agents.len());
        let mut goal = Vec::with_capacity(agents.len());
        for (name, s, t) in agents {
            agent_names.push(name);
            start.push(s);
            goal.push(t);
        }
        MapfInstance {
            digraph,
            agent_names,
            start,
            goal,
        }
    }

    /// Agents named `a0, a1, ...` from parallel start/goal lists.
    pub fn from_placements(digraph: Digraph, start: Vec<VertexId>, goal: Vec<VertexId>) -> Self {
        assert_eq!(
            start.len(),
            goal.len(),
            "start and goal lists differ in length"
        );
        let agent_names = (0..start.len()).map(|i| format!("a{i}")).collect();
        MapfInstance {
            digraph,
            agent_names,
            start,
            goal,
        }
    }

    pub fn checked(
        digraph: Digraph,
        agents: Vec<(String, VertexId, VertexId)>,
    ) -> Result<Self, InvalidInstance> {
        let inst = Self::new(digraph, agents);
        validate_instance(&inst).map_err(InvalidInstance)?;
        Ok(inst)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn agent_count(&self) -> usize {
        self.agent_names.len()
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        (0..self.agent_names.len()).map(AgentId::from)
    }

    pub fn agent_name(&self, a: AgentId) -> &str {
        &self.agent_names[a.index()]
    }

    pub fn agent_by_name(&self, name: &str) -> Option<AgentId> {
        self.agent_names
            .iter()
            .position(|n| n == name)
            .map(AgentId::from)
    }

    pub fn start(&self, a: AgentId) -> VertexId {
        self.start[a.index()]
    }

    pub fn goal(&self, a: AgentId) -> VertexId {
        self.goal[a.index()]
    }

    pub fn start_state(&self) -> State {
        State(self.start.clone())
    }

    pub fn goal_state(&self) -> State {
        State(self.goal.clone())
    }

    /// Number of vertices not occupied in the start placement.
    pub fn empty_vertex_count(&self) -> usize {
        self.digraph
            .vertex_count()
            .saturating_sub(self.agent_count())
    }
}

fn injectivity(placement: &[VertexId], n: usize) -> Option<(AgentId, AgentId, VertexId)> {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (a, v) in placement.iter().enumerate() {
        if v.index() >= n {
            continue;
        }
        if let Some(b) = owner[v.index()] {
            return Some((AgentId::from(b), AgentId::from(a), *v));
        }
        owner[v.index()] = Some(a);
    }
    None
}

/// Checks every instance invariant. Digraph simplicity is enforced when the
/// digraph is built, so only the agent-related rules can fail here.
pub fn validate_instance(inst: &MapfInstance) -> Result<(), Vec<Violation>> {
    let n = inst.digraph.vertex_count();
    let mut violations = Vec::new();
    if inst.agent_count() > n {
        violations.push(Violation::TooManyAgents {
            agents: inst.agent_count(),
            vertices: n,
        });
    }
    for a in inst.agents() {
        if !inst.digraph.contains(inst.start(a)) {
            violations.push(Violation::UnknownStartVertex {
                agent: a,
                vertex: inst.start(a),
            });
        }
        if !inst.digraph.contains(inst.goal(a)) {
            violations.push(Violation::UnknownGoalVertex {
                agent: a,
                vertex: inst.goal(a),
            });
        }
    }
    if let Some((a, b, v)) = injectivity(&inst.start, n) {
        violations.push(Violation::StartNotInjective {
            agents: (a, b),
            vertex: v,
        });
    }
    if let Some((a, b, v)) = injectivity(&inst.goal, n) {
        violations.push(Violation::GoalNotInjective {
            agents: (a, b),
            vertex: v,
        });
    }
    for (i, name) in inst.agent_names.iter().enumerate() {
        if inst.agent_names[..i].contains(name) {
            violations.push(Violation::DuplicateAgentName { name: name.clone() });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Agent placement indexed by agent id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Vec<VertexId>);

impl State {
    pub fn position(&self, a: AgentId) -> VertexId {
        self.0[a.index()]
    }

    pub fn positions(&self) -> &[VertexId] {
        &self.0
    }

    /// Occupancy table: `occupancy[v]` is the agent on `v`, if any.
    pub fn occupancy(&self, vertex_count: usize) -> Vec<Option<AgentId>> {
        let mut occ = vec![None; vertex_count];
        for (a, v) in self.0.iter().enumerate() {
            occ[v.index()] = Some(AgentId::from(a));
        }
        occ
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub agent: AgentId,
    pub from: VertexId,
    pub to: VertexId,
}

impl Move {
    pub fn new(agent: AgentId, from: VertexId, to: VertexId) -> Self {
        Move { agent, from, to }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Plan {
    pub moves: Vec<Move>,
}

impl Plan {
    pub fn new(moves: Vec<Move>) -> Self {
        Plan { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl From<Vec<Move>> for Plan {
    fn from(moves: Vec<Move>) -> Self {
        Plan { moves }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("state/instance mismatch: {0}")]
pub struct StateMismatch(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown agent {0}")]
    UnknownAgent(AgentId),
    #[error("agent not at from: agent {agent} is on {actual}, not {claimed}")]
    AgentNotAtSource {
        agent: AgentId,
        claimed: VertexId,
        actual: VertexId,
    },
    #[error("no arc ({0}, {1})")]
    NoArc(VertexId, VertexId),
    #[error("target occupied: vertex {vertex} holds agent {occupant}")]
    TargetOccupied { vertex: VertexId, occupant: AgentId },
    #[error(transparent)]
    State(#[from] StateMismatch),
}

fn check_state(inst: &MapfInstance, s: &State) -> Result<(), StateMismatch> {
    let n = inst.digraph.vertex_count();
    if s.0.len() != inst.agent_count() {
        return Err(StateMismatch(format!(
            "state places {} agents, instance has {}",
            s.0.len(),
            inst.agent_count()
        )));
    }
    if let Some(v) = s.0.iter().find(|v| v.index() >= n) {
        return Err(StateMismatch(format!("vertex {v} does not exist")));
    }
    if let Some((a, b, v)) = injectivity(&s.0, n) {
        return Err(StateMismatch(format!(
            "agents {a} and {b} share vertex {v}"
        )));
    }
    Ok(())
}

/// Every legal single-agent move, ordered by agent id then target id.
pub fn legal_moves(inst: &MapfInstance, s: &State) -> Result<Vec<Move>, StateMismatch> {
    check_state(inst, s)?;
    let occ = s.occupancy(inst.digraph.vertex_count());
    let mut moves = Vec::new();
    for a in inst.agents() {
        let u = s.position(a);
        for &v in inst.digraph.successors(u) {
            if occ[v.index()].is_none() {
                moves.push(Move::new(a, u, v));
            }
        }
    }
    Ok(moves)
}

pub fn apply_move(inst: &MapfInstance, s: &State, m: Move) -> Result<State, MoveError> {
    check_state(inst, s)?;
    if m.agent.index() >= inst.agent_count() {
        return Err(MoveError::UnknownAgent(m.agent));
    }
    let actual = s.position(m.agent);
    if actual != m.from {
        return Err(MoveError::AgentNotAtSource {
            agent: m.agent,
            claimed: m.from,
            actual,
        });
    }
    if !inst.digraph.has_arc(m.from, m.to) {
        return Err(MoveError::NoArc(m.from, m.to));
    }
    if let Some(b) = s.0.iter().position(|&v| v == m.to) {
        return Err(MoveError::TargetOccupied {
            vertex: m.to,
            occupant: AgentId::from(b),
        });
    }
    let mut next = s.clone();
    next.0[m.agent.index()] = m.to;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanFailure {
    #[error("move {index}: {error}")]
    IllegalMove { index: usize, error: MoveError },
    #[error("goal not reached")]
    GoalNotReached,
    #[error(transparent)]
    InvalidInstance(#[from] InvalidInstance),
}

impl PlanFailure {
    pub fn index(&self) -> Option<usize> {
        match self {
            PlanFailure::IllegalMove { index, .. } => Some(*index),
            _ => None,
        }
    }
}

/// Replays `p` from the start state on an incrementally maintained occupancy
/// table; succeeds iff every move is legal and the goal placement is reached.
pub fn validate_plan(inst: &MapfInstance, p: &Plan) -> Result<(), PlanFailure> {
    validate_instance(inst).map_err(|v| PlanFailure::InvalidInstance(InvalidInstance(v)))?;
    let d = &inst.digraph;
    let mut pos = inst.start.clone();
    let mut occ = inst.start_state().occupancy(d.vertex_count());
    for (index, m) in p.moves.iter().enumerate() {
        let fail = |error| Err(PlanFailure::IllegalMove { index, error });
        let Some(&actual) = pos.get(m.agent.index()) else {
            return fail(MoveError::UnknownAgent(m.agent));
        };
        if actual != m.from {
            return fail(MoveError::AgentNotAtSource {
                agent: m.agent,
                claimed: m.from,
                actual,
            });
        }
        if !d.has_arc(m.from, m.to) {
            return fail(MoveError::NoArc(m.from, m.to));
        }
        if let Some(occupant) = occ[m.to.index()] {
            return fail(MoveError::TargetOccupied {
                vertex: m.to,
                occupant,
            });
        }
        occ[m.from.index()] = None;
        occ[m.to.index()] = Some(m.agent);
        pos[m.agent.index()] = m.to;
    }
    if pos == inst.goal {
        Ok(())
    } else {
        Err(PlanFailure::GoalNotReached)
    }
}

/// Left fold of [`apply_move`] over the plan; returns the final state.
pub fn replay_plan(inst: &MapfInstance, p: &Plan) -> Result<State, PlanFailure> {
    p.moves
        .iter()
        .enumerate()
        .try_fold(inst.start_state(), |s, (index, &m)| {
            apply_move(inst, &s, m).map_err(|error| PlanFailure::IllegalMove { index, error })
        })
}
