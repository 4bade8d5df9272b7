//! Polynomial reduction from 3SAT to diMAPF, and the two constructive
//! directions: satisfying assignment to plan, and plan back to assignment.
//!
//! The generated instance is made of three gadgets:
//!
//! * a **sequencer**, a one-way chain `seq:L -> ... -> seq:1` with
//!   `L = nk + n + k`, packed full of agents. Variable agent `x_i` sits on
//!   `seq:i`, clause agent `c_j` on `seq:(n + j(n+1))` and filler agents on
//!   every other cell, each filler wanting the cell `n` positions to its left;
//! * a **clause evaluator**: per variable a choice pair `T:i`/`F:i`, both
//!   reachable from `seq:1` and both leading to `vx:i`, the goal of `x_i`,
//!   initially held by the shadow agent `xp_i`. Clause `j` is wired from
//!   `seq:(j(n+1))` to `F:i` for a positive literal `x_i` and to `T:i` for a
//!   negative one, so `c_j` can pass only through a choice vertex its
//!   variable agent left free;
//! * a **collector**: every `T:i`, `F:i` and `vx:i` leads to `vxp:1`, which
//!   starts the chain `vxp:1 -> ... -> vxp:n -> vc:1 -> ... -> vc:k` holding
//!   the goals of the shadow and clause agents.
//!
//! The instance is solvable iff the formula is satisfiable.

use std::fmt;

use thiserror::Error;

use crate::graph::{Digraph, VertexId};
use crate::mapf::{validate_plan, AgentId, MapfInstance, Move, Plan, PlanFailure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: u32) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// DIMACS encoding: `var` or `-var`.
    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn from_dimacs(lit: i64) -> Option<Self> {
        let var = u32::try_from(lit.unsigned_abs()).ok().filter(|&v| v > 0)?;
        Some(Literal {
            var,
            positive: lit > 0,
        })
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("literal {literal} refers to a variable outside 1..={variables}")]
    VariableOutOfRange { literal: Literal, variables: u32 },
}

/// A CNF formula with exactly three literals per clause. Repeated literals
/// and tautological clauses are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cnf3Formula {
    variables: u32,
    clauses: Vec<Clause>,
}

impl Cnf3Formula {
    pub fn new(variables: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for lit in clauses.iter().flatten() {
            if lit.var == 0 || lit.var > variables {
                return Err(FormulaError::VariableOutOfRange {
                    literal: *lit,
                    variables,
                });
            }
        }
        Ok(Cnf3Formula { variables, clauses })
    }

    pub fn variable_count(&self) -> usize {
        self.variables as usize
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.variable_count(), "assignment length");
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }
}

impl fmt::Display for Cnf3Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤ (n={})", self.variables);
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} ∨ {} ∨ {})", c[0], c[1], c[2]))
            .collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("{variables} variables exceed the enumeration limit of {limit}")]
    TooManyVariables { variables: usize, limit: usize },
}

pub const DEFAULT_SAT_LIMIT: usize = 20;

pub fn sat_bruteforce(f: &Cnf3Formula) -> Result<Option<Vec<bool>>, SatError> {
    sat_bruteforce_limited(f, DEFAULT_SAT_LIMIT)
}

/// Truth-table search. The witness is the lexicographically least satisfying
/// assignment, ordering `false < true` with `x1` most significant.
pub fn sat_bruteforce_limited(
    f: &Cnf3Formula,
    limit: usize,
) -> Result<Option<Vec<bool>>, SatError> {
    let n = f.variable_count();
    if n > limit {
        return Err(SatError::TooManyVariables {
            variables: n,
            limit,
        });
    }
    let mut assignment = vec![false; n];
    for bits in 0u64..1u64 << n {
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = bits >> (n - 1 - i) & 1 == 1;
        }
        if f.satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Vertex ids of the generated instance, by gadget role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    /// `seq:1..=seq:L` at indices `0..L`.
    pub sequencer: Vec<VertexId>,
    pub choice_true: Vec<VertexId>,
    pub choice_false: Vec<VertexId>,
    /// Goal of variable agent `x_i`.
    pub var_goal: Vec<VertexId>,
    /// Goal of shadow agent `xp_i`.
    pub shadow_goal: Vec<VertexId>,
    /// Goal of clause agent `c_j`.
    pub clause_goal: Vec<VertexId>,
}

impl VertexMap {
    /// The sequencer cell `seq:p`, 1-based.
    pub fn seq(&self, p: usize) -> VertexId {
        self.sequencer[p - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentMap {
    pub variables: Vec<AgentId>,
    pub shadows: Vec<AgentId>,
    pub clauses: Vec<AgentId>,
    pub fillers: Vec<AgentId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub formula: Cnf3Formula,
    pub instance: MapfInstance,
    pub vertices: VertexMap,
    pub agents: AgentMap,
}

impl ReductionArtifact {
    pub fn sequencer_len(&self) -> usize {
        self.vertices.sequencer.len()
    }

    /// 1-based sequencer position from which clause `j` (1-based) enters the
    /// evaluator.
    pub fn clause_exit(&self, j: usize) -> usize {
        j * (self.formula.variable_count() + 1)
    }

    /// Target of the clause arc for `lit`: the choice vertex that stays free
    /// exactly when `lit` is true.
    pub fn literal_gate(&self, lit: Literal) -> VertexId {
        let i = lit.var as usize - 1;
        if lit.positive {
            self.vertices.choice_false[i]
        } else {
            self.vertices.choice_true[i]
        }
    }

    /// Lines describing which formula entity each vertex and agent stands for.
    pub fn describe(&self) -> String {
        let inst = &self.instance;
        let name = |v: VertexId| inst.digraph().name(v).to_string();
        let mut out = String::new();
        for i in 0..self.formula.variable_count() {
            out.push_str(&format!(
                "variable {} agent {} shadow {} true {} false {} goal {} shadow-goal {}\n",
                i + 1,
                inst.agent_name(self.agents.variables[i]),
                inst.agent_name(self.agents.shadows[i]),
                name(self.vertices.choice_true[i]),
                name(self.vertices.choice_false[i]),
                name(self.vertices.var_goal[i]),
                name(self.vertices.shadow_goal[i]),
            ));
        }
        for (j, clause) in self.formula.clauses().iter().enumerate() {
            let lits: Vec<String> = clause.iter().map(|l| l.to_dimacs().to_string()).collect();
            out.push_str(&format!(
                "clause {} agent {} exit {} goal {} literals {}\n",
                j + 1,
                inst.agent_name(self.agents.clauses[j]),
                name(self.vertices.seq(self.clause_exit(j + 1))),
                name(self.vertices.clause_goal[j]),
                lits.join(" "),
            ));
        }
        for &f in &self.agents.fillers {
            out.push_str(&format!(
                "filler agent {} start {} goal {}\n",
                inst.agent_name(f),
                name(inst.start(f)),
                name(inst.goal(f)),
            ));
        }
        out
    }
}

/// Deliberate construction faults, used to check that the equivalence
/// harness notices a broken reduction.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Wire the first clause to the opposite choice vertex of each literal.
    FlipFirstClause,
}

pub fn build_reduction(f: &Cnf3Formula) -> ReductionArtifact {
    build_reduction_mutated(f, Mutation::None)
}

#[doc(hidden)]
pub fn build_reduction_mutated(f: &Cnf3Formula, mutation: Mutation) -> ReductionArtifact {
    let n = f.variable_count();
    let k = f.clause_count();
    let seq_len = n * k + n + k;

    let mut names: Vec<String> = (1..=seq_len).map(|p| format!("seq:{p}")).collect();
    let next = |names: &mut Vec<String>, name: String| {
        names.push(name);
        VertexId::from(names.len() - 1)
    };
    let sequencer: Vec<VertexId> = (0..seq_len).map(VertexId::from).collect();
    let mut choice_true = Vec::with_capacity(n);
    let mut choice_false = Vec::with_capacity(n);
    let mut var_goal = Vec::with_capacity(n);
    for i in 1..=n {
        choice_true.push(next(&mut names, format!("T:{i}")));
        choice_false.push(next(&mut names, format!("F:{i}")));
        var_goal.push(next(&mut names, format!("vx:{i}")));
    }
    let shadow_goal: Vec<VertexId> = (1..=n)
        .map(|i| next(&mut names, format!("vxp:{i}")))
        .collect();
    let clause_goal: Vec<VertexId> = (1..=k)
        .map(|j| next(&mut names, format!("vc:{j}")))
        .collect();

    let mut d = Digraph::with_names(names).expect("generated names are unique");
    let mut arc = |u: VertexId, v: VertexId| {
        d.ensure_arc(u, v).expect("generated arcs are simple");
    };

    for p in 1..seq_len {
        arc(sequencer[p], sequencer[p - 1]);
    }
    for i in 0..n {
        arc(sequencer[0], choice_true[i]);
        arc(sequencer[0], choice_false[i]);
        arc(choice_true[i], var_goal[i]);
        arc(choice_false[i], var_goal[i]);
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        let exit = sequencer[(j + 1) * (n + 1) - 1];
        for lit in clause {
            let i = lit.var as usize - 1;
            let positive = match mutation {
                Mutation::FlipFirstClause if j == 0 => !lit.positive,
                _ => lit.positive,
            };
            arc(
                exit,
                if positive {
                    choice_false[i]
                } else {
                    choice_true[i]
                },
            );
        }
    }
    if n > 0 {
        for i in 0..n {
            arc(choice_true[i], shadow_goal[0]);
            arc(choice_false[i], shadow_goal[0]);
            arc(var_goal[i], shadow_goal[0]);
        }
        let chain: Vec<VertexId> = shadow_goal.iter().chain(&clause_goal).copied().collect();
        for w in chain.windows(2) {
            arc(w[0], w[1]);
        }
    }

    // Agents: x_1..x_n, xp_1..xp_n, c_1..c_k, f_1..f_nk.
    let mut agents = Vec::with_capacity(2 * n + k + n * k);
    for i in 0..n {
        agents.push((format!("x{}", i + 1), sequencer[i], var_goal[i]));
    }
    for i in 0..n {
        agents.push((format!("xp{}", i + 1), var_goal[i], shadow_goal[i]));
    }
    let clause_start: Vec<usize> = (1..=k).map(|j| n + j * (n + 1)).collect();
    for j in 0..k {
        agents.push((
            format!("c{}", j + 1),
            sequencer[clause_start[j] - 1],
            clause_goal[j],
        ));
    }
    let mut filler_count = 0;
    for p in n + 1..=seq_len {
        if clause_start.contains(&p) {
            continue;
        }
        filler_count += 1;
        agents.push((
            format!("f{filler_count}"),
            sequencer[p - 1],
            sequencer[p - 1 - n],
        ));
    }
    debug_assert_eq!(filler_count, n * k);

    let ids = |range: std::ops::Range<usize>| range.map(AgentId::from).collect::<Vec<_>>();
    let agent_map = AgentMap {
        variables: ids(0..n),
        shadows: ids(n..2 * n),
        clauses: ids(2 * n..2 * n + k),
        fillers: ids(2 * n + k..2 * n + k + n * k),
    };
    ReductionArtifact {
        formula: f.clone(),
        instance: MapfInstance::new(d, agents),
        vertices: VertexMap {
            sequencer,
            choice_true,
            choice_false,
            var_goal,
            shadow_goal,
            clause_goal,
        },
        agents: agent_map,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("assignment does not satisfy formula")]
    Unsatisfying,
    #[error("assignment has {got} values, formula has {expected} variables")]
    WrongLength { expected: usize, got: usize },
    #[error("non-canonical plan: variable agent x{0} never enters its choice pair")]
    NonCanonicalPlan(usize),
    #[error("extracted assignment does not satisfy the formula")]
    ExtractedUnsatisfying,
    #[error("invalid plan: {0}")]
    InvalidPlan(#[from] PlanFailure),
}

struct PlanBuilder {
    pos: Vec<VertexId>,
    moves: Vec<Move>,
}

impl PlanBuilder {
    fn step(&mut self, agent: AgentId, to: VertexId) {
        let from = self.pos[agent.index()];
        self.moves.push(Move::new(agent, from, to));
        self.pos[agent.index()] = to;
    }

    fn walk(&mut self, agent: AgentId, path: impl IntoIterator<Item = VertexId>) {
        for v in path {
            self.step(agent, v);
        }
    }

    fn occupant(&self, v: VertexId) -> Option<AgentId> {
        self.pos.iter().position(|&p| p == v).map(AgentId::from)
    }
}

/// Builds the five-phase plan for a satisfying assignment:
///
/// 1. variable agents in ascending order walk down to `seq:1` and step onto
///    `T:i` or `F:i` according to the assignment;
/// 2. the remaining sequencer agents shift `n` cells left, one sweep per
///    cell, leftmost agent first;
/// 3. clause agents in descending order leave through a free gate and run
///    along the collector chain to their goals;
/// 4. shadow agents in descending order do the same;
/// 5. variable agents step onto their goals.
///
/// The collector chain is one-way, so agents bound for farther cells must go
/// first in phases 3 and 4.
pub fn plan_from_assignment(
    art: &ReductionArtifact,
    assignment: &[bool],
) -> Result<Plan, ReductionError> {
    let f = &art.formula;
    let n = f.variable_count();
    if assignment.len() != n {
        return Err(ReductionError::WrongLength {
            expected: n,
            got: assignment.len(),
        });
    }
    if !f.satisfied_by(assignment) {
        return Err(ReductionError::Unsatisfying);
    }
    let vm = &art.vertices;
    let inst = &art.instance;
    let mut b = PlanBuilder {
        pos: inst.start_state().0,
        moves: Vec::new(),
    };

    for (i, &value) in assignment.iter().enumerate().take(n) {
        let x = art.agents.variables[i];
        b.walk(x, (1..=i).rev().map(|p| vm.seq(p)));
        let choice = if value {
            vm.choice_true[i]
        } else {
            vm.choice_false[i]
        };
        b.step(x, choice);
    }

    for _ in 0..n {
        for p in 2..=art.sequencer_len() {
            if let Some(agent) = b.occupant(vm.seq(p)) {
                if b.occupant(vm.seq(p - 1)).is_none() {
                    b.step(agent, vm.seq(p - 1));
                }
            }
        }
    }

    for (j, clause) in f.clauses().iter().enumerate().rev() {
        let c = art.agents.clauses[j];
        // Prefer positive literals, then clause order.
        let mut lits = clause.to_vec();
        lits.sort_by_key(|l| !l.positive);
        let lit = lits
            .into_iter()
            .find(|l| l.eval(assignment))
            .expect("clause is satisfied");
        b.step(c, art.literal_gate(lit));
        let chain = vm.shadow_goal.iter().chain(&vm.clause_goal[..=j]).copied();
        b.walk(c, chain);
    }

    for i in (0..n).rev() {
        b.walk(art.agents.shadows[i], vm.shadow_goal[..=i].iter().copied());
    }

    for i in 0..n {
        b.step(art.agents.variables[i], vm.var_goal[i]);
    }

    Ok(Plan::new(b.moves))
}

/// Reads each variable agent's truth choice off a valid plan: `true` if its
/// first visit to `T:i`/`F:i` is `T:i`.
pub fn assignment_from_plan(
    art: &ReductionArtifact,
    p: &Plan,
) -> Result<Vec<bool>, ReductionError> {
    validate_plan(&art.instance, p)?;
    let n = art.formula.variable_count();
    let mut choice = vec![None; n];
    for m in &p.moves {
        if let Some(i) = art.agents.variables.iter().position(|&x| x == m.agent) {
            if choice[i].is_none() {
                if m.to == art.vertices.choice_true[i] {
                    choice[i] = Some(true);
                } else if m.to == art.vertices.choice_false[i] {
                    choice[i] = Some(false);
                }
            }
        }
    }
    let assignment = choice
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or(ReductionError::NonCanonicalPlan(i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    if !art.formula.satisfied_by(&assignment) {
        return Err(ReductionError::ExtractedUnsatisfying);
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::is_dag;
    use crate::mapf::validate_instance;

    fn single() -> Cnf3Formula {
        Cnf3Formula::new(1, vec![[Literal::pos(1); 3]]).unwrap()
    }

    fn arc(art: &ReductionArtifact, u: &str, v: &str) -> bool {
        let d = art.instance.digraph();
        d.has_arc(d.vertex_by_name(u).unwrap(), d.vertex_by_name(v).unwrap())
    }

    fn start_of(art: &ReductionArtifact, agent: &str) -> String {
        let inst = &art.instance;
        inst.digraph()
            .name(inst.start(inst.agent_by_name(agent).unwrap()))
            .to_string()
    }

    #[test]
    fn two_clause_formula_layout() {
        let art = build_reduction(&fixtures::two_clause_formula());
        let inst = &art.instance;
        assert_eq!(inst.digraph().vertex_count(), 25);
        assert_eq!(inst.agent_count(), 14);
        assert_eq!(inst.digraph().arc_count(), 41);
        for (u, v) in [("seq:4", "F:1"), ("seq:4", "F:2"), ("seq:4", "T:3")] {
            assert!(arc(&art, u, v), "{u} -> {v}");
        }
        for (u, v) in [("seq:8", "T:1"), ("seq:8", "F:2"), ("seq:8", "F:3")] {
            assert!(arc(&art, u, v), "{u} -> {v}");
        }
        assert_eq!(inst.digraph().successors(art.vertices.seq(4)).len(), 4);
        assert_eq!(start_of(&art, "c1"), "seq:7");
        assert_eq!(start_of(&art, "c2"), "seq:11");
        assert_eq!(start_of(&art, "f1"), "seq:4");
        assert_eq!(start_of(&art, "f4"), "seq:8");
        assert_eq!(start_of(&art, "xp2"), "vx:2");
        assert_eq!(validate_instance(inst), Ok(()));
        assert!(is_dag(inst.digraph()));
    }

    #[test]
    fn smallest_formula_layout() {
        let art = build_reduction(&single());
        let inst = &art.instance;
        assert_eq!(art.sequencer_len(), 3);
        assert_eq!(inst.digraph().vertex_count(), 8);
        assert_eq!(inst.agent_count(), 4);
        assert_eq!(start_of(&art, "x1"), "seq:1");
        assert_eq!(start_of(&art, "f1"), "seq:2");
        assert_eq!(start_of(&art, "c1"), "seq:3");
        let clause_arcs: Vec<_> = inst.digraph().successors(art.vertices.seq(2)).to_vec();
        assert_eq!(
            clause_arcs,
            vec![art.vertices.seq(1), art.vertices.choice_false[0]]
        );
    }

    #[test]
    fn duplicate_literals_collapse() {
        let f =
            Cnf3Formula::new(2, vec![[Literal::pos(1), Literal::pos(1), Literal::neg(2)]]).unwrap();
        let art = build_reduction(&f);
        // seq:3 -> seq:2 plus the two clause arcs
        assert_eq!(
            art.instance.digraph().successors(art.vertices.seq(3)).len(),
            3
        );
        assert!(arc(&art, "seq:3", "F:1"));
        assert!(arc(&art, "seq:3", "T:2"));
    }

    #[test]
    fn smallest_plan_is_the_hand_trace() {
        let art = build_reduction(&single());
        let plan = plan_from_assignment(&art, &[true]).unwrap();
        let inst = &art.instance;
        let text: Vec<String> = plan
            .moves
            .iter()
            .map(|m| {
                format!(
                    "{}: {}->{}",
                    inst.agent_name(m.agent),
                    inst.digraph().name(m.from),
                    inst.digraph().name(m.to)
                )
            })
            .collect();
        assert_eq!(
            text,
            [
                "x1: seq:1->T:1",
                "f1: seq:2->seq:1",
                "c1: seq:3->seq:2",
                "c1: seq:2->F:1",
                "c1: F:1->vxp:1",
                "c1: vxp:1->vc:1",
                "xp1: vx:1->vxp:1",
                "x1: T:1->vx:1",
            ]
        );
        assert_eq!(validate_plan(inst, &plan), Ok(()));
    }

    #[test]
    fn two_clause_plan_routes_through_f2() {
        let art = build_reduction(&fixtures::two_clause_formula());
        let a = [false, true, false];
        let plan = plan_from_assignment(&art, &a).unwrap();
        assert_eq!(validate_plan(&art.instance, &plan), Ok(()));
        for &c in &art.agents.clauses {
            let gate = plan
                .moves
                .iter()
                .find(|m| m.agent == c && m.to.index() >= art.sequencer_len())
                .unwrap();
            assert_eq!(gate.to, art.vertices.choice_false[1]);
        }
        assert_eq!(assignment_from_plan(&art, &plan).unwrap(), a);
    }

    #[test]
    fn unsatisfying_assignment_is_refused() {
        let art = build_reduction(&fixtures::two_clause_formula());
        // x1 = T, x2 = F, x3 = F falsifies the second clause
        assert_eq!(
            plan_from_assignment(&art, &[true, false, false]),
            Err(ReductionError::Unsatisfying)
        );
        assert_eq!(
            plan_from_assignment(&art, &[true]),
            Err(ReductionError::WrongLength {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn invalid_plan_is_refused() {
        let art = build_reduction(&single());
        assert!(matches!(
            assignment_from_plan(&art, &Plan::default()),
            Err(ReductionError::InvalidPlan(PlanFailure::GoalNotReached))
        ));
    }

    #[test]
    fn sat_examples() {
        assert_eq!(sat_bruteforce(&fixtures::contradiction()).unwrap(), None);
        let f = fixtures::two_clause_formula();
        let w = sat_bruteforce(&f).unwrap().unwrap();
        assert_eq!(w, vec![false, false, false]);
        assert!(f.satisfied_by(&w));
        assert_eq!(
            sat_bruteforce(&Cnf3Formula::new(2, vec![]).unwrap()).unwrap(),
            Some(vec![false, false])
        );
        let big = Cnf3Formula::new(21, vec![]).unwrap();
        assert!(matches!(
            sat_bruteforce(&big),
            Err(SatError::TooManyVariables { .. })
        ));
    }

    #[test]
    fn formula_rejects_out_of_range_literals() {
        assert!(Cnf3Formula::new(1, vec![[Literal::pos(2); 3]]).is_err());
        assert!(Cnf3Formula::new(1, vec![[Literal::pos(0); 3]]).is_err());
    }

    #[test]
    fn zero_clauses_still_reduce() {
        let f = Cnf3Formula::new(2, vec![]).unwrap();
        let art = build_reduction(&f);
        assert_eq!(art.instance.digraph().vertex_count(), 2 + 8);
        let plan = plan_from_assignment(&art, &[true, false]).unwrap();
        assert_eq!(validate_plan(&art.instance, &plan), Ok(()));
    }
}
