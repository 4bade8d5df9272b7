use std::hash::{BuildHasher, BuildHasherDefault};
use std::time::Instant;

use hashbrown::HashTable;
use rustc_hash::FxHasher;

use super::{LimitKind, Outcome, SearchResult, SearchStats, SolveError, SolveOptions};
use crate::graph::VertexId;
use crate::mapf::{validate_instance, AgentId, InvalidInstance, MapfInstance, Move, Plan};

type Vertex = u16;

const NO_PARENT: u32 = u32::MAX;

/// Closed set of canonical states. States are fixed-width vertex tuples in
/// agent order, stored back to back in `arena`; the hash table holds indices
/// into it. Insertion order is BFS order, so the arena doubles as the queue.
struct StateStore {
    width: usize,
    arena: Vec<Vertex>,
    parent: Vec<u32>,
    via: Vec<(u32, Vertex)>,
    table: HashTable<u32>,
    hasher: BuildHasherDefault<FxHasher>,
}

impl StateStore {
    fn new(width: usize) -> Self {
        StateStore {
            width,
            arena: Vec::new(),
            parent: Vec::new(),
            via: Vec::new(),
            table: HashTable::new(),
            hasher: BuildHasherDefault::default(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, idx: usize) -> &[Vertex] {
        &self.arena[idx * self.width..(idx + 1) * self.width]
    }

    fn contains(&self, state: &[Vertex]) -> bool {
        let hash = self.hasher.hash_one(state);
        let (arena, w) = (&self.arena, self.width);
        self.table
            .find(hash, |&i| {
                &arena[i as usize * w..(i as usize + 1) * w] == state
            })
            .is_some()
    }

    /// Returns false when the state was already stored.
    fn insert(&mut self, state: &[Vertex], parent: u32, via: (u32, Vertex)) -> bool {
        let hash = self.hasher.hash_one(state);
        let (arena, w, hasher) = (&self.arena, self.width, &self.hasher);
        let entry = self.table.entry(
            hash,
            |&i| &arena[i as usize * w..(i as usize + 1) * w] == state,
            |&i| hasher.hash_one(&arena[i as usize * w..(i as usize + 1) * w]),
        );
        match entry {
            hashbrown::hash_table::Entry::Occupied(_) => false,
            hashbrown::hash_table::Entry::Vacant(slot) => {
                let idx = self.parent.len() as u32;
                slot.insert(idx);
                self.arena.extend_from_slice(state);
                self.parent.push(parent);
                self.via.push(via);
                true
            }
        }
    }

    fn plan_to(&self, mut idx: usize) -> Plan {
        let mut moves = Vec::new();
        while self.parent[idx] != NO_PARENT {
            let p = self.parent[idx] as usize;
            let (agent, to) = self.via[idx];
            let from = self.get(p)[agent as usize];
            moves.push(Move::new(
                AgentId(agent),
                VertexId(from as u32),
                VertexId(to as u32),
            ));
            idx = p;
        }
        moves.reverse();
        Plan::new(moves)
    }
}

pub fn solve_bfs(
    inst: &MapfInstance,
    depth_bound: Option<usize>,
) -> Result<SearchResult, SolveError> {
    solve_bfs_with(
        inst,
        &SolveOptions {
            depth_bound,
            ..Default::default()
        },
    )
}

/// Breadth-first search over canonical states with a closed set.
///
/// Successors are generated in [`legal_moves`](crate::mapf::legal_moves)
/// order and the goal is tested on generation, so the first plan found is a
/// shortest one and the search is fully deterministic. A successor in which
/// the moved agent can no longer reach its goal vertex at all is discarded;
/// no goal state is reachable from it, so verdicts and plan lengths are
/// unaffected.
pub fn solve_bfs_with(
    inst: &MapfInstance,
    opts: &SolveOptions,
) -> Result<SearchResult, SolveError> {
    validate_instance(inst).map_err(|v| SolveError::InvalidInstance(InvalidInstance(v)))?;
    let clock = Instant::now();
    let d = inst.digraph();
    let n = d.vertex_count();
    if n > Vertex::MAX as usize {
        return Err(SolveError::TooManyVertices(n));
    }
    let width = inst.agent_count();
    let start: Vec<Vertex> = inst.start_state().0.iter().map(|v| v.0 as Vertex).collect();
    let goal: Vec<Vertex> = inst.goal_state().0.iter().map(|v| v.0 as Vertex).collect();
    let succ: Vec<Vec<Vertex>> = d
        .vertices()
        .map(|v| d.successors(v).iter().map(|w| w.0 as Vertex).collect())
        .collect();

    // live[a][v]: agent a standing on v can still reach its goal.
    let live: Vec<Vec<bool>> = inst.agents().map(|a| reaches(d, inst.goal(a))).collect();

    let mut stats = SearchStats::default();
    let finish = |outcome, mut stats: SearchStats| {
        stats.elapsed = clock.elapsed();
        Ok(SearchResult { outcome, stats })
    };
    if start == goal {
        stats.states_stored = 1;
        return finish(Outcome::Solvable(Plan::default()), stats);
    }

    if (0..width).any(|a| !live[a][start[a] as usize]) {
        return finish(Outcome::Unsolvable, stats);
    }

    let mut store = StateStore::new(width);
    store.insert(&start, NO_PARENT, (0, 0));
    let mut occupied = vec![false; n];
    let mut scratch: Vec<Vertex> = vec![0; width];

    let mut depth = 0usize;
    let mut layer_start = 0usize;
    let mut layer_end = store.len();
    loop {
        if layer_start == layer_end {
            stats.states_stored = store.len() as u64;
            return finish(Outcome::Unsolvable, stats);
        }
        let at_bound = opts.depth_bound.is_some_and(|b| depth >= b);
        for idx in layer_start..layer_end {
            if stats.states_expanded % 1024 == 0 {
                if let Some(limit) = opts.limits.time_limit {
                    if clock.elapsed() > limit {
                        stats.states_stored = store.len() as u64;
                        stats.elapsed = clock.elapsed();
                        return Err(SolveError::ResourceLimit {
                            limit: LimitKind::Time(limit),
                            stats,
                        });
                    }
                }
            }
            scratch.copy_from_slice(store.get(idx));
            for &v in &scratch {
                occupied[v as usize] = true;
            }
            if at_bound {
                // Only decide whether anything lies beyond the bound.
                let mut beyond = false;
                'agents: for a in 0..width {
                    let u = scratch[a];
                    for &v in &succ[u as usize] {
                        if !occupied[v as usize] && live[a][v as usize] {
                            scratch[a] = v;
                            let unseen = !store.contains(&scratch);
                            scratch[a] = u;
                            if unseen {
                                beyond = true;
                                break 'agents;
                            }
                        }
                    }
                }
                for &v in &scratch {
                    occupied[v as usize] = false;
                }
                if beyond {
                    stats.states_stored = store.len() as u64;
                    return finish(Outcome::BoundExhausted { depth }, stats);
                }
                continue;
            }
            stats.states_expanded += 1;
            for a in 0..width {
                let u = scratch[a];
                for &v in &succ[u as usize] {
                    if occupied[v as usize] {
                        continue;
                    }
                    stats.states_generated += 1;
                    if !live[a][v as usize] {
                        stats.states_pruned += 1;
                        continue;
                    }
                    scratch[a] = v;
                    let fresh = store.insert(&scratch, idx as u32, (a as u32, v));
                    let is_goal = fresh && scratch == goal;
                    scratch[a] = u;
                    if is_goal {
                        stats.states_stored = store.len() as u64;
                        let plan = store.plan_to(store.len() - 1);
                        return finish(Outcome::Solvable(plan), stats);
                    }
                    if fresh {
                        if let Some(max) = opts.limits.max_states {
                            if store.len() > max {
                                stats.states_stored = store.len() as u64;
                                stats.elapsed = clock.elapsed();
                                return Err(SolveError::ResourceLimit {
                                    limit: LimitKind::States(max),
                                    stats,
                                });
                            }
                        }
                    }
                }
            }
            for &v in &scratch {
                occupied[v as usize] = false;
            }
            let pending = (store.len() - idx - 1) as u64;
            stats.peak_frontier = stats.peak_frontier.max(pending);
        }
        if at_bound {
            stats.states_stored = store.len() as u64;
            return finish(Outcome::Unsolvable, stats);
        }
        depth += 1;
        layer_start = layer_end;
        layer_end = store.len();
    }
}

/// Vertices from which `target` is reachable.
fn reaches(d: &crate::graph::Digraph, target: VertexId) -> Vec<bool> {
    let mut seen = vec![false; d.vertex_count()];
    seen[target.index()] = true;
    let mut stack = vec![target];
    while let Some(v) = stack.pop() {
        for &u in d.predecessors(v) {
            if !seen[u.index()] {
                seen[u.index()] = true;
                stack.push(u);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Digraph;
    use crate::mapf::validate_plan;
    use crate::solver::SearchLimits;

    #[test]
    fn four_cell_grid_needs_three_moves() {
        let inst = fixtures::four_cell_grid();
        let res = solve_bfs(&inst, None).unwrap();
        let plan = res.plan().expect("solvable");
        assert_eq!(plan.len(), 3);
        assert_eq!(validate_plan(&inst, plan), Ok(()));
    }

    #[test]
    fn start_equal_to_goal_is_trivially_solvable() {
        let d = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let inst = MapfInstance::from_placements(d, vec![VertexId(1)], vec![VertexId(1)]);
        let res = solve_bfs(&inst, Some(0)).unwrap();
        assert_eq!(res.outcome, Outcome::Solvable(Plan::default()));
    }

    #[test]
    fn agents_cannot_overtake_on_a_path() {
        let res = solve_bfs(&fixtures::swap_on_path(), None).unwrap();
        assert_eq!(res.outcome, Outcome::Unsolvable);
        // (A,B) placements: (v1,v2), (v1,v3), (v2,v3)
        assert_eq!(res.stats.states_stored, 3);
    }

    #[test]
    fn depth_bound_is_respected() {
        let inst = fixtures::four_cell_grid();
        let res = solve_bfs(&inst, Some(2)).unwrap();
        assert_eq!(res.outcome, Outcome::BoundExhausted { depth: 2 });
        assert!(solve_bfs(&inst, Some(3)).unwrap().is_solvable());
        // exhausted within the bound: a real Unsolvable, not BoundExhausted
        let res = solve_bfs(&fixtures::swap_on_path(), Some(50)).unwrap();
        assert_eq!(res.outcome, Outcome::Unsolvable);
    }

    #[test]
    fn state_ceiling_is_a_distinct_error() {
        let inst = fixtures::swap_on_path();
        let opts = SolveOptions {
            depth_bound: None,
            limits: SearchLimits {
                max_states: Some(2),
                time_limit: None,
            },
        };
        assert!(matches!(
            solve_bfs_with(&inst, &opts),
            Err(SolveError::ResourceLimit {
                limit: LimitKind::States(2),
                ..
            })
        ));
    }

    #[test]
    fn invalid_instances_are_refused() {
        let inst = MapfInstance::from_placements(
            Digraph::new(1),
            vec![VertexId(0), VertexId(0)],
            vec![VertexId(0), VertexId(0)],
        );
        assert!(matches!(
            solve_bfs(&inst, None),
            Err(SolveError::InvalidInstance(_))
        ));
    }

    #[test]
    fn results_are_deterministic() {
        let inst = fixtures::four_cell_grid();
        let a = solve_bfs(&inst, None).unwrap();
        let b = solve_bfs(&inst, None).unwrap();
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.stats.counts(), b.stats.counts());
    }
}
