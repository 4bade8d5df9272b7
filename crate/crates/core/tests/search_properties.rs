mod common;

use proptest::prelude::*;

use dimapf::graph::{Digraph, VertexId};
use dimapf::mapf::{
    apply_move, legal_moves, replay_plan, validate_plan, AgentId, MapfInstance, Move, Plan, State,
};
use dimapf::solver::{decompose_plan_events, solve_bfs, Outcome};

use common::{all_arcs, naive_shortest};

prop_compose! {
    fn arb_instance(max_n: usize, max_agents: usize)
        (n in 2..=max_n)
        (bits in proptest::collection::vec(any::<bool>(), n * (n - 1)),
         k in 1..=max_agents.min(n),
         start in Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
         goal in Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
         n in Just(n))
        -> MapfInstance
    {
        let arcs = all_arcs(n).into_iter().zip(bits).filter(|(_, b)| *b).map(|(a, _)| a);
        let d = Digraph::from_arcs(n, arcs).unwrap();
        let pick = |p: &[usize]| p[..k].iter().copied().map(VertexId::from).collect();
        MapfInstance::from_placements(d, pick(&start), pick(&goal))
    }
}

fn injective(s: &State) -> bool {
    let mut v: Vec<_> = s.positions().to_vec();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

/// A random legal walk from the start state.
fn walk(inst: &MapfInstance, choices: &[usize]) -> (Vec<Move>, State) {
    let mut s = inst.start_state();
    let mut moves = Vec::new();
    for &c in choices {
        let legal = legal_moves(inst, &s).unwrap();
        if legal.is_empty() {
            break;
        }
        let m = legal[c % legal.len()];
        s = apply_move(inst, &s, m).unwrap();
        moves.push(m);
    }
    (moves, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn legal_walks_preserve_injectivity(inst in arb_instance(7, 4), choices in proptest::collection::vec(any::<usize>(), 0..40)) {
        let mut s = inst.start_state();
        for &c in &choices {
            let legal = legal_moves(&inst, &s).unwrap();
            for &m in &legal {
                let next = apply_move(&inst, &s, m).unwrap();
                prop_assert!(injective(&next));
                let changed = inst.agents().filter(|&a| next.position(a) != s.position(a)).count();
                prop_assert_eq!(changed, 1);
                prop_assert_eq!(next.position(m.agent), m.to);
            }
            if legal.is_empty() {
                break;
            }
            s = apply_move(&inst, &s, legal[c % legal.len()]).unwrap();
        }
    }

    #[test]
    fn validate_plan_agrees_with_replay(
        inst in arb_instance(6, 3),
        choices in proptest::collection::vec(any::<usize>(), 0..12),
        junk in proptest::collection::vec((0u32..3, 0u32..6, 0u32..6), 0..3),
        junk_at in any::<usize>(),
    ) {
        let (mut moves, _) = walk(&inst, &choices);
        for (i, &(a, u, v)) in junk.iter().enumerate() {
            let pos = (junk_at + i) % (moves.len() + 1);
            moves.insert(pos, Move::new(AgentId(a), VertexId(u), VertexId(v)));
        }
        // drop junk that names agents or vertices outside the instance
        moves.retain(|m| m.agent.index() < inst.agent_count()
            && m.from.index() < inst.digraph().vertex_count()
            && m.to.index() < inst.digraph().vertex_count());
        let plan = Plan::new(moves);
        let direct = validate_plan(&inst, &plan);
        let folded = replay_plan(&inst, &plan);
        match &folded {
            Ok(end) if *end == inst.goal_state() => prop_assert_eq!(direct, Ok(())),
            Ok(_) => prop_assert_eq!(direct, Err(dimapf::mapf::PlanFailure::GoalNotReached)),
            Err(e) => prop_assert_eq!(direct.unwrap_err().index(), e.index()),
        }
    }

    #[test]
    fn solver_matches_naive_oracle(inst in arb_instance(5, 3)) {
        let res = solve_bfs(&inst, None).unwrap();
        let expected = naive_shortest(&inst);
        match &res.outcome {
            Outcome::Solvable(plan) => {
                prop_assert_eq!(validate_plan(&inst, plan), Ok(()));
                prop_assert_eq!(Some(plan.len()), expected);
            }
            Outcome::Unsolvable => prop_assert_eq!(expected, None),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
        let again = solve_bfs(&inst, None).unwrap();
        prop_assert_eq!(&again.outcome, &res.outcome);
        prop_assert_eq!(again.stats.counts(), res.stats.counts());
    }

    #[test]
    fn event_bound_holds_for_random_valid_plans(inst in arb_instance(7, 4), choices in proptest::collection::vec(any::<usize>(), 0..30)) {
        let (prefix, reached) = walk(&inst, &choices);
        let rest = MapfInstance::from_placements(inst.digraph().clone(), reached.0.clone(), inst.goal_state().0);
        if let Outcome::Solvable(tail) = solve_bfs(&rest, None).unwrap().outcome {
            let plan = Plan::new(prefix.into_iter().chain(tail.moves).collect());
            prop_assert_eq!(validate_plan(&inst, &plan), Ok(()));
            let trace = decompose_plan_events(&inst, &plan).unwrap();
            for comp in &trace.components {
                prop_assert!(comp.events.len() <= 2 * inst.agent_count());
            }
            let settles = trace.components.iter().flat_map(|c| &c.events)
                .filter(|e| e.kind == dimapf::solver::EventKind::Settle).count();
            let movers = inst.agents().filter(|a| plan.moves.iter().any(|m| m.agent == *a)).count();
            prop_assert_eq!(settles, movers);
        }
    }
}

#[test]
fn dag_bound_search_agrees_with_unbounded_search() {
    use dimapf::graph::is_dag;
    use dimapf::solver::dag_move_bound;
    let mut checked = 0;
    for mask in 0..1u64 << 12 {
        let d = common::digraph_from_mask(4, mask);
        if !is_dag(&d) {
            continue;
        }
        for start in common::placements(4, 2) {
            for goal in common::placements(4, 2) {
                let inst = MapfInstance::from_placements(d.clone(), start.clone(), goal.clone());
                let bound = dag_move_bound(&inst).unwrap();
                let free = solve_bfs(&inst, None).unwrap();
                let bounded = solve_bfs(&inst, Some(bound)).unwrap();
                assert_eq!(free.outcome, bounded.outcome);
                if let Some(p) = free.plan() {
                    assert!(p.len() <= bound);
                }
                checked += 1;
            }
        }
    }
    // 543 labelled DAGs on 4 vertices, 144 placement pairs each
    assert_eq!(checked, 543 * 144);
}
