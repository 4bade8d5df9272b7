//! Small hand-built instances shared by tests, the CLI and the FFI layer.

use crate::graph::{Digraph, Graph, VertexId};
use crate::mapf::{MapfInstance, Move, Plan};
use crate::reduction::{Cnf3Formula, Literal};

fn named(names: &[&str]) -> Digraph {
    Digraph::with_names(names.iter().map(|s| s.to_string()).collect()).expect("unique names")
}

/// Four grid cells: `v2` borders `v1`, `v3` and `v4`; all passages are
/// two-way. Agent `C` starts on `v1` and wants `v2`; agent `S` starts on
/// `v4` and wants `v3`.
pub fn four_cell_grid() -> MapfInstance {
    let mut d = named(&["v1", "v2", "v3", "v4"]);
    for (a, b) in [(0, 1), (1, 2), (1, 3)] {
        d.add_arc(VertexId(a), VertexId(b)).unwrap();
        d.add_arc(VertexId(b), VertexId(a)).unwrap();
    }
    MapfInstance::new(
        d,
        vec![
            ("C".into(), VertexId(0), VertexId(1)),
            ("S".into(), VertexId(3), VertexId(2)),
        ],
    )
}

/// `S` steps to `v2`, then on to `v3`; afterwards `C` moves to `v2`.
pub fn four_cell_grid_plan(inst: &MapfInstance) -> Plan {
    let c = inst.agent_by_name("C").unwrap();
    let s = inst.agent_by_name("S").unwrap();
    Plan::new(vec![
        Move::new(s, VertexId(3), VertexId(1)),
        Move::new(s, VertexId(1), VertexId(2)),
        Move::new(c, VertexId(0), VertexId(1)),
    ])
}

/// Two-way path `v1 - v2 - v3`; `A` must get from `v1` to `v3` past `B`,
/// who wants `v1`. Unsolvable: agents cannot overtake on a path.
pub fn swap_on_path() -> MapfInstance {
    let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let mut d = named(&["v1", "v2", "v3"]);
    for (u, v) in path.bidirected().arcs() {
        d.add_arc(u, v).unwrap();
    }
    MapfInstance::new(
        d,
        vec![
            ("A".into(), VertexId(0), VertexId(2)),
            ("B".into(), VertexId(1), VertexId(0)),
        ],
    )
}

/// `(x1 ∨ x2 ∨ ¬x3) ∧ (¬x1 ∨ x2 ∨ x3)`
pub fn two_clause_formula() -> Cnf3Formula {
    Cnf3Formula::new(
        3,
        vec![
            [Literal::pos(1), Literal::pos(2), Literal::neg(3)],
            [Literal::neg(1), Literal::pos(2), Literal::pos(3)],
        ],
    )
    .unwrap()
}

/// `(x1 ∨ x1 ∨ x1) ∧ (¬x1 ∨ ¬x1 ∨ ¬x1)`
pub fn contradiction() -> Cnf3Formula {
    Cnf3Formula::new(1, vec![[Literal::pos(1); 3], [Literal::neg(1); 3]]).unwrap()
}
