#![allow(dead_code)]

use std::collections::HashMap;

use dimapf::graph::{Digraph, VertexId};
use dimapf::mapf::MapfInstance;

/// Shortest move count from start to goal, computed without the solver: list
/// every injective placement up front, then relax distances over all legal
/// moves until nothing changes. `None` when the goal is unreachable.
pub fn naive_shortest(inst: &MapfInstance) -> Option<usize> {
    let d = inst.digraph();
    let n = d.vertex_count();
    let k = inst.agent_count();
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &all {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        all = next;
    }
    let index: HashMap<Vec<usize>, usize> = all
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let start: Vec<usize> = inst.agents().map(|a| inst.start(a).index()).collect();
    let goal: Vec<usize> = inst.agents().map(|a| inst.goal(a).index()).collect();
    let mut dist = vec![usize::MAX; all.len()];
    dist[index[&start]] = 0;
    loop {
        let mut changed = false;
        for (i, p) in all.iter().enumerate() {
            if dist[i] == usize::MAX {
                continue;
            }
            for a in 0..k {
                for v in 0..n {
                    if p.contains(&v) || !d.has_arc(VertexId::from(p[a]), VertexId::from(v)) {
                        continue;
                    }
                    let mut q = p.clone();
                    q[a] = v;
                    let j = index[&q];
                    if dist[i] + 1 < dist[j] {
                        dist[j] = dist[i] + 1;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let g = dist[index[&goal]];
    (g != usize::MAX).then_some(g)
}

/// All `n(n-1)` possible arcs of a simple digraph on `n` vertices.
pub fn all_arcs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect()
}

pub fn digraph_from_mask(n: usize, mask: u64) -> Digraph {
    let arcs = all_arcs(n);
    Digraph::from_arcs(
        n,
        arcs.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a),
    )
    .unwrap()
}

/// Injective placements of `k` agents on `n` vertices.
pub fn placements(n: usize, k: usize) -> Vec<Vec<VertexId>> {
    let mut all: Vec<Vec<VertexId>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &all {
            for v in (0..n).map(VertexId::from).filter(|v| !p.contains(v)) {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        all = next;
    }
    all
}

/// Pairwise reachability (Warshall closure).
pub fn reachability(d: &Digraph) -> Vec<Vec<bool>> {
    let n = d.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for (u, v) in d.arcs() {
        r[u.index()][v.index()] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}
