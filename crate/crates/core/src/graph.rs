//! Simple directed and undirected graphs plus the structural analyses used
//! throughout the crate: strongly connected components, condensation,
//! acyclicity and (strong) biconnectivity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense vertex identifier. Ids run from `0` to `vertex_count - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(VertexId, VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {0} is not declared")]
    UnknownVertex(VertexId),
    #[error("vertex name `{0}` is used twice")]
    DuplicateName(String),
}

/// A simple digraph: no self-loops, no parallel arcs.
///
/// Every vertex carries a name; vertices created without one are named
/// `v<id>`. Names only matter for presentation and serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
    arc_count: usize,
}

impl Digraph {
    /// A digraph with `n` vertices named `v0..v{n-1}` and no arcs.
    pub fn new(n: usize) -> Self {
        Self::with_names((0..n).map(|i| format!("v{i}")).collect())
            .expect("generated names are unique")
    }

    pub fn with_names(names: Vec<String>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(GraphError::DuplicateName(name.clone()));
            }
        }
        let n = names.len();
        Ok(Digraph {
            names,
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            arc_count: 0,
        })
    }

    /// Builds a digraph on `n` default-named vertices from an arc list.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            d.add_arc(VertexId::from(u), VertexId::from(v))?;
        }
        Ok(d)
    }

    pub fn add_arc(&mut self, from: VertexId, to: VertexId) -> Result<(), GraphError> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Err(GraphError::SelfLoop(from));
        }
        let succ = &mut self.out[from.index()];
        match succ.binary_search(&to) {
            Ok(_) => Err(GraphError::DuplicateArc(from, to)),
            Err(pos) => {
                succ.insert(pos, to);
                let pred = &mut self.inc[to.index()];
                let pos = pred.binary_search(&from).unwrap_err();
                pred.insert(pos, from);
                self.arc_count += 1;
                Ok(())
            }
        }
    }

    /// Adds the arc unless it is already present. Self-loops are still errors.
    pub fn ensure_arc(&mut self, from: VertexId, to: VertexId) -> Result<bool, GraphError> {
        match self.add_arc(from, to) {
            Ok(()) => Ok(true),
            Err(GraphError::DuplicateArc(..)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() < self.names.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId::from)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.names.len()
    }

    /// Out-neighbours in ascending id order.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v.index()]
    }

    /// In-neighbours in ascending id order.
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.inc[v.index()]
    }

    pub fn has_arc(&self, from: VertexId, to: VertexId) -> bool {
        self.contains(from) && self.out[from.index()].binary_search(&to).is_ok()
    }

    /// All arcs, sorted lexicographically.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out[u.index()].iter().map(move |&v| (u, v)))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(VertexId::from)
    }

    /// The digraph with every arc mirrored.
    pub fn bidirected(&self) -> Digraph {
        let mut d = Digraph {
            names: self.names.clone(),
            out: vec![Vec::new(); self.vertex_count()],
            inc: vec![Vec::new(); self.vertex_count()],
            arc_count: 0,
        };
        for (u, v) in self.arcs() {
            d.ensure_arc(u, v).expect("valid arc");
            d.ensure_arc(v, u).expect("valid arc");
        }
        d
    }
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(VertexId::from(u), VertexId::from(v))?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for w in [u, v] {
            if w.index() >= self.adj.len() {
                return Err(GraphError::UnknownVertex(w));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let nu = &mut self.adj[u.index()];
        match nu.binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                nu.insert(pos, v);
                let nv = &mut self.adj[v.index()];
                let pos = nv.binary_search(&u).unwrap_err();
                nv.insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.index()]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u.index() < self.adj.len() && self.adj[u.index()].binary_search(&v).is_ok()
    }

    /// Edges as `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = VertexId::from(u);
            nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// The digraph with both orientations of every edge.
    pub fn bidirected(&self) -> Digraph {
        let mut d = Digraph::new(self.vertex_count());
        for (u, v) in self.edges() {
            d.add_arc(u, v).expect("simple graph");
            d.add_arc(v, u).expect("simple graph");
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    reached += 1;
                    queue.push_back(v.index());
                }
            }
        }
        reached == n
    }
}

/// Partition of a digraph's vertices into strongly connected components.
///
/// Components are sorted internally and ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    components: Vec<Vec<VertexId>>,
    component_of: Vec<usize>,
}

impl SccPartition {
    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v.index()]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn all_singletons(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }
}

pub fn underlying_graph(d: &Digraph) -> Graph {
    let mut g = Graph::new(d.vertex_count());
    for (u, v) in d.arcs() {
        if !g.has_edge(u, v) {
            g.add_edge(u, v).expect("digraph is simple");
        }
    }
    g
}

/// Tarjan's algorithm, iterative so deep chains cannot overflow the stack.
pub fn strongly_connected_components(d: &Digraph) -> SccPartition {
    const UNVISITED: usize = usize::MAX;
    let n = d.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut raw: Vec<Vec<VertexId>> = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            let succ = d.successors(VertexId::from(u));
            if *pos < succ.len() {
                let v = succ[*pos].index();
                *pos += 1;
                if index[v] == UNVISITED {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(VertexId::from(w));
                    if w == u {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_unstable_by_key(|c| c[0]);
    let mut component_of = vec![0; n];
    for (ci, comp) in raw.iter().enumerate() {
        for v in comp {
            component_of[v.index()] = ci;
        }
    }
    SccPartition {
        components: raw,
        component_of,
    }
}

/// The condensation: vertex `i` stands for component `i` of
/// [`strongly_connected_components`]; vertex names are `scc<i>`.
pub fn condensation(d: &Digraph) -> Digraph {
    let scc = strongly_connected_components(d);
    condensation_of(d, &scc)
}

pub fn condensation_of(d: &Digraph, scc: &SccPartition) -> Digraph {
    let names = (0..scc.len()).map(|i| format!("scc{i}")).collect();
    let mut c = Digraph::with_names(names).expect("generated names are unique");
    for (u, v) in d.arcs() {
        let (cu, cv) = (scc.component_of(u), scc.component_of(v));
        if cu != cv {
            c.ensure_arc(VertexId::from(cu), VertexId::from(cv))
                .expect("valid arc");
        }
    }
    c
}

/// Kahn's algorithm: acyclic iff every vertex can be peeled off.
pub fn is_dag(d: &Digraph) -> bool {
    let n = d.vertex_count();
    let mut indeg: Vec<usize> = d.vertices().map(|v| d.predecessors(v).len()).collect();
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = ready.pop() {
        removed += 1;
        for &v in d.successors(VertexId::from(u)) {
            indeg[v.index()] -= 1;
            if indeg[v.index()] == 0 {
                ready.push(v.index());
            }
        }
    }
    removed == n
}

/// A non-empty digraph is strongly connected iff it has exactly one SCC.
pub fn is_strongly_connected(d: &Digraph) -> bool {
    d.vertex_count() > 0 && strongly_connected_components(d).len() == 1
}

/// Vertices whose removal disconnects their connected component.
pub fn articulation_points(g: &Graph) -> Vec<VertexId> {
    const UNVISITED: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    // (vertex, parent, next neighbour position)
    let mut call: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNVISITED {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        call.push((root, UNVISITED, 0));
        while let Some(&mut (u, parent, ref mut pos)) = call.last_mut() {
            let nbrs = g.neighbors(VertexId::from(u));
            if *pos < nbrs.len() {
                let v = nbrs[*pos].index();
                *pos += 1;
                if disc[v] == UNVISITED {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    call.push((v, u, 0));
                } else if v != parent {
                    low[u] = low[u].min(disc[v]);
                }
                continue;
            }
            call.pop();
            if parent != UNVISITED {
                low[parent] = low[parent].min(low[u]);
                if parent != root && low[u] >= disc[parent] {
                    is_cut[parent] = true;
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).map(VertexId::from).collect()
}

/// Connected with no cut vertex. Graphs with at most two vertices are
/// biconnected exactly when they are connected.
pub fn is_biconnected(g: &Graph) -> bool {
    g.is_connected() && articulation_points(g).is_empty()
}

pub fn is_strongly_biconnected(d: &Digraph) -> bool {
    is_strongly_connected(d) && is_biconnected(&underlying_graph(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId::from).collect()
    }

    #[test]
    fn symmetric_pair_collapses_to_one_edge() {
        let d = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let g = underlying_graph(&d);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(VertexId(1), VertexId(0)));
    }

    #[test]
    fn arcless_digraph_has_isolated_vertices() {
        let g = underlying_graph(&Digraph::new(3));
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 0));
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        let mut d = Digraph::new(2);
        assert_eq!(
            d.add_arc(VertexId(0), VertexId(0)),
            Err(GraphError::SelfLoop(VertexId(0)))
        );
        d.add_arc(VertexId(0), VertexId(1)).unwrap();
        assert!(matches!(
            d.add_arc(VertexId(0), VertexId(1)),
            Err(GraphError::DuplicateArc(..))
        ));
        assert!(matches!(
            d.add_arc(VertexId(0), VertexId(5)),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(Digraph::with_names(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn scc_examples() {
        let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            strongly_connected_components(&two_cycle).components(),
            &[ids(&[0, 1])]
        );

        // a <- b <- c
        let chain = Digraph::from_arcs(3, [(1, 0), (2, 1)]).unwrap();
        let scc = strongly_connected_components(&chain);
        assert_eq!(scc.components(), &[ids(&[0]), ids(&[1]), ids(&[2])]);
        assert!(scc.all_singletons());
    }

    #[test]
    fn condensation_examples() {
        let cyc = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = condensation(&cyc);
        assert_eq!((c.vertex_count(), c.arc_count()), (1, 0));

        let dag = Digraph::from_arcs(4, [(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        let c = condensation(&dag);
        let arcs: Vec<_> = c.arcs().collect();
        assert_eq!(arcs, dag.arcs().collect::<Vec<_>>());

        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        let c = condensation(&d);
        assert_eq!((c.vertex_count(), c.arc_count()), (2, 1));
        assert!(c.has_arc(VertexId(0), VertexId(1)));
    }

    #[test]
    fn dag_examples() {
        assert!(is_dag(&Digraph::new(0)));
        assert!(!is_dag(&Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()));
        assert!(is_dag(
            &Digraph::from_arcs(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
        ));
    }

    #[test]
    fn biconnectivity_examples() {
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_biconnected(&triangle));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!is_biconnected(&path));
        assert_eq!(articulation_points(&path), ids(&[1]));
        // the 4-cell grid: v2 touches v1, v3 and v4
        let grid = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(!is_biconnected(&grid));
        assert_eq!(articulation_points(&grid), ids(&[1]));
    }

    #[test]
    fn small_biconnectivity_edge_cases() {
        assert!(is_biconnected(&Graph::new(1)));
        assert!(is_biconnected(&Graph::from_edges(2, [(0, 1)]).unwrap()));
        assert!(!is_biconnected(&Graph::new(2)));
        assert!(is_strongly_biconnected(&Digraph::new(1)));
        assert!(!is_strongly_biconnected(&Digraph::new(0)));
    }

    #[test]
    fn strong_biconnectivity_examples() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .bidirected();
        assert!(is_strongly_biconnected(&tri));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap().bidirected();
        assert!(!is_strongly_biconnected(&path));
        let cycle = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(is_strongly_connected(&cycle));
        assert!(is_biconnected(&underlying_graph(&cycle)));
        assert!(is_strongly_biconnected(&cycle));
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let d = Digraph::from_arcs(n, (1..n).map(|i| (i, i - 1))).unwrap();
        assert_eq!(strongly_connected_components(&d).len(), n);
        let g = underlying_graph(&d);
        assert_eq!(articulation_points(&g).len(), n - 2);
    }
}
