//! Exact star-partition solver based on augmenting depth-first searches.
//!
//! The solver keeps a partial coloring and lowers the target `x` one step at
//! a time, starting from the maximum degree. For every node whose demand
//! `l(v, x)` exceeds one it repeatedly searches for an uncolored edge that is
//! reachable by walking from a node to the owners of its incident edges. When
//! one is found, every edge on the walk is handed back to its predecessor, so
//! only the root gains an owned edge. The first failed search proves `x` is
//! unattainable and the previous target is optimal.
//!
//! Works on simple graphs and linear hypergraphs directly. Self-loops are
//! pre-owned by their node; multigraphs go through [`preprocess_and_solve`].

use crate::coloring::{demand, Objective, PartialColoring, SolveError, SolveResult};
use crate::graph::{self, Graph, GraphKind, NodeId};

/// Counters collected during a solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DfsStats {
    /// Number of top-level searches started.
    pub searches: u64,
    /// Incidence entries inspected, summed over all searches.
    pub edge_visits: u64,
    /// Largest number of incidence entries inspected by a single search.
    pub max_search_visits: u64,
    /// Successful searches that changed the owned count of a node other than
    /// the root. Only counted with invariant checks on; always 0 when correct.
    pub invariant_violations: u64,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    node: NodeId,
    cursor: usize,
    /// Edge through which this node was reached (owned by this node).
    via: Option<usize>,
}

/// Partial coloring plus the bookkeeping needed by the searches.
#[derive(Debug, Clone)]
pub struct SearchState<'g> {
    graph: &'g Graph,
    coloring: PartialColoring,
    /// Incident edges owned by each node.
    owned: Vec<usize>,
    /// Uncolored incident edges at each node.
    uncolored: Vec<usize>,
    /// `visited[v] == epoch` marks membership in the current search's visited set.
    visited: Vec<u32>,
    epoch: u32,
    stack: Vec<Frame>,
    path: Vec<(NodeId, usize, NodeId)>,
    stats: DfsStats,
    check_invariants: bool,
}

impl<'g> SearchState<'g> {
    /// Empty coloring; self-loops start out owned by their node.
    pub fn new(graph: &'g Graph) -> Result<Self, SolveError> {
        Self::from_partial(graph, PartialColoring::uncolored(graph.edge_count()))
    }

    /// Starts from an existing partial coloring.
    pub fn from_partial(graph: &'g Graph, mut coloring: PartialColoring) -> Result<Self, SolveError> {
        if graph.kind() == GraphKind::Multi {
            return Err(SolveError::UnsupportedKind {
                kind: graph.kind(),
                solver: "dfs",
            });
        }
        for e in 0..coloring.len().min(graph.edge_count()) {
            if graph.is_self_loop(e) && coloring.owner(e).is_none() {
                coloring.set_owner(e, graph.edge(e)[0]);
            }
        }
        coloring.check_against(graph)?;
        let mut owned = vec![0; graph.node_count()];
        let mut uncolored = vec![0; graph.node_count()];
        for (e, nodes) in graph.edges().iter().enumerate() {
            match coloring.owner(e) {
                Some(o) => owned[o.0] += 1,
                None => nodes.iter().for_each(|v| uncolored[v.0] += 1),
            }
        }
        Ok(SearchState {
            graph,
            coloring,
            owned,
            uncolored,
            visited: vec![0; graph.node_count()],
            epoch: 0,
            stack: Vec::new(),
            path: Vec::new(),
            stats: DfsStats::default(),
            check_invariants: false,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn coloring(&self) -> &PartialColoring {
        &self.coloring
    }

    /// Number of incident edges currently owned by `v`.
    pub fn owned(&self, v: NodeId) -> usize {
        self.owned[v.0]
    }

    pub fn stats(&self) -> DfsStats {
        self.stats
    }

    /// Recounts owned edges after every successful search and records any
    /// change at a node other than the root. Costs O(|V| + |E|) per search.
    pub fn set_invariant_checks(&mut self, on: bool) {
        self.check_invariants = on;
    }

    fn demand(&self, v: NodeId, x: usize) -> usize {
        demand(self.graph.degree(v), self.graph.capacity(v), x)
    }

    /// True if every node with demand above one at target `x` owns at least
    /// that many incident edges, so every completion sees at most `x` colors.
    pub fn is_satisfying(&self, x: usize) -> bool {
        self.graph.nodes().all(|v| {
            let l = self.demand(v, x);
            l <= 1 || self.owned[v.0] >= l
        })
    }

    fn new_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.visited.fill(0);
            self.epoch = 1;
        }
    }

    /// Tries to give `root` one more edge without changing how many edges any
    /// other node owns. Returns false if no uncolored edge is reachable.
    pub fn color_one_edge(&mut self, root: NodeId) -> bool {
        self.new_epoch();
        self.stats.searches += 1;
        let mut visits = 0u64;
        self.visited[root.0] = self.epoch;
        self.stack.clear();
        self.stack.push(Frame {
            node: root,
            cursor: 0,
            via: None,
        });

        let found = 'search: loop {
            let Some(top) = self.stack.last().copied() else {
                break 'search None;
            };
            let u = top.node;
            let incident = self.graph.incident(u);
            if top.cursor == 0 && self.uncolored[u.0] > 0 {
                for &e in incident {
                    visits += 1;
                    if self.coloring.owner(e).is_none() {
                        break 'search Some(e);
                    }
                }
                unreachable!("uncolored counter out of sync at node {u}");
            }
            let mut cursor = top.cursor;
            let mut next = None;
            while cursor < incident.len() {
                let e = incident[cursor];
                cursor += 1;
                visits += 1;
                if let Some(o) = self.coloring.owner(e) {
                    if o != u && self.visited[o.0] != self.epoch {
                        self.visited[o.0] = self.epoch;
                        next = Some((o, e));
                        break;
                    }
                }
            }
            self.stack.last_mut().expect("non-empty").cursor = cursor;
            match next {
                Some((o, e)) => self.stack.push(Frame {
                    node: o,
                    cursor: 0,
                    via: Some(e),
                }),
                None => {
                    self.stack.pop();
                }
            }
        };

        self.stats.edge_visits += visits;
        self.stats.max_search_visits = self.stats.max_search_visits.max(visits);
        let Some(free_edge) = found else {
            return false;
        };
        let mut path = std::mem::take(&mut self.path);
        path.clear();
        for w in self.stack.windows(2) {
            path.push((w[0].node, w[1].via.expect("non-root frame"), w[1].node));
        }
        let end = self.stack.last().expect("non-empty").node;
        let before = self.check_invariants.then(|| self.owned.clone());
        self.augment(end, free_edge, &path);
        self.path = path;
        if let Some(before) = before {
            let recount = self.recount_owned();
            let broken = recount != self.owned
                || self
                    .graph
                    .nodes()
                    .any(|w| w != root && before[w.0] != recount[w.0])
                || recount[root.0] != before[root.0] + 1;
            if broken {
                self.stats.invariant_violations += 1;
            }
        }
        true
    }

    fn recount_owned(&self) -> Vec<usize> {
        let mut owned = vec![0; self.graph.node_count()];
        for o in self.coloring.owners().iter().flatten() {
            owned[o.0] += 1;
        }
        owned
    }

    /// Colors `free_edge` with `end` and hands each `(parent, edge, child)`
    /// edge of the walk to its parent.
    fn augment(&mut self, end: NodeId, free_edge: usize, path: &[(NodeId, usize, NodeId)]) {
        debug_assert!(self.coloring.owner(free_edge).is_none());
        self.coloring.set_owner(free_edge, end);
        for v in self.graph.edge(free_edge) {
            self.uncolored[v.0] -= 1;
        }
        self.owned[end.0] += 1;
        for &(parent, e, child) in path {
            debug_assert_eq!(self.coloring.owner(e), Some(child));
            self.coloring.set_owner(e, parent);
            self.owned[child.0] -= 1;
            self.owned[parent.0] += 1;
        }
    }

    /// Colors enough edges that every node with capacity below its degree owns
    /// `degree - capacity + 1` of them. False means no valid coloring exists.
    pub fn ensure_feasibility(&mut self) -> bool {
        let g = self.graph;
        for v in g.nodes() {
            if g.capacity(v) < g.degree(v) {
                let need = g.degree(v) - g.capacity(v) + 1;
                while self.owned[v.0] < need {
                    if !self.color_one_edge(v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Runs the descent and returns the optimum. The coloring is left
    /// partial; see [`complete`](Self::complete).
    pub fn run(&mut self) -> Objective {
        let g = self.graph;
        if !self.ensure_feasibility() {
            return Objective::Infeasible;
        }
        let max_degree = g.max_degree();
        if max_degree == 0 {
            return Objective::Finite(0);
        }
        for x in (1..max_degree).rev() {
            for v in g.nodes() {
                let l = self.demand(v, x);
                if l <= 1 {
                    continue;
                }
                while self.owned[v.0] < l {
                    if !self.color_one_edge(v) {
                        return Objective::Finite(x + 1);
                    }
                }
            }
        }
        Objective::Finite(1)
    }

    /// Gives every uncolored edge its lowest-numbered endpoint.
    pub fn complete(&mut self) {
        for e in 0..self.graph.edge_count() {
            if self.coloring.owner(e).is_none() {
                let owner = *self.graph.edge(e).iter().min().expect("non-empty edge");
                self.coloring.set_owner(e, owner);
                self.owned[owner.0] += 1;
                for v in self.graph.edge(e) {
                    self.uncolored[v.0] -= 1;
                }
            }
        }
    }

    pub fn into_coloring(self) -> PartialColoring {
        self.coloring
    }
}

fn solve_any(g: &Graph) -> Result<(SolveResult, DfsStats), SolveError> {
    let mut state = SearchState::new(g)?;
    let value = state.run();
    if value.is_feasible() {
        state.complete();
    }
    let stats = state.stats();
    Ok((
        SolveResult {
            value,
            witness: state.into_coloring(),
        },
        stats,
    ))
}

/// Optimal star partition of a simple graph or linear hypergraph.
pub fn minimum_star_coloring(g: &Graph) -> Result<SolveResult, SolveError> {
    minimum_star_coloring_with_stats(g).map(|(r, _)| r)
}

pub fn minimum_star_coloring_with_stats(g: &Graph) -> Result<(SolveResult, DfsStats), SolveError> {
    match g.kind() {
        GraphKind::Simple | GraphKind::LinearHyper => solve_any(g),
        kind => Err(SolveError::UnsupportedKind { kind, solver: "dfs" }),
    }
}

/// Like [`minimum_star_coloring_with_stats`], with invariant checks on. Also
/// reports whether the partial coloring at exit satisfied the returned value.
pub fn minimum_star_coloring_checked(g: &Graph) -> Result<(SolveResult, DfsStats, bool), SolveError> {
    if g.kind() == GraphKind::Multi {
        return Err(SolveError::UnsupportedKind { kind: g.kind(), solver: "dfs" });
    }
    let mut state = SearchState::new(g)?;
    state.set_invariant_checks(true);
    let value = state.run();
    let satisfying = match value {
        Objective::Finite(x) => state.is_satisfying(x),
        Objective::Infeasible => true,
    };
    if value.is_feasible() {
        state.complete();
    }
    let stats = state.stats();
    Ok((
        SolveResult {
            value,
            witness: state.into_coloring(),
        },
        stats,
        satisfying,
    ))
}

/// Which exact solver handles the simple core of a preprocessed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Dfs,
    Flow,
}

/// Solves any graph kind, reducing multigraphs and graphs with self-loops to
/// the simple case first. The witness refers to the original edge ids.
pub fn preprocess_and_solve(g: &Graph, algorithm: Algorithm) -> Result<SolveResult, SolveError> {
    match (g.kind(), algorithm) {
        (GraphKind::Multi, _) => {
            let (simple, map) = graph::merge_parallel_edges(g)?;
            let inner = preprocess_and_solve(&simple, algorithm)?;
            let witness = PartialColoring::from_owners(
                map.iter().map(|&rep| inner.witness.owner(rep)).collect(),
            );
            Ok(SolveResult {
                value: inner.value,
                witness,
            })
        }
        (GraphKind::WithSelfLoops, Algorithm::Dfs) => solve_any(g).map(|(r, _)| r),
        (GraphKind::WithSelfLoops, Algorithm::Flow) => {
            let split = graph::extract_self_loops(g)?;
            let inner =
                crate::flow::solve_with_loops(&split.graph, &split.loop_counts())?;
            let mut owners = vec![None; g.edge_count()];
            for (new_id, &orig) in split.edge_map.iter().enumerate() {
                owners[orig] = inner.witness.owner(new_id);
            }
            for &(v, orig) in &split.loops {
                owners[orig] = Some(v);
            }
            Ok(SolveResult {
                value: inner.value,
                witness: PartialColoring::from_owners(owners),
            })
        }
        (_, Algorithm::Dfs) => minimum_star_coloring(g),
        (_, Algorithm::Flow) => crate::flow::minimum_star_coloring_flow(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_valid, star_partition_value};
    use crate::graph::GraphBuilder;
    use crate::oracle::generate::dfs_example;

    fn n(i: usize) -> NodeId {
        NodeId(i)
    }

    /// Edge id of `{a, b}` in `g` (1-based node names).
    fn eid(g: &Graph, a: usize, b: usize) -> usize {
        let (a, b) = (n(a - 1), n(b - 1));
        (0..g.edge_count())
            .find(|&e| g.edge(e).contains(&a) && g.edge(e).contains(&b))
            .unwrap()
    }

    /// A partial coloring of the example where v2 still has an uncolored edge reachable by augmentation.
    fn dfs_example_state(g: &Graph) -> PartialColoring {
        let mut c = PartialColoring::uncolored(g.edge_count());
        for (owner, other) in [(1, 2), (1, 3), (1, 4), (3, 2), (2, 5), (2, 7), (3, 4), (3, 6)] {
            c.set_owner(eid(g, owner, other), n(owner - 1));
        }
        c
    }

    fn owned_all(s: &SearchState) -> Vec<usize> {
        s.graph().nodes().map(|v| s.owned(v)).collect()
    }

    #[test]
    fn uncolored_incident_edge_taken_directly() {
        let g = Graph::simple(3, &[(0, 1), (1, 2)]).unwrap();
        let mut s = SearchState::new(&g).unwrap();
        assert!(s.color_one_edge(n(1)));
        assert_eq!(s.coloring().owner(0), Some(n(1)));
        assert_eq!(s.owned(n(1)), 1);
    }

    #[test]
    fn example_search_from_v2_succeeds() {
        let g = dfs_example();
        let mut s = SearchState::from_partial(&g, dfs_example_state(&g)).unwrap();
        let before = owned_all(&s);
        assert!(s.color_one_edge(n(1)));
        let after = owned_all(&s);
        for v in 0..7 {
            let expected = before[v] + usize::from(v == 1);
            assert_eq!(after[v], expected, "node v{}", v + 1);
        }
        // ascending edge order reaches v1 first, which owns nothing uncolored
        // except {v1, v7}
        assert_eq!(s.coloring().owner(eid(&g, 1, 7)), Some(n(0)));
        assert_eq!(s.coloring().owner(eid(&g, 1, 2)), Some(n(1)));
    }

    #[test]
    fn walk_through_v3_gives_second_state() {
        // Replay the alternative augmenting walk (v2, v3, v1, v7).
        let g = dfs_example();
        let mut s = SearchState::from_partial(&g, dfs_example_state(&g)).unwrap();
        let path = [
            (n(1), eid(&g, 2, 3), n(2)),
            (n(2), eid(&g, 1, 3), n(0)),
        ];
        s.augment(n(0), eid(&g, 1, 7), &path);
        let c = s.coloring();
        assert_eq!(c.owner(eid(&g, 2, 3)), Some(n(1)));
        assert_eq!(c.owner(eid(&g, 1, 3)), Some(n(2)));
        assert_eq!(c.owner(eid(&g, 1, 7)), Some(n(0)));

        // From v4 the search now succeeds once and then fails.
        assert!(s.color_one_edge(n(3)));
        assert_eq!(s.coloring().owner(eid(&g, 4, 5)), Some(n(3)));
        assert!(!s.color_one_edge(n(3)));
        assert_eq!(s.coloring().owner(eid(&g, 5, 6)), None);
        assert!(!s.is_satisfying(2));
        assert!(s.is_satisfying(3));
    }

    #[test]
    fn failed_search_leaves_coloring_unchanged() {
        let g = dfs_example();
        let mut s = SearchState::from_partial(&g, dfs_example_state(&g)).unwrap();
        let path = [(n(1), eid(&g, 2, 3), n(2)), (n(2), eid(&g, 1, 3), n(0))];
        s.augment(n(0), eid(&g, 1, 7), &path);
        assert!(s.color_one_edge(n(3)));
        let snapshot = s.coloring().clone();
        assert!(!s.color_one_edge(n(3)));
        assert_eq!(s.coloring(), &snapshot);
    }

    #[test]
    fn feasibility_trivial_when_capacities_loose() {
        let g = dfs_example();
        let mut s = SearchState::new(&g).unwrap();
        assert!(s.ensure_feasibility());
        assert_eq!(s.coloring().uncolored_edges().count(), g.edge_count());
    }

    #[test]
    fn feasibility_fails_on_zero_capacity_edge() {
        let g = GraphBuilder::new(GraphKind::Simple, 2)
            .edge([0, 1])
            .capacities([0, 0])
            .build()
            .unwrap();
        let mut s = SearchState::new(&g).unwrap();
        assert!(!s.ensure_feasibility());
        assert_eq!(minimum_star_coloring(&g).unwrap().value, Objective::Infeasible);
    }

    #[test]
    fn feasibility_center_capacity_one_owns_all() {
        let g = GraphBuilder::new(GraphKind::Simple, 4)
            .edges([[0, 1], [0, 2], [0, 3]])
            .capacity(0, 1)
            .build()
            .unwrap();
        let mut s = SearchState::new(&g).unwrap();
        assert!(s.ensure_feasibility());
        assert_eq!(s.owned(n(0)), 3);
    }

    #[test]
    fn dfs_example_optimum_is_three() {
        let g = dfs_example();
        let r = minimum_star_coloring(&g).unwrap();
        assert_eq!(r.value, Objective::Finite(3));
        assert!(is_valid(&g, &r.witness).unwrap());
        assert_eq!(star_partition_value(&g, &r.witness).unwrap(), 3);
    }

    #[test]
    fn k33_and_single_edge() {
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let g = Graph::simple(6, &k33).unwrap();
        assert_eq!(minimum_star_coloring(&g).unwrap().value, Objective::Finite(3));
        let g = Graph::simple(2, &[(0, 1)]).unwrap();
        assert_eq!(minimum_star_coloring(&g).unwrap().value, Objective::Finite(1));
        let g = Graph::simple(1, &[]).unwrap();
        assert_eq!(minimum_star_coloring(&g).unwrap().value, Objective::Finite(0));
    }

    #[test]
    fn multigraph_needs_preprocessing() {
        let g = GraphBuilder::new(GraphKind::Multi, 2)
            .edges([[0, 1], [0, 1], [1, 0]])
            .build()
            .unwrap();
        assert!(matches!(
            minimum_star_coloring(&g),
            Err(SolveError::UnsupportedKind { .. })
        ));
        for algo in [Algorithm::Dfs, Algorithm::Flow] {
            let r = preprocess_and_solve(&g, algo).unwrap();
            assert_eq!(r.value, Objective::Finite(1));
            let o = r.witness.owner(0).unwrap();
            assert!(r.witness.owners().iter().all(|&x| x == Some(o)));
        }
    }

    #[test]
    fn doubled_triangle_shares_owners() {
        let g = GraphBuilder::new(GraphKind::Multi, 3)
            .edges([[0, 1], [1, 2], [0, 2], [1, 0], [2, 1], [2, 0]])
            .build()
            .unwrap();
        for algo in [Algorithm::Dfs, Algorithm::Flow] {
            let r = preprocess_and_solve(&g, algo).unwrap();
            assert_eq!(r.value, Objective::Finite(2));
            for (a, b) in [(0, 3), (1, 4), (2, 5)] {
                assert_eq!(r.witness.owner(a), r.witness.owner(b));
            }
            assert_eq!(star_partition_value(&g, &r.witness).unwrap(), 2);
        }
    }

    #[test]
    fn triangle_with_loop() {
        let g = GraphBuilder::new(GraphKind::WithSelfLoops, 3)
            .edges([vec![0, 1], vec![1, 2], vec![0, 2], vec![0]])
            .build()
            .unwrap();
        for algo in [Algorithm::Dfs, Algorithm::Flow] {
            let r = preprocess_and_solve(&g, algo).unwrap();
            assert_eq!(r.value, Objective::Finite(2));
            assert_eq!(r.witness.owner(3), Some(n(0)));
            assert_eq!(star_partition_value(&g, &r.witness).unwrap(), 2);
        }
    }

    #[test]
    fn single_loop_node() {
        let g = GraphBuilder::new(GraphKind::WithSelfLoops, 1)
            .edge([0])
            .build()
            .unwrap();
        for algo in [Algorithm::Dfs, Algorithm::Flow] {
            let r = preprocess_and_solve(&g, algo).unwrap();
            assert_eq!(r.value, Objective::Finite(1));
        }
    }

    #[test]
    fn hypergraph_solved_directly() {
        // three triples around a triangle of shared nodes
        let g = GraphBuilder::new(GraphKind::LinearHyper, 6)
            .edges([vec![0, 1, 3], vec![1, 2, 4], vec![2, 0, 5]])
            .build()
            .unwrap();
        let (r, stats) = minimum_star_coloring_with_stats(&g).unwrap();
        assert_eq!(r.value, Objective::Finite(2));
        assert!(stats.max_search_visits <= 2 * 3 * 3);
    }
}
