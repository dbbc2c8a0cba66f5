//! Graph data model.
//!
//! A [`Graph`] is immutable once built. Nodes are dense indices `0..n`, edges
//! are node lists whose legal shape depends on the [`GraphKind`]:
//!
//! | kind            | edge shape                                   |
//! |-----------------|----------------------------------------------|
//! | `Simple`        | two distinct nodes, no repeated edge         |
//! | `Multi`         | two distinct nodes, parallel edges allowed   |
//! | `WithSelfLoops` | one node (a loop) or a simple two-node edge  |
//! | `LinearHyper`   | two or more nodes, pairwise overlap at most 1 |
//!
//! Every built graph is connected. Node capacities default to the maximum
//! degree and node weights default to 1.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for NodeId {
    fn from(index: usize) -> Self {
        NodeId(index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Simple,
    Multi,
    WithSelfLoops,
    LinearHyper,
}

impl GraphKind {
    /// Keyword used by the text instance format.
    pub fn keyword(self) -> &'static str {
        match self {
            GraphKind::Simple => "simple",
            GraphKind::Multi => "multi",
            GraphKind::WithSelfLoops => "selfloop",
            GraphKind::LinearHyper => "hyper",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "simple" => Some(GraphKind::Simple),
            "multi" => Some(GraphKind::Multi),
            "selfloop" => Some(GraphKind::WithSelfLoops),
            "hyper" => Some(GraphKind::LinearHyper),
            _ => None,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("edge {edge} references node {node}, but the graph has {node_count} nodes")]
    NodeOutOfRange {
        edge: usize,
        node: usize,
        node_count: usize,
    },
    #[error("edge {edge} has {size} endpoints, which a {kind} graph does not allow")]
    EdgeArity {
        edge: usize,
        size: usize,
        kind: GraphKind,
    },
    #[error("edge {edge} is a self-loop, which a {kind} graph does not allow")]
    SelfLoopInSimple { edge: usize, kind: GraphKind },
    #[error("edge {second} duplicates edge {first}")]
    DuplicateEdgeInSimple { first: usize, second: usize },
    #[error("hyperedge {edge} lists node {node} more than once")]
    RepeatedNodeInEdge { edge: usize, node: usize },
    #[error("hyperedges {first} and {second} share more than one node")]
    NonLinearHypergraph { first: usize, second: usize },
    #[error("graph is not connected (node {node} is unreachable from node 0)")]
    Disconnected { node: usize },
    #[error("node {node} has weight 0; weights must be positive")]
    ZeroWeight { node: usize },
    #[error("capacity or weight given for node {node}, but the graph has {node_count} nodes")]
    AttributeOutOfRange { node: usize, node_count: usize },
    #[error("expected a {expected} graph, got a {found} graph")]
    UnexpectedKind { expected: GraphKind, found: GraphKind },
}

/// Collects nodes, attributes and edges, then validates them in [`build`](Self::build).
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    kind: GraphKind,
    node_count: usize,
    capacities: Vec<Option<usize>>,
    weights: Vec<u64>,
    edges: Vec<Vec<usize>>,
    attribute_error: Option<GraphError>,
}

impl GraphBuilder {
    pub fn new(kind: GraphKind, node_count: usize) -> Self {
        GraphBuilder {
            kind,
            node_count,
            capacities: vec![None; node_count],
            weights: vec![1; node_count],
            edges: Vec::new(),
            attribute_error: None,
        }
    }

    pub fn capacity(&mut self, node: usize, capacity: usize) -> &mut Self {
        match self.capacities.get_mut(node) {
            Some(slot) => *slot = Some(capacity),
            None => self.record_attribute_error(node),
        }
        self
    }

    pub fn capacities<I: IntoIterator<Item = usize>>(&mut self, caps: I) -> &mut Self {
        for (node, cap) in caps.into_iter().enumerate() {
            self.capacity(node, cap);
        }
        self
    }

    pub fn weight(&mut self, node: usize, weight: u64) -> &mut Self {
        match self.weights.get_mut(node) {
            Some(slot) => *slot = weight,
            None => self.record_attribute_error(node),
        }
        self
    }

    pub fn weights<I: IntoIterator<Item = u64>>(&mut self, weights: I) -> &mut Self {
        for (node, w) in weights.into_iter().enumerate() {
            self.weight(node, w);
        }
        self
    }

    pub fn edge<I: IntoIterator<Item = usize>>(&mut self, nodes: I) -> &mut Self {
        self.edges.push(nodes.into_iter().collect());
        self
    }

    pub fn edges<I, E>(&mut self, edges: I) -> &mut Self
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = usize>,
    {
        for e in edges {
            self.edge(e);
        }
        self
    }

    fn record_attribute_error(&mut self, node: usize) {
        if self.attribute_error.is_none() {
            self.attribute_error = Some(GraphError::AttributeOutOfRange {
                node,
                node_count: self.node_count,
            });
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        if let Some(err) = &self.attribute_error {
            return Err(err.clone());
        }
        if self.node_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let n = self.node_count;
        let kind = self.kind;
        let mut edges: Vec<Vec<NodeId>> = Vec::with_capacity(self.edges.len());
        for (id, raw) in self.edges.iter().enumerate() {
            if let Some(&node) = raw.iter().find(|&&v| v >= n) {
                return Err(GraphError::NodeOutOfRange {
                    edge: id,
                    node,
                    node_count: n,
                });
            }
            edges.push(normalize_edge(kind, id, raw)?);
        }

        match kind {
            GraphKind::Simple | GraphKind::WithSelfLoops => check_no_duplicates(&edges)?,
            GraphKind::LinearHyper => check_linear(&edges)?,
            GraphKind::Multi => {}
        }

        for (node, &w) in self.weights.iter().enumerate() {
            if w == 0 {
                return Err(GraphError::ZeroWeight { node });
            }
        }

        let mut incidence = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            for v in e {
                incidence[v.0].push(id);
            }
        }
        check_connected(n, &edges)?;

        let max_degree = incidence.iter().map(Vec::len).max().unwrap_or(0);
        let capacities = self
            .capacities
            .iter()
            .map(|c| c.unwrap_or(max_degree))
            .collect();

        Ok(Graph {
            kind,
            capacities,
            weights: self.weights.clone(),
            edges,
            incidence,
        })
    }
}

fn normalize_edge(kind: GraphKind, id: usize, raw: &[usize]) -> Result<Vec<NodeId>, GraphError> {
    let arity = |size| GraphError::EdgeArity { edge: id, size, kind };
    match kind {
        GraphKind::Simple | GraphKind::Multi => {
            if raw.len() != 2 {
                return Err(arity(raw.len()));
            }
            if raw[0] == raw[1] {
                return Err(GraphError::SelfLoopInSimple { edge: id, kind });
            }
            Ok(vec![NodeId(raw[0]), NodeId(raw[1])])
        }
        GraphKind::WithSelfLoops => match raw {
            [v] => Ok(vec![NodeId(*v)]),
            [v, w] if v == w => Ok(vec![NodeId(*v)]),
            [v, w] => Ok(vec![NodeId(*v), NodeId(*w)]),
            _ => Err(arity(raw.len())),
        },
        GraphKind::LinearHyper => {
            if raw.len() < 2 {
                return Err(arity(raw.len()));
            }
            let mut seen = raw.to_vec();
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::RepeatedNodeInEdge { edge: id, node: w[0] });
            }
            Ok(raw.iter().map(|&v| NodeId(v)).collect())
        }
    }
}

fn sorted_pair(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn check_no_duplicates(edges: &[Vec<NodeId>]) -> Result<(), GraphError> {
    let mut seen: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    for (id, e) in edges.iter().enumerate() {
        if e.len() != 2 {
            continue;
        }
        if let Some(&first) = seen.get(&sorted_pair(e[0], e[1])) {
            return Err(GraphError::DuplicateEdgeInSimple { first, second: id });
        }
        seen.insert(sorted_pair(e[0], e[1]), id);
    }
    Ok(())
}

/// Two hyperedges overlap in two or more nodes iff some node pair is covered twice.
fn check_linear(edges: &[Vec<NodeId>]) -> Result<(), GraphError> {
    let mut owner_of_pair: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    for (id, e) in edges.iter().enumerate() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                if let Some(&first) = owner_of_pair.get(&sorted_pair(a, b)) {
                    return Err(GraphError::NonLinearHypergraph { first, second: id });
                }
                owner_of_pair.insert(sorted_pair(a, b), id);
            }
        }
    }
    Ok(())
}

fn check_connected(n: usize, edges: &[Vec<NodeId>]) -> Result<(), GraphError> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let a = find(&mut parent, e[0].0);
        for v in &e[1..] {
            let b = find(&mut parent, v.0);
            if a != b {
                parent[b] = a;
            }
        }
    }
    let root = find(&mut parent, 0);
    for v in 1..n {
        if find(&mut parent, v) != root {
            return Err(GraphError::Disconnected { node: v });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    capacities: Vec<usize>,
    weights: Vec<u64>,
    edges: Vec<Vec<NodeId>>,
    incidence: Vec<Vec<usize>>,
}

impl Graph {
    /// Shorthand for a simple graph with default capacities and unit weights.
    pub fn simple(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        GraphBuilder::new(GraphKind::Simple, node_count)
            .edges(edges.iter().map(|&(a, b)| [a, b]))
            .build()
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.capacities.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId)
    }

    pub fn edge(&self, e: usize) -> &[NodeId] {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Vec<NodeId>] {
        &self.edges
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: NodeId) -> &[usize] {
        &self.incidence[v.0]
    }

    pub fn capacity(&self, v: NodeId) -> usize {
        self.capacities[v.0]
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn weight(&self, v: NodeId) -> u64 {
        self.weights[v.0]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Number of incident edges; a self-loop counts once.
    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v.0].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest edge cardinality (2 for ordinary graphs, 1 for a loop-only graph).
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_self_loop(&self, e: usize) -> bool {
        self.edges[e].len() == 1
    }

    /// The endpoint of the two-node edge `e` that is not `v`.
    pub fn other_endpoint(&self, e: usize, v: NodeId) -> NodeId {
        let edge = &self.edges[e];
        debug_assert_eq!(edge.len(), 2);
        if edge[0] == v {
            edge[1]
        } else {
            edge[0]
        }
    }

    /// True if every capacity is at least the node's degree, i.e. capacities never bind.
    pub fn capacity_free(&self) -> bool {
        self.nodes().all(|v| self.capacity(v) >= self.degree(v))
    }

    /// True if every edge has exactly two endpoints.
    pub fn is_two_uniform(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// A builder pre-filled with this graph's nodes, attributes and edges.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new(self.kind, self.node_count());
        b.capacities(self.capacities.iter().copied())
            .weights(self.weights.iter().copied())
            .edges(self.edges.iter().map(|e| e.iter().map(|v| v.0).collect::<Vec<_>>()));
        b
    }
}

fn expect_kind(g: &Graph, expected: GraphKind) -> Result<(), GraphError> {
    if g.kind != expected {
        return Err(GraphError::UnexpectedKind {
            expected,
            found: g.kind,
        });
    }
    Ok(())
}

/// Collapses every class of parallel edges of a multigraph onto its first member.
///
/// Returns the simple graph and, for every original edge id, the id of its
/// representative in the simple graph.
pub fn merge_parallel_edges(g: &Graph) -> Result<(Graph, Vec<usize>), GraphError> {
    expect_kind(g, GraphKind::Multi)?;
    let mut rep_of_pair: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    let mut map = Vec::with_capacity(g.edge_count());
    let mut b = GraphBuilder::new(GraphKind::Simple, g.node_count());
    b.capacities(g.capacities.iter().copied())
        .weights(g.weights.iter().copied());
    for e in &g.edges {
        let next = rep_of_pair.len();
        let rep = *rep_of_pair.entry(sorted_pair(e[0], e[1])).or_insert_with(|| {
            b.edge([e[0].0, e[1].0]);
            next
        });
        map.push(rep);
    }
    Ok((b.build()?, map))
}

/// Result of [`extract_self_loops`].
#[derive(Debug, Clone)]
pub struct SelfLoopSplit {
    /// The loop-free remainder, with the original capacities and weights.
    pub graph: Graph,
    /// `(node, original edge id)` for every loop, in edge order.
    pub loops: Vec<(NodeId, usize)>,
    /// Original edge id of every edge of `graph`.
    pub edge_map: Vec<usize>,
}

impl SelfLoopSplit {
    /// Number of loops at every node.
    pub fn loop_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.graph.node_count()];
        for &(v, _) in &self.loops {
            counts[v.0] += 1;
        }
        counts
    }
}

pub fn extract_self_loops(g: &Graph) -> Result<SelfLoopSplit, GraphError> {
    expect_kind(g, GraphKind::WithSelfLoops)?;
    let mut b = GraphBuilder::new(GraphKind::Simple, g.node_count());
    b.capacities(g.capacities.iter().copied())
        .weights(g.weights.iter().copied());
    let mut loops = Vec::new();
    let mut edge_map = Vec::new();
    for (id, e) in g.edges.iter().enumerate() {
        if e.len() == 1 {
            loops.push((e[0], id));
        } else {
            b.edge([e[0].0, e[1].0]);
            edge_map.push(id);
        }
    }
    Ok(SelfLoopSplit {
        graph: b.build()?,
        loops,
        edge_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::simple(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_has_max_degree_two() {
        let g = triangle();
        assert_eq!(g.max_degree(), 2);
        for v in g.nodes() {
            assert_eq!(g.degree(v), 2);
            assert_eq!(g.capacity(v), 2);
        }
    }

    #[test]
    fn overlapping_triples_are_not_linear() {
        let err = GraphBuilder::new(GraphKind::LinearHyper, 5)
            .edges([[0, 1, 2], [1, 2, 3], [2, 3, 4]])
            .build()
            .unwrap_err();
        assert_eq!(err, GraphError::NonLinearHypergraph { first: 0, second: 1 });
    }

    #[test]
    fn duplicate_simple_edge_rejected() {
        let err = Graph::simple(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdgeInSimple { first: 0, second: 1 });
    }

    #[test]
    fn self_loop_in_simple_rejected() {
        let err = Graph::simple(2, &[(0, 1), (1, 1)]).unwrap_err();
        assert!(matches!(err, GraphError::SelfLoopInSimple { edge: 1, .. }));
    }

    #[test]
    fn disconnected_and_empty_rejected() {
        assert_eq!(
            Graph::simple(4, &[(0, 1), (2, 3)]).unwrap_err(),
            GraphError::Disconnected { node: 2 }
        );
        assert_eq!(Graph::simple(0, &[]).unwrap_err(), GraphError::EmptyGraph);
        assert!(Graph::simple(1, &[]).is_ok());
    }

    #[test]
    fn out_of_range_and_zero_weight_rejected() {
        assert!(matches!(
            Graph::simple(2, &[(0, 2)]).unwrap_err(),
            GraphError::NodeOutOfRange { edge: 0, node: 2, .. }
        ));
        let err = GraphBuilder::new(GraphKind::Simple, 2)
            .edge([0, 1])
            .weight(1, 0)
            .build()
            .unwrap_err();
        assert_eq!(err, GraphError::ZeroWeight { node: 1 });
    }

    #[test]
    fn self_loop_counts_once_toward_degree() {
        let g = GraphBuilder::new(GraphKind::WithSelfLoops, 2)
            .edge([0, 0])
            .edge([0, 1])
            .build()
            .unwrap();
        assert_eq!(g.degree(NodeId(0)), 2);
        assert_eq!(g.degree(NodeId(1)), 1);
        assert!(g.is_self_loop(0));
    }

    #[test]
    fn tree_leaf_has_degree_one() {
        let g = Graph::simple(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g.degree(NodeId(3)), 1);
    }

    #[test]
    fn max_degree_examples() {
        let k33: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .collect();
        assert_eq!(Graph::simple(6, &k33).unwrap().max_degree(), 3);
        assert_eq!(Graph::simple(2, &[(0, 1)]).unwrap().max_degree(), 1);
    }

    #[test]
    fn capacities_default_to_max_degree() {
        let g = GraphBuilder::new(GraphKind::Simple, 3)
            .edges([[0, 1], [1, 2]])
            .capacity(0, 0)
            .build()
            .unwrap();
        assert_eq!(g.capacities(), &[0, 2, 2]);
    }

    #[test]
    fn merge_three_parallel_edges() {
        let g = GraphBuilder::new(GraphKind::Multi, 2)
            .edges([[0, 1], [1, 0], [0, 1]])
            .build()
            .unwrap();
        let (s, map) = merge_parallel_edges(&g).unwrap();
        assert_eq!(s.edge_count(), 1);
        assert_eq!(s.kind(), GraphKind::Simple);
        assert_eq!(map, vec![0, 0, 0]);
    }

    #[test]
    fn merge_triangle_with_doubled_edge() {
        let g = GraphBuilder::new(GraphKind::Multi, 3)
            .edges([[0, 1], [1, 2], [0, 2], [2, 1]])
            .build()
            .unwrap();
        let (s, map) = merge_parallel_edges(&g).unwrap();
        assert_eq!(s.edge_count(), 3);
        assert_eq!(map, vec![0, 1, 2, 1]);
        // capacities were resolved against the multigraph degree
        assert_eq!(s.capacities(), g.capacities());
    }

    #[test]
    fn merge_already_simple_is_identity() {
        let g = GraphBuilder::new(GraphKind::Multi, 3)
            .edges([[0, 1], [1, 2]])
            .build()
            .unwrap();
        let (s, map) = merge_parallel_edges(&g).unwrap();
        assert_eq!(s.edges(), g.edges());
        assert_eq!(map, vec![0, 1]);
    }

    #[test]
    fn merge_requires_multi() {
        assert!(matches!(
            merge_parallel_edges(&triangle()),
            Err(GraphError::UnexpectedKind { .. })
        ));
    }

    #[test]
    fn extract_loops() {
        let g = GraphBuilder::new(GraphKind::WithSelfLoops, 3)
            .edges([vec![0, 1], vec![1, 2], vec![0, 2], vec![0]])
            .build()
            .unwrap();
        let split = extract_self_loops(&g).unwrap();
        assert_eq!(split.graph.edge_count(), 3);
        assert_eq!(split.loops, vec![(NodeId(0), 3)]);
        assert_eq!(split.edge_map, vec![0, 1, 2]);
        assert_eq!(split.loop_counts(), vec![1, 0, 0]);

        let plain = GraphBuilder::new(GraphKind::WithSelfLoops, 2)
            .edge([0, 1])
            .build()
            .unwrap();
        let split = extract_self_loops(&plain).unwrap();
        assert!(split.loops.is_empty());
        assert_eq!(split.graph.edges(), plain.edges());

        let single = GraphBuilder::new(GraphKind::WithSelfLoops, 1)
            .edge([0])
            .build()
            .unwrap();
        let split = extract_self_loops(&single).unwrap();
        assert_eq!(split.graph.edge_count(), 0);
        assert_eq!(split.loops, vec![(NodeId(0), 0)]);
    }

    #[test]
    fn multiple_loops_at_one_node_allowed() {
        let g = GraphBuilder::new(GraphKind::WithSelfLoops, 2)
            .edges([vec![0], vec![0], vec![0, 1]])
            .build()
            .unwrap();
        assert_eq!(g.degree(NodeId(0)), 3);
        assert_eq!(extract_self_loops(&g).unwrap().loop_counts(), vec![2, 0]);
    }

    #[test]
    fn hypergraph_connectivity_uses_incidence() {
        let ok = GraphBuilder::new(GraphKind::LinearHyper, 5)
            .edges([vec![0, 1, 2], vec![2, 3, 4]])
            .build();
        assert!(ok.is_ok());
        let err = GraphBuilder::new(GraphKind::LinearHyper, 5)
            .edges([vec![0, 1, 2], vec![3, 4]])
            .build()
            .unwrap_err();
        assert!(matches!(err, GraphError::Disconnected { .. }));
    }

    #[test]
    fn degree_sum_equals_total_edge_size() {
        let g = GraphBuilder::new(GraphKind::LinearHyper, 6)
            .edges([vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![0, 5]])
            .build()
            .unwrap();
        let degree_sum: usize = g.nodes().map(|v| g.degree(v)).sum();
        let size_sum: usize = g.edges().iter().map(Vec::len).sum();
        assert_eq!(degree_sum, size_sum);
        assert_eq!(g.max_edge_size(), 3);
    }
}
