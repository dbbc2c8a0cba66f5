//! Star colorings, orientations and the objective they induce.
//!
//! A coloring stores for each edge its *owner*: the incident node whose color
//! the edge carries. Edges with the same owner form one star. For two-node
//! edges a coloring is the same thing as an orientation: the owner is the
//! tail and the other endpoint the head.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, GraphKind, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("edge {edge} has no owner")]
    IncompleteColoring { edge: usize },
    #[error("owner {owner} of edge {edge} is not one of its endpoints")]
    OwnerNotInEdge { edge: usize, owner: NodeId },
    #[error("head {head} of edge {edge} is not one of its endpoints")]
    HeadNotInEdge { edge: usize, head: NodeId },
    #[error("self-loop {edge} must be owned by its node")]
    ForeignLoopOwner { edge: usize },
    #[error("coloring covers {found} edges, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {edge} does not have exactly two endpoints, so it cannot be oriented")]
    NotOrientable { edge: usize },
}

/// Owner per edge; `None` marks an uncolored edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    owners: Vec<Option<NodeId>>,
}

impl PartialColoring {
    pub fn uncolored(edge_count: usize) -> Self {
        PartialColoring {
            owners: vec![None; edge_count],
        }
    }

    pub fn from_owners(owners: Vec<Option<NodeId>>) -> Self {
        PartialColoring { owners }
    }

    pub fn complete(owners: Vec<NodeId>) -> Self {
        PartialColoring {
            owners: owners.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }

    pub fn owner(&self, e: usize) -> Option<NodeId> {
        self.owners[e]
    }

    pub fn set_owner(&mut self, e: usize, owner: NodeId) {
        self.owners[e] = Some(owner);
    }

    pub fn clear_owner(&mut self, e: usize) {
        self.owners[e] = None;
    }

    pub fn owners(&self) -> &[Option<NodeId>] {
        &self.owners
    }

    pub fn is_complete(&self) -> bool {
        self.owners.iter().all(Option::is_some)
    }

    pub fn uncolored_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.owners
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_none())
            .map(|(e, _)| e)
    }

    /// Checks every set owner against the graph.
    pub fn check_against(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.owners.len() != g.edge_count() {
            return Err(ColoringError::LengthMismatch {
                expected: g.edge_count(),
                found: self.owners.len(),
            });
        }
        for (e, owner) in self.owners.iter().enumerate() {
            let Some(owner) = *owner else { continue };
            let edge = g.edge(e);
            if !edge.contains(&owner) {
                if edge.len() == 1 {
                    return Err(ColoringError::ForeignLoopOwner { edge: e });
                }
                return Err(ColoringError::OwnerNotInEdge { edge: e, owner });
            }
        }
        Ok(())
    }

    /// Like [`check_against`](Self::check_against), but also requires every edge to be colored.
    pub fn check_complete(&self, g: &Graph) -> Result<(), ColoringError> {
        self.check_against(g)?;
        match self.uncolored_edges().next() {
            Some(edge) => Err(ColoringError::IncompleteColoring { edge }),
            None => Ok(()),
        }
    }
}

/// Head node per edge. Only defined for graphs whose edges all have two endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    heads: Vec<NodeId>,
}

impl Orientation {
    pub fn from_heads(heads: Vec<NodeId>) -> Self {
        Orientation { heads }
    }

    /// Every edge points to its higher-numbered endpoint.
    pub fn toward_higher(g: &Graph) -> Self {
        Orientation {
            heads: g.edges().iter().map(|e| e[0].max(e[1])).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn head(&self, e: usize) -> NodeId {
        self.heads[e]
    }

    pub fn heads(&self) -> &[NodeId] {
        &self.heads
    }

    pub fn tail(&self, g: &Graph, e: usize) -> NodeId {
        g.other_endpoint(e, self.heads[e])
    }

    pub fn flip(&mut self, g: &Graph, e: usize) {
        self.heads[e] = g.other_endpoint(e, self.heads[e]);
    }

    pub fn in_degrees(&self, g: &Graph) -> Vec<usize> {
        let mut d = vec![0; g.node_count()];
        for h in &self.heads {
            d[h.0] += 1;
        }
        d
    }

    pub fn out_degrees(&self, g: &Graph) -> Vec<usize> {
        let mut d = vec![0; g.node_count()];
        for e in 0..self.heads.len() {
            d[self.tail(g, e).0] += 1;
        }
        d
    }

    pub fn max_in_degree(&self, g: &Graph) -> usize {
        self.in_degrees(g).into_iter().max().unwrap_or(0)
    }

    pub fn check_against(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.heads.len() != g.edge_count() {
            return Err(ColoringError::LengthMismatch {
                expected: g.edge_count(),
                found: self.heads.len(),
            });
        }
        for (e, &head) in self.heads.iter().enumerate() {
            let edge = g.edge(e);
            if edge.len() != 2 {
                return Err(ColoringError::NotOrientable { edge: e });
            }
            if !edge.contains(&head) {
                return Err(ColoringError::HeadNotInEdge { edge: e, head });
            }
        }
        Ok(())
    }
}

fn require_two_uniform(g: &Graph) -> Result<(), ColoringError> {
    match g.edges().iter().position(|e| e.len() != 2) {
        Some(edge) => Err(ColoringError::NotOrientable { edge }),
        None => Ok(()),
    }
}

/// Directs every edge away from its owner.
pub fn owner_to_orientation(g: &Graph, c: &PartialColoring) -> Result<Orientation, ColoringError> {
    require_two_uniform(g)?;
    c.check_complete(g)?;
    let heads = (0..g.edge_count())
        .map(|e| g.other_endpoint(e, c.owner(e).expect("checked complete")))
        .collect();
    Ok(Orientation { heads })
}

/// Gives every edge the color of its tail.
pub fn orientation_to_owner(g: &Graph, o: &Orientation) -> Result<PartialColoring, ColoringError> {
    o.check_against(g)?;
    Ok(PartialColoring::complete(
        (0..g.edge_count()).map(|e| o.tail(g, e)).collect(),
    ))
}

/// Number of distinct colors on the edges incident to `v`.
pub fn color_count(g: &Graph, c: &PartialColoring, v: NodeId) -> Result<usize, ColoringError> {
    c.check_complete(g)?;
    Ok(distinct_owners_at(g, c, v))
}

fn distinct_owners_at(g: &Graph, c: &PartialColoring, v: NodeId) -> usize {
    let owners: BTreeSet<NodeId> = g.incident(v).iter().filter_map(|&e| c.owner(e)).collect();
    owners.len()
}

pub fn color_counts(g: &Graph, c: &PartialColoring) -> Result<Vec<usize>, ColoringError> {
    c.check_complete(g)?;
    Ok(g.nodes().map(|v| distinct_owners_at(g, c, v)).collect())
}

/// Maximum over all nodes of [`color_count`].
pub fn star_partition_value(g: &Graph, c: &PartialColoring) -> Result<usize, ColoringError> {
    Ok(color_counts(g, c)?.into_iter().max().unwrap_or(0))
}

/// True iff no node sees more distinct colors than its capacity.
pub fn is_valid(g: &Graph, c: &PartialColoring) -> Result<bool, ColoringError> {
    let counts = color_counts(g, c)?;
    Ok(g.nodes().all(|v| counts[v.0] <= g.capacity(v)))
}

/// Minimum number of incident edges a node of the given degree and capacity
/// has to own so that it sees at most `x` colors: `max(0, degree - min(capacity, x) + 1)`.
pub fn demand(degree: usize, capacity: usize, x: usize) -> usize {
    (degree + 1).saturating_sub(capacity.min(x))
}

pub fn lower_demand(g: &Graph, v: NodeId, x: usize) -> usize {
    demand(g.degree(v), g.capacity(v), x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: NodeId,
    pub edges: Vec<usize>,
}

/// Edge partition into stars, ordered by center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    pub stars: Vec<Star>,
}

impl StarDecomposition {
    /// For every node, the number of stars having an edge at that node.
    pub fn stars_touching(&self, g: &Graph) -> Vec<usize> {
        let mut touching = vec![0; g.node_count()];
        for star in &self.stars {
            let nodes: BTreeSet<NodeId> = star
                .edges
                .iter()
                .flat_map(|&e| g.edge(e).iter().copied())
                .collect();
            for v in nodes {
                touching[v.0] += 1;
            }
        }
        touching
    }
}

pub fn extract_stars(g: &Graph, c: &PartialColoring) -> Result<StarDecomposition, ColoringError> {
    c.check_complete(g)?;
    let mut by_center: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for e in 0..g.edge_count() {
        by_center[c.owner(e).expect("checked complete").0].push(e);
    }
    let stars = by_center
        .into_iter()
        .enumerate()
        .filter(|(_, edges)| !edges.is_empty())
        .map(|(v, edges)| Star {
            center: NodeId(v),
            edges,
        })
        .collect();
    Ok(StarDecomposition { stars })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the {solver} solver does not handle {kind} graphs")]
    UnsupportedKind {
        kind: GraphKind,
        solver: &'static str,
    },
    #[error("node {node} has capacity below its degree, but a capacity-free graph is required")]
    CapacitiesPresent { node: NodeId },
    #[error("node {node} sees more colors than its capacity allows")]
    InvalidColoring { node: NodeId },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Optimal objective value: a finite star count or infeasibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Objective {
    Finite(usize),
    Infeasible,
}

impl Objective {
    pub fn finite(self) -> Option<usize> {
        match self {
            Objective::Finite(x) => Some(x),
            Objective::Infeasible => None,
        }
    }

    pub fn is_feasible(self) -> bool {
        matches!(self, Objective::Finite(_))
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Finite(x) => write!(f, "{x}"),
            Objective::Infeasible => f.write_str("INFEASIBLE"),
        }
    }
}

/// Optimal value and a witness coloring. The witness is complete and achieves
/// `value` whenever the value is finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: Objective,
    pub witness: PartialColoring,
}

/// Optimal maximum indegree and a witness orientation (absent when infeasible).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndResult {
    pub value: Objective,
    pub orientation: Option<Orientation>,
}
