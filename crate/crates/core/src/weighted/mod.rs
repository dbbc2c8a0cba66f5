//! Node-weighted versions of both problems.
//!
//! Under an orientation, the weighted indegree of `v` is the total weight of
//! the tails of its incoming edges. Its weighted star value adds `w_v` when
//! `v` has an outgoing edge, i.e. when `v` colors a star of its own.

pub mod approx;
pub mod binpacking;
pub mod gadget;
pub mod lp;

use thiserror::Error;

use crate::coloring::{ColoringError, Orientation};
use crate::graph::{Graph, GraphError, GraphKind, NodeId};

pub use approx::{approx2_wind, approx4_wstar, lp_feasible, round_fractional, FractionalOrientation};
pub use binpacking::{binpacking_to_wind, extract_packing, packing_to_orientation, BinPackingInstance};
pub use gadget::{gadget_transform, GadgetReduction};

/// Largest edge count accepted by [`brute_force_weighted`].
pub const WEIGHTED_EDGE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightedError {
    #[error("graph has {edges} edges, brute force is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("weighted problems need a simple graph, got {0}")]
    NotSimple(GraphKind),
    #[error("fractional edges contain a component with more than one cycle")]
    NotPseudoforest,
    #[error("item {item} has no edge directed toward a bin")]
    NoOutgoingEdge { item: usize },
    #[error("invalid bin packing instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightedObjective {
    Indegree,
    Star,
}

/// Best value found and an orientation attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedResult {
    pub value: u64,
    pub orientation: Orientation,
}

pub(crate) fn require_simple(g: &Graph) -> Result<(), WeightedError> {
    match g.kind() {
        GraphKind::Simple => Ok(()),
        kind => Err(WeightedError::NotSimple(kind)),
    }
}

pub fn weighted_indeg_value(g: &Graph, o: &Orientation, v: NodeId) -> u64 {
    g.incident(v)
        .iter()
        .filter(|&&e| o.head(e) == v)
        .map(|&e| g.weight(o.tail(g, e)))
        .sum()
}

pub fn weighted_star_value(g: &Graph, o: &Orientation, v: NodeId) -> u64 {
    let owns_any = g.incident(v).iter().any(|&e| o.head(e) != v);
    weighted_indeg_value(g, o, v) + if owns_any { g.weight(v) } else { 0 }
}

/// Per-node values for the chosen objective.
pub fn weighted_values(g: &Graph, o: &Orientation, objective: WeightedObjective) -> Vec<u64> {
    g.nodes()
        .map(|v| match objective {
            WeightedObjective::Indegree => weighted_indeg_value(g, o, v),
            WeightedObjective::Star => weighted_star_value(g, o, v),
        })
        .collect()
}

pub fn weighted_value(g: &Graph, o: &Orientation, objective: WeightedObjective) -> u64 {
    weighted_values(g, o, objective).into_iter().max().unwrap_or(0)
}

struct Search<'g> {
    g: &'g Graph,
    objective: WeightedObjective,
    load: Vec<u64>,
    out: Vec<usize>,
    heads: Vec<NodeId>,
    /// Every load must stay at or below this.
    cap: u64,
    best: Option<(u64, Vec<NodeId>)>,
    /// Stop at the first complete orientation instead of optimizing.
    first_only: bool,
}

impl Search<'_> {
    fn place(&mut self, head: NodeId, tail: NodeId) -> bool {
        let w = self.g.weight(tail);
        self.load[head.0] += w;
        let mut ok = self.load[head.0] <= self.cap;
        if self.objective == WeightedObjective::Star && self.out[tail.0] == 0 {
            self.load[tail.0] += w;
            ok &= self.load[tail.0] <= self.cap;
        }
        self.out[tail.0] += 1;
        self.heads.push(head);
        ok
    }

    fn unplace(&mut self, head: NodeId, tail: NodeId) {
        let w = self.g.weight(tail);
        self.load[head.0] -= w;
        self.out[tail.0] -= 1;
        if self.objective == WeightedObjective::Star && self.out[tail.0] == 0 {
            self.load[tail.0] -= w;
        }
        self.heads.pop();
    }

    /// Returns true when the search should stop.
    fn run(&mut self, e: usize) -> bool {
        // The cap may have dropped since the current loads were placed.
        if self.load.iter().any(|&l| l > self.cap) {
            return false;
        }
        if e == self.g.edge_count() {
            let value = self.load.iter().copied().max().unwrap_or(0);
            self.best = Some((value, self.heads.clone()));
            if self.first_only || value == 0 {
                return true;
            }
            // Only strictly better orientations are of interest from now on.
            self.cap = value - 1;
            return false;
        }
        let edge = self.g.edge(e);
        for (head, tail) in [(edge[1], edge[0]), (edge[0], edge[1])] {
            let ok = self.place(head, tail);
            let stop = ok && self.run(e + 1);
            self.unplace(head, tail);
            if stop {
                return true;
            }
        }
        false
    }
}

fn search(g: &Graph, objective: WeightedObjective, cap: u64, first_only: bool) -> Option<(u64, Vec<NodeId>)> {
    let mut s = Search {
        g,
        objective,
        load: vec![0; g.node_count()],
        out: vec![0; g.node_count()],
        heads: Vec::with_capacity(g.edge_count()),
        cap,
        best: None,
        first_only,
    };
    s.run(0);
    s.best
}

/// Exact optimum by branch and bound over all orientations.
pub fn brute_force_weighted(g: &Graph, objective: WeightedObjective) -> Result<WeightedResult, WeightedError> {
    require_simple(g)?;
    if g.edge_count() > WEIGHTED_EDGE_LIMIT {
        return Err(WeightedError::TooLarge {
            edges: g.edge_count(),
            limit: WEIGHTED_EDGE_LIMIT,
        });
    }
    let (value, heads) = search(g, objective, u64::MAX, false).expect("every graph has an orientation");
    Ok(WeightedResult {
        value,
        orientation: Orientation::from_heads(heads),
    })
}

/// An orientation of value at most `bound`, if one exists. Unlike
/// [`brute_force_weighted`] there is no size guard; pruning on the bound is
/// what keeps this fast on structured inputs.
pub fn decide_weighted(
    g: &Graph,
    objective: WeightedObjective,
    bound: u64,
) -> Result<Option<Orientation>, WeightedError> {
    require_simple(g)?;
    Ok(search(g, objective, bound, true).map(|(_, heads)| Orientation::from_heads(heads)))
}
