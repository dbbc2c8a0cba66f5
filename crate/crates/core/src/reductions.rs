//! Min-max indegree through star partitioning.
//!
//! Attaching a pendant copy `v'` to every node `v` and raising `κ_v` by one
//! turns an indegree instance into a star instance whose optimum is exactly
//! one larger. The copy's edge always lands in `v`'s own star, so every other
//! color at `v` is an incoming edge.

use crate::coloring::{
    color_counts, orientation_to_owner, IndResult, Objective, Orientation, PartialColoring, SolveError,
};
use crate::flow::minimum_star_coloring_flow;
use crate::graph::{Graph, GraphBuilder, GraphKind, NodeId};

/// An indegree instance and the star instance built from it.
///
/// Node `v` of the original keeps its id; its copy is `n + v`. Edge `e` keeps
/// its id; the pendant edge `{v, v'}` is `m + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantReduction {
    pub original: Graph,
    pub reduced: Graph,
}

impl PendantReduction {
    pub fn pendant_node(&self, v: NodeId) -> NodeId {
        NodeId(self.original.node_count() + v.0)
    }

    pub fn pendant_edge(&self, v: NodeId) -> usize {
        self.original.edge_count() + v.0
    }

    /// Inverse of [`pendant_node`](Self::pendant_node).
    pub fn original_of(&self, copy: NodeId) -> Option<NodeId> {
        copy.0
            .checked_sub(self.original.node_count())
            .filter(|&v| v < self.original.node_count())
            .map(NodeId)
    }
}

fn require_simple(g: &Graph) -> Result<(), SolveError> {
    if g.kind() != GraphKind::Simple {
        return Err(SolveError::UnsupportedKind {
            kind: g.kind(),
            solver: "indegree reduction",
        });
    }
    Ok(())
}

pub fn ind_to_star(g: &Graph) -> Result<PendantReduction, SolveError> {
    require_simple(g)?;
    let n = g.node_count();
    let mut b = GraphBuilder::new(GraphKind::Simple, 2 * n);
    b.capacities(
        g.capacities()
            .iter()
            .map(|&k| k + 1)
            .chain(std::iter::repeat_n(1, n)),
    )
    .weights(g.weights().iter().copied().chain(std::iter::repeat_n(1, n)));
    b.edges(g.edges().iter().map(|e| [e[0].0, e[1].0]));
    b.edges((0..n).map(|v| [v, n + v]));
    Ok(PendantReduction {
        original: g.clone(),
        reduced: b.build()?,
    })
}

/// Reads an orientation of the original graph off a valid coloring of the
/// reduced graph. Pendant edges are first given to their original node,
/// which never increases any color count; then every original edge points
/// away from its owner.
pub fn recover_ind_solution(red: &PendantReduction, c: &PartialColoring) -> Result<Orientation, SolveError> {
    let g2 = &red.reduced;
    let counts = color_counts(g2, c)?;
    if let Some(v) = g2.nodes().find(|&v| counts[v.0] > g2.capacity(v)) {
        return Err(SolveError::InvalidColoring { node: v });
    }
    let g = &red.original;
    let heads = (0..g.edge_count())
        .map(|e| g.other_endpoint(e, c.owner(e).expect("checked complete")))
        .collect();
    Ok(Orientation::from_heads(heads))
}

/// The normalized coloring of the reduced graph: `c` with every pendant edge
/// owned by its original node.
pub fn normalize_pendants(red: &PendantReduction, c: &PartialColoring) -> PartialColoring {
    let mut c = c.clone();
    for v in red.original.nodes() {
        c.set_owner(red.pendant_edge(v), v);
    }
    c
}

/// Optimal maximum indegree under the capacities `δ⁻(v) ≤ κ_v`.
pub fn solve_min_max_ind(g: &Graph) -> Result<IndResult, SolveError> {
    let red = ind_to_star(g)?;
    let star = minimum_star_coloring_flow(&red.reduced)?;
    match star.value {
        Objective::Infeasible => Ok(IndResult {
            value: Objective::Infeasible,
            orientation: None,
        }),
        Objective::Finite(x) => Ok(IndResult {
            value: Objective::Finite(x - 1),
            orientation: Some(recover_ind_solution(&red, &star.witness)?),
        }),
    }
}

/// One orientation that is optimal for both problems at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simultaneous {
    pub orientation: Orientation,
    pub x_star: usize,
    pub k_star: usize,
}

/// Both optima and an orientation attaining them, for graphs whose
/// capacities never bind. If `x* = k* + 1` the indegree-optimal orientation
/// also has star value `x*`; otherwise `x* = k*` and the star-optimal one has
/// indegree at most `x*`.
pub fn simultaneous_optimum(g: &Graph) -> Result<Simultaneous, SolveError> {
    require_simple(g)?;
    if let Some(node) = g.nodes().find(|&v| g.capacity(v) < g.degree(v)) {
        return Err(SolveError::CapacitiesPresent { node });
    }
    let star = minimum_star_coloring_flow(g)?;
    let ind = solve_min_max_ind(g)?;
    let (Objective::Finite(x), Objective::Finite(k)) = (star.value, ind.value) else {
        unreachable!("capacity-free graphs are always feasible");
    };
    let orientation = if x == k + 1 {
        ind.orientation.expect("finite value has a witness")
    } else {
        crate::coloring::owner_to_orientation(g, &star.witness)?
    };
    Ok(Simultaneous {
        orientation,
        x_star: x,
        k_star: k,
    })
}

/// Star value of an orientation read as a coloring.
pub fn orientation_star_value(g: &Graph, o: &Orientation) -> Result<usize, SolveError> {
    let c = orientation_to_owner(g, o)?;
    Ok(color_counts(g, &c)?.into_iter().max().unwrap_or(0))
}
