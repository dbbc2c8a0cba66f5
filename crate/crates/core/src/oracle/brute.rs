//! Exhaustive search for `x*` and `k*`.
//!
//! Both searches ask "is there a solution of value at most `b`?" for
//! `b = 0, 1, 2, ...` and return the first yes. Each decision is a
//! depth-first search over the edges in id order that picks an owner (or a
//! head) per edge and backtracks as soon as some node exceeds `min(κ_v, b)`.
//! Counts only grow along a branch, so the pruning never cuts a solution.

use thiserror::Error;

use crate::coloring::{IndResult, Objective, Orientation, PartialColoring, SolveResult};
use crate::graph::{Graph, GraphKind, NodeId};

/// Largest edge count accepted by [`brute_force_xstar`] and [`brute_force_kstar`].
pub const EDGE_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {edges} edges, brute force is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("edge {edge} does not have exactly two endpoints")]
    NotOrientable { edge: usize },
}

fn guard(g: &Graph) -> Result<(), OracleError> {
    if g.edge_count() > EDGE_LIMIT {
        return Err(OracleError::TooLarge {
            edges: g.edge_count(),
            limit: EDGE_LIMIT,
        });
    }
    Ok(())
}

struct OwnerSearch<'g> {
    g: &'g Graph,
    limit: Vec<usize>,
    /// `seen[v * n + o]`: incident edges of `v` owned by `o`.
    seen: Vec<u16>,
    distinct: Vec<usize>,
    owners: Vec<NodeId>,
}

impl OwnerSearch<'_> {
    fn assign(&mut self, e: usize, o: NodeId) -> bool {
        let n = self.g.node_count();
        let mut ok = true;
        for &v in self.g.edge(e) {
            let slot = &mut self.seen[v.0 * n + o.0];
            *slot += 1;
            if *slot == 1 {
                self.distinct[v.0] += 1;
                ok &= self.distinct[v.0] <= self.limit[v.0];
            }
        }
        self.owners.push(o);
        ok
    }

    fn unassign(&mut self, e: usize, o: NodeId) {
        let n = self.g.node_count();
        for &v in self.g.edge(e) {
            let slot = &mut self.seen[v.0 * n + o.0];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[v.0] -= 1;
            }
        }
        self.owners.pop();
    }

    fn search(&mut self, e: usize) -> bool {
        if e == self.g.edge_count() {
            return true;
        }
        let g = self.g;
        let edge = g.edge(e);
        for (i, &o) in edge.iter().enumerate() {
            // A node listed twice (never in valid graphs) would be tried twice.
            if edge[..i].contains(&o) {
                continue;
            }
            let ok = self.assign(e, o);
            if ok && self.search(e + 1) {
                return true;
            }
            self.unassign(e, o);
        }
        false
    }
}

/// A valid coloring with value at most `bound`, if one exists. No size guard.
pub fn decide_xstar(g: &Graph, bound: usize) -> Option<PartialColoring> {
    let n = g.node_count();
    let mut s = OwnerSearch {
        g,
        limit: g.nodes().map(|v| g.capacity(v).min(bound)).collect(),
        seen: vec![0; n * n],
        distinct: vec![0; n],
        owners: Vec::with_capacity(g.edge_count()),
    };
    s.search(0).then(|| PartialColoring::complete(s.owners))
}

/// Exact `x*` over every complete coloring; works for all graph kinds. A
/// self-loop only has its own node as candidate owner.
pub fn brute_force_xstar(g: &Graph) -> Result<SolveResult, OracleError> {
    guard(g)?;
    let top = g.max_degree();
    for bound in 0..=top {
        if let Some(witness) = decide_xstar(g, bound) {
            return Ok(SolveResult {
                value: Objective::Finite(bound),
                witness,
            });
        }
    }
    Ok(SolveResult {
        value: Objective::Infeasible,
        witness: PartialColoring::uncolored(g.edge_count()),
    })
}

/// An orientation with every indegree at most `min(κ_v, bound)`, if one exists.
pub fn decide_kstar(g: &Graph, bound: usize) -> Result<Option<Orientation>, OracleError> {
    if let Some(edge) = g.edges().iter().position(|e| e.len() != 2) {
        return Err(OracleError::NotOrientable { edge });
    }
    let limit: Vec<usize> = g.nodes().map(|v| g.capacity(v).min(bound)).collect();
    let mut indeg = vec![0usize; g.node_count()];
    let mut heads = Vec::with_capacity(g.edge_count());

    fn go(g: &Graph, e: usize, limit: &[usize], indeg: &mut [usize], heads: &mut Vec<NodeId>) -> bool {
        if e == g.edge_count() {
            return true;
        }
        let edge = g.edge(e);
        // Pointing at the higher endpoint first matches `Orientation::toward_higher`.
        let order = if edge[0] > edge[1] { [edge[0], edge[1]] } else { [edge[1], edge[0]] };
        for h in order {
            if indeg[h.0] < limit[h.0] {
                indeg[h.0] += 1;
                heads.push(h);
                if go(g, e + 1, limit, indeg, heads) {
                    return true;
                }
                heads.pop();
                indeg[h.0] -= 1;
            }
        }
        false
    }

    Ok(go(g, 0, &limit, &mut indeg, &mut heads).then(|| Orientation::from_heads(heads)))
}

/// Exact `k*`: minimum over capacity-respecting orientations of the maximum indegree.
pub fn brute_force_kstar(g: &Graph) -> Result<IndResult, OracleError> {
    guard(g)?;
    for bound in 0..=g.edge_count() {
        if let Some(orientation) = decide_kstar(g, bound)? {
            return Ok(IndResult {
                value: Objective::Finite(bound),
                orientation: Some(orientation),
            });
        }
    }
    Ok(IndResult {
        value: Objective::Infeasible,
        orientation: None,
    })
}

/// Every connected simple graph on nodes `0..n` (labelled, so isomorphic
/// copies all appear). Capacities default to the maximum degree.
pub fn enumerate_connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1, "need at least one node");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    assert!(pairs.len() < 32, "too many node pairs to enumerate");
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if let Ok(g) = Graph::simple(n, &edges) {
            debug_assert_eq!(g.kind(), GraphKind::Simple);
            out.push(g);
        }
    }
    out
}
