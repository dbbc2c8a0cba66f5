//! Exact values and witnesses for graph families with a known optimum.
//!
//! Only simple graphs without effective capacities (every `κ_v ≥ δ(v)`) are
//! recognized, since the formulas assume capacities never bind.

use std::collections::VecDeque;

use crate::coloring::PartialColoring;
use crate::graph::{Graph, GraphKind, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Edgeless,
    /// A star, i.e. a tree of diameter at most two.
    Star,
    /// Connected, at most one cycle, and not a star.
    Pseudoforest,
    /// `K_{n,n}` with `n ≥ 2`.
    CompleteBipartite { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub family: Family,
    pub value: usize,
    pub witness: PartialColoring,
}

pub fn closed_form(g: &Graph) -> Option<ClosedForm> {
    if g.kind() != GraphKind::Simple || !g.capacity_free() {
        return None;
    }
    let (n, m) = (g.node_count(), g.edge_count());
    if m == 0 {
        return Some(ClosedForm {
            family: Family::Edgeless,
            value: 0,
            witness: PartialColoring::uncolored(0),
        });
    }
    if let Some(sides) = complete_bipartite_sides(g) {
        let k = sides.0.len();
        if k >= 2 {
            return Some(ClosedForm {
                family: Family::CompleteBipartite { n: k },
                value: k.div_ceil(2) + 1,
                witness: knn_witness(g, &sides.0, &sides.1),
            });
        }
    }
    if m + 1 == n && eccentricity_max(g) <= 2 {
        return Some(ClosedForm {
            family: Family::Star,
            value: 1,
            witness: star_witness(g),
        });
    }
    if m <= n {
        return Some(ClosedForm {
            family: Family::Pseudoforest,
            value: 2,
            witness: pseudoforest_witness(g),
        });
    }
    None
}

fn bfs(g: &Graph, root: NodeId, skip_edge: Option<usize>) -> (Vec<usize>, Vec<Option<(NodeId, usize)>>) {
    let mut dist = vec![usize::MAX; g.node_count()];
    let mut parent = vec![None; g.node_count()];
    dist[root.0] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &e in g.incident(u) {
            if Some(e) == skip_edge {
                continue;
            }
            let w = g.other_endpoint(e, u);
            if dist[w.0] == usize::MAX {
                dist[w.0] = dist[u.0] + 1;
                parent[w.0] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Graph diameter by BFS from every node.
fn eccentricity_max(g: &Graph) -> usize {
    g.nodes()
        .map(|v| bfs(g, v, None).0.into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

/// Centers own their edges; a lone edge goes to its lower endpoint.
fn star_witness(g: &Graph) -> PartialColoring {
    let owners = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (e[0].min(e[1]), e[0].max(e[1]));
            if g.degree(b) > 1 {
                b
            } else {
                a
            }
        })
        .collect();
    PartialColoring::complete(owners)
}

/// Tree edges are owned by the parent. If there is a cycle, one of its edges
/// `{r, w}` is cut, the tree is rooted at `r` and the cut edge goes to `w`.
fn pseudoforest_witness(g: &Graph) -> PartialColoring {
    let (_, parent) = bfs(g, NodeId(0), None);
    let tree: Vec<bool> = {
        let mut t = vec![false; g.edge_count()];
        for (_, e) in parent.iter().flatten() {
            t[*e] = true;
        }
        t
    };
    let cut = (0..g.edge_count()).find(|&e| !tree[e]);
    let root = cut.map_or(NodeId(0), |e| g.edge(e)[0]);
    let (_, parent) = bfs(g, root, cut);
    let mut owners = vec![NodeId(0); g.edge_count()];
    for (v, p) in parent.iter().enumerate() {
        if let Some((u, e)) = p {
            debug_assert_ne!(*u, NodeId(v));
            owners[*e] = *u;
        }
    }
    if let Some(e) = cut {
        owners[e] = g.other_endpoint(e, root);
    }
    PartialColoring::complete(owners)
}

/// The two sides, each sorted, if `g` is `K_{k,k}` for some `k`.
fn complete_bipartite_sides(g: &Graph) -> Option<(Vec<NodeId>, Vec<NodeId>)> {
    let n = g.node_count();
    if !n.is_multiple_of(2) {
        return None;
    }
    let k = n / 2;
    if g.edge_count() != k * k || g.nodes().any(|v| g.degree(v) != k) {
        return None;
    }
    let (dist, _) = bfs(g, NodeId(0), None);
    let (left, right): (Vec<NodeId>, Vec<NodeId>) = g.nodes().partition(|v| dist[v.0] % 2 == 0);
    if left.len() != k {
        return None;
    }
    // k-regular with k*k edges and every edge crossing the parity split.
    let crossing = g
        .edges()
        .iter()
        .all(|e| dist[e[0].0] % 2 != dist[e[1].0] % 2);
    crossing.then_some((left, right))
}

/// With `h = ⌊k/2⌋`: for `i ≤ h` the edge `{l_i, r_j}` points to `r_j` iff
/// `j ≤ h`; for `i > h` it points to `r_j` iff `j > h` (1-based indices).
fn knn_witness(g: &Graph, left: &[NodeId], right: &[NodeId]) -> PartialColoring {
    let h = left.len() / 2;
    let pos = |side: &[NodeId], v: NodeId| side.iter().position(|&u| u == v);
    let owners = g
        .edges()
        .iter()
        .map(|e| {
            let (l, r) = match pos(left, e[0]) {
                Some(_) => (e[0], e[1]),
                None => (e[1], e[0]),
            };
            let i = pos(left, l).expect("left endpoint") + 1;
            let j = pos(right, r).expect("right endpoint") + 1;
            let to_right = if i <= h { j <= h } else { j > h };
            // The owner is the tail.
            if to_right {
                l
            } else {
                r
            }
        })
        .collect();
    PartialColoring::complete(owners)
}
