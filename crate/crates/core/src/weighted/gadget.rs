//! Weighted indegree to weighted star partition.
//!
//! Every node `v` gets a 9-node, 10-edge gadget. With `M = k + 2·max w`, the
//! weights are chosen so that in any orientation of star value at most
//! `M + k` the edge `{v, ṽ}` leaves `v` and `{v, v1}` enters `v`. Then `v`
//! already pays `w_v + (M − w_v) = M` and its original incoming edges may
//! add at most `k`.

use crate::coloring::Orientation;
use crate::graph::{Graph, GraphBuilder, GraphKind, NodeId};

use super::{require_simple, WeightedError};

/// Node ids of the gadget attached to one original node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget {
    pub v1: NodeId,
    pub v2: NodeId,
    pub v3: NodeId,
    pub v4: NodeId,
    /// Pendant partners of `v, v1, v2, v3, v4`, in that order.
    pub tilde: [NodeId; 5],
    /// Id of the first of the gadget's 10 edges in the reduced graph.
    pub first_edge: usize,
}

pub const GADGET_NODES: usize = 9;
pub const GADGET_EDGES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReduction {
    pub original: Graph,
    pub k: u64,
    /// `k + 2·max w`.
    pub big_m: u64,
    /// Original edges first, with their ids unchanged, then the gadgets.
    pub reduced: Graph,
    pub gadgets: Vec<Gadget>,
}

impl GadgetReduction {
    /// Star-value bound that corresponds to indegree bound `k`.
    pub fn star_bound(&self) -> u64 {
        self.big_m + self.k
    }

    /// Gadget edge ids in the order `{v,v1}, {v1,v2}, {v2,v3}, {v2,v4},
    /// {v3,v4}, {v,ṽ}, {v1,ṽ1}, {v2,ṽ2}, {v3,ṽ3}, {v4,ṽ4}`.
    pub fn gadget_edges(&self, v: NodeId) -> std::ops::Range<usize> {
        let first = self.gadgets[v.0].first_edge;
        first..first + GADGET_EDGES
    }

    /// The orientation that extends `o` to the reduced graph with value at
    /// most `M + k` whenever `o` has weighted indegree at most `k`.
    pub fn extend(&self, o: &Orientation) -> Orientation {
        let mut heads = o.heads().to_vec();
        for (v, gd) in self.gadgets.iter().enumerate() {
            let v = NodeId(v);
            let [tv, t1, t2, t3, t4] = gd.tilde;
            // Heads of the 10 gadget edges in gadget_edges order.
            heads.extend([v, gd.v1, gd.v3, gd.v2, gd.v4, tv, t1, t2, t3, t4]);
        }
        Orientation::from_heads(heads)
    }

    /// The original edges of an orientation of the reduced graph.
    pub fn restrict(&self, o: &Orientation) -> Orientation {
        Orientation::from_heads(o.heads()[..self.original.edge_count()].to_vec())
    }
}

pub fn gadget_transform(g: &Graph, k: u64) -> Result<GadgetReduction, WeightedError> {
    require_simple(g)?;
    let n = g.node_count();
    let m = g.edge_count();
    let max_w = g.weights().iter().copied().max().unwrap_or(1);
    let big_m = k + 2 * max_w;
    let mut weights: Vec<u64> = g.weights().to_vec();
    weights.resize(n + GADGET_NODES * n, 0);
    let mut b = GraphBuilder::new(GraphKind::Simple, n + GADGET_NODES * n);
    b.edges(g.edges().iter().map(|e| [e[0].0, e[1].0]));
    let mut gadgets = Vec::with_capacity(n);
    for v in 0..n {
        let base = n + GADGET_NODES * v;
        let [v1, v2, v3, v4] = [base, base + 1, base + 2, base + 3];
        let tilde = [base + 4, base + 5, base + 6, base + 7, base + 8];
        let w = g.weight(NodeId(v));
        weights[v1] = big_m - w;
        weights[v4] = big_m - w;
        weights[v2] = k + w;
        weights[v3] = k + w;
        for t in tilde {
            weights[t] = big_m + k + 1;
        }
        b.edges([[v, v1], [v1, v2], [v2, v3], [v2, v4], [v3, v4]]);
        b.edges([v, v1, v2, v3, v4].into_iter().zip(tilde).map(|(a, t)| [a, t]));
        gadgets.push(Gadget {
            v1: NodeId(v1),
            v2: NodeId(v2),
            v3: NodeId(v3),
            v4: NodeId(v4),
            tilde: tilde.map(NodeId),
            first_edge: m + GADGET_EDGES * v,
        });
    }
    b.weights(weights);
    Ok(GadgetReduction {
        original: g.clone(),
        k,
        big_m,
        reduced: b.build()?,
        gadgets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weighted::{decide_weighted, weighted_value, WeightedObjective};

    #[test]
    fn single_node_gadget_weights() {
        let g = GraphBuilder::new(GraphKind::Simple, 1).weight(0, 3).build().unwrap();
        let red = gadget_transform(&g, 2).unwrap();
        assert_eq!(red.big_m, 8);
        let w = red.reduced.weights();
        let gd = red.gadgets[0];
        assert_eq!([w[gd.v1.0], w[gd.v4.0], w[gd.v2.0], w[gd.v3.0]], [5, 5, 5, 5]);
        assert!(gd.tilde.iter().all(|t| w[t.0] == 11));
        assert_eq!(red.reduced.node_count(), 10);
        assert_eq!(red.reduced.edge_count(), 10);
    }

    #[test]
    fn extension_meets_the_bound() {
        let g = GraphBuilder::new(GraphKind::Simple, 3)
            .weights([2, 3, 1])
            .edges([[0, 1], [1, 2]])
            .build()
            .unwrap();
        let o = Orientation::from_heads(vec![NodeId(1), NodeId(2)]);
        let k = weighted_value(&g, &o, WeightedObjective::Indegree);
        let red = gadget_transform(&g, k).unwrap();
        let ext = red.extend(&o);
        ext.check_against(&red.reduced).unwrap();
        assert!(weighted_value(&red.reduced, &ext, WeightedObjective::Star) <= red.star_bound());
        assert_eq!(red.restrict(&ext), o);
    }

    #[test]
    fn below_optimum_is_no_on_both_sides() {
        let g = GraphBuilder::new(GraphKind::Simple, 2)
            .weights([2, 3])
            .edge([0, 1])
            .build()
            .unwrap();
        // The optimum weighted indegree is 2.
        let red = gadget_transform(&g, 1).unwrap();
        assert!(decide_weighted(&g, WeightedObjective::Indegree, 1).unwrap().is_none());
        assert!(decide_weighted(&red.reduced, WeightedObjective::Star, red.star_bound())
            .unwrap()
            .is_none());
    }
}
