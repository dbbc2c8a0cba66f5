//! Bin packing to weighted indegree.
//!
//! Items and bins become the two sides of a complete bipartite graph. Item
//! `i` weighs `s_i·(K−1)`, every bin weighs `c`, and the threshold is
//! `c·(K−1)`. An item receiving edges from all `K` bins would carry `K·c`,
//! so every item points to at least one bin, and a bin stays under the
//! threshold iff the items pointing to it fit into capacity `c`.

use crate::coloring::Orientation;
use crate::graph::{Graph, GraphBuilder, GraphKind, NodeId};

use super::WeightedError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinPackingInstance {
    pub sizes: Vec<u64>,
    pub bins: usize,
    pub capacity: u64,
}

impl BinPackingInstance {
    pub fn new(sizes: Vec<u64>, bins: usize, capacity: u64) -> Result<Self, WeightedError> {
        let bp = BinPackingInstance {
            sizes,
            bins,
            capacity,
        };
        bp.validate()?;
        Ok(bp)
    }

    pub fn validate(&self) -> Result<(), WeightedError> {
        let bad = |msg: &str| Err(WeightedError::InvalidInstance(msg.to_string()));
        if self.bins < 2 {
            return bad("need at least two bins");
        }
        if self.sizes.is_empty() {
            return bad("need at least one item");
        }
        if self.sizes.contains(&0) || self.capacity == 0 {
            return bad("sizes and capacity must be positive");
        }
        Ok(())
    }

    pub fn item_node(&self, i: usize) -> NodeId {
        NodeId(i)
    }

    pub fn bin_node(&self, j: usize) -> NodeId {
        NodeId(self.sizes.len() + j)
    }

    /// Id of the edge between item `i` and bin `j`.
    pub fn edge_id(&self, i: usize, j: usize) -> usize {
        i * self.bins + j
    }

    /// Threshold of the weighted indegree instance.
    pub fn threshold(&self) -> u64 {
        self.capacity * (self.bins as u64 - 1)
    }

    /// Total size per bin for an assignment of items to bins.
    pub fn loads(&self, assignment: &[usize]) -> Vec<u64> {
        let mut loads = vec![0; self.bins];
        for (i, &j) in assignment.iter().enumerate() {
            loads[j] += self.sizes[i];
        }
        loads
    }

    pub fn fits(&self, assignment: &[usize]) -> bool {
        assignment.len() == self.sizes.len()
            && assignment.iter().all(|&j| j < self.bins)
            && self.loads(assignment).iter().all(|&l| l <= self.capacity)
    }
}

/// The weighted graph and its indegree threshold.
pub fn binpacking_to_wind(bp: &BinPackingInstance) -> Result<(Graph, u64), WeightedError> {
    bp.validate()?;
    let n = bp.sizes.len();
    let scale = bp.bins as u64 - 1;
    let mut b = GraphBuilder::new(GraphKind::Simple, n + bp.bins);
    b.weights(
        bp.sizes
            .iter()
            .map(|s| s * scale)
            .chain(std::iter::repeat_n(bp.capacity, bp.bins)),
    );
    b.edges((0..n).flat_map(|i| (0..bp.bins).map(move |j| [i, n + j])));
    Ok((b.build()?, bp.threshold()))
}

/// Puts every item into the lowest-numbered bin its edge points to.
pub fn extract_packing(bp: &BinPackingInstance, o: &Orientation) -> Result<Vec<usize>, WeightedError> {
    (0..bp.sizes.len())
        .map(|i| {
            (0..bp.bins)
                .find(|&j| o.head(bp.edge_id(i, j)) == bp.bin_node(j))
                .ok_or(WeightedError::NoOutgoingEdge { item: i })
        })
        .collect()
}

/// Each item points to its bin; every other edge points from the bin to the item.
pub fn packing_to_orientation(bp: &BinPackingInstance, assignment: &[usize]) -> Orientation {
    let mut heads = Vec::with_capacity(bp.sizes.len() * bp.bins);
    for (i, &chosen) in assignment.iter().enumerate() {
        for j in 0..bp.bins {
            heads.push(if j == chosen { bp.bin_node(j) } else { bp.item_node(i) });
        }
    }
    Orientation::from_heads(heads)
}

/// A feasible packing by exhaustive search, if one exists.
pub fn exhaustive_packing(bp: &BinPackingInstance) -> Option<Vec<usize>> {
    fn go(bp: &BinPackingInstance, i: usize, loads: &mut [u64], out: &mut Vec<usize>) -> bool {
        if i == bp.sizes.len() {
            return true;
        }
        for j in 0..bp.bins {
            if loads[j] + bp.sizes[i] <= bp.capacity {
                loads[j] += bp.sizes[i];
                out.push(j);
                if go(bp, i + 1, loads, out) {
                    return true;
                }
                out.pop();
                loads[j] -= bp.sizes[i];
            }
        }
        false
    }
    let mut loads = vec![0; bp.bins];
    let mut out = Vec::new();
    go(bp, 0, &mut loads, &mut out).then_some(out)
}
