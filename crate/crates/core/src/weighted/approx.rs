//! LP-rounding approximations for the weighted problems.
//!
//! Orienting an edge toward `u` is a job of length `w_other` placed on
//! machine `u`. The LP relaxation at threshold `T` forbids placements longer
//! than `T` and caps every load at `T`. In a vertex solution the edges that
//! are split between both endpoints form a pseudoforest, so each node can be
//! handed at most one of them, which costs at most another `T`.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coloring::Orientation;
use crate::graph::{Graph, NodeId};

use super::lp::{basic_feasible_solution, int, EqualityLp, PivotRule};
use super::{require_simple, weighted_value, WeightedError, WeightedObjective};

/// `shares[e][i]` is the fraction of edge `e` directed toward its endpoint `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalOrientation {
    pub threshold: u64,
    pub shares: Vec<[BigRational; 2]>,
}

impl FractionalOrientation {
    pub fn is_fractional(&self, e: usize) -> bool {
        !self.shares[e][0].is_zero() && !self.shares[e][1].is_zero()
    }

    /// Weighted fractional indegree of every node.
    pub fn loads(&self, g: &Graph) -> Vec<BigRational> {
        let mut loads = vec![BigRational::zero(); g.node_count()];
        for (e, share) in self.shares.iter().enumerate() {
            let edge = g.edge(e);
            for i in 0..2 {
                loads[edge[i].0] += &share[i] * int(g.weight(edge[1 - i]) as i64);
            }
        }
        loads
    }
}

pub fn lp_feasible(g: &Graph, threshold: u64) -> Result<Option<FractionalOrientation>, WeightedError> {
    lp_feasible_with(g, threshold, PivotRule::Bland)
}

fn lp_feasible_with(
    g: &Graph,
    threshold: u64,
    rule: PivotRule,
) -> Result<Option<FractionalOrientation>, WeightedError> {
    require_simple(g)?;
    let mut columns = Vec::new();
    let mut column_of = vec![[None, None]; g.edge_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        for i in 0..2 {
            if g.weight(edge[1 - i]) <= threshold {
                column_of[e][i] = Some(columns.len());
                columns.push((e, i));
            }
        }
        if column_of[e] == [None, None] {
            return Ok(None);
        }
    }
    let slack = columns.len();
    let mut lp = EqualityLp::new(slack + g.node_count());
    for cols in &column_of {
        let terms: Vec<_> = cols.iter().flatten().map(|&c| (c, BigRational::one())).collect();
        lp.add_row(&terms, BigRational::one());
    }
    for v in g.nodes() {
        let mut terms: Vec<(usize, BigRational)> = g
            .incident(v)
            .iter()
            .filter_map(|&e| {
                let i = usize::from(g.edge(e)[1] == v);
                column_of[e][i].map(|c| (c, int(g.weight(g.other_endpoint(e, v)) as i64)))
            })
            .collect();
        terms.push((slack + v.0, BigRational::one()));
        lp.add_row(&terms, int(threshold as i64));
    }
    let Some(x) = basic_feasible_solution(&lp, rule) else {
        return Ok(None);
    };
    let mut shares = vec![[BigRational::zero(), BigRational::zero()]; g.edge_count()];
    for (c, &(e, i)) in columns.iter().enumerate() {
        shares[e][i] = x[c].clone();
    }
    Ok(Some(FractionalOrientation { threshold, shares }))
}

/// Rounds a vertex solution. Integral edges keep their direction. In every
/// component of split edges, a tree is rooted at its smallest node and each
/// edge goes to the child; a cycle is directed around, and the trees hanging
/// off it are directed away from it.
pub fn round_fractional(g: &Graph, frac: &FractionalOrientation) -> Result<Orientation, WeightedError> {
    let mut heads: Vec<Option<NodeId>> = vec![None; g.edge_count()];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for (e, share) in frac.shares.iter().enumerate() {
        let edge = g.edge(e);
        if frac.is_fractional(e) {
            adj[edge[0].0].push(e);
            adj[edge[1].0].push(e);
        } else if share[0].is_zero() {
            heads[e] = Some(edge[1]);
        } else {
            heads[e] = Some(edge[0]);
        }
    }

    let mut seen = vec![false; g.node_count()];
    for start in g.nodes() {
        if seen[start.0] || adj[start.0].is_empty() {
            continue;
        }
        // Collect the component.
        let mut nodes = vec![start];
        seen[start.0] = true;
        let mut i = 0;
        while i < nodes.len() {
            let u = nodes[i];
            i += 1;
            for &e in &adj[u.0] {
                let w = g.other_endpoint(e, u);
                if !seen[w.0] {
                    seen[w.0] = true;
                    nodes.push(w);
                }
            }
        }
        let edge_count: usize = nodes.iter().map(|v| adj[v.0].len()).sum::<usize>() / 2;
        if edge_count > nodes.len() {
            return Err(WeightedError::NotPseudoforest);
        }

        let mut roots = Vec::new();
        if edge_count + 1 == nodes.len() {
            roots.push(*nodes.iter().min().expect("non-empty component"));
        } else {
            // Strip leaves until only the cycle remains.
            let mut deg: Vec<usize> = vec![0; g.node_count()];
            for v in &nodes {
                deg[v.0] = adj[v.0].len();
            }
            let mut leaves: Vec<NodeId> = nodes.iter().copied().filter(|v| deg[v.0] == 1).collect();
            let mut stripped = vec![false; g.node_count()];
            while let Some(u) = leaves.pop() {
                stripped[u.0] = true;
                for &e in &adj[u.0] {
                    let w = g.other_endpoint(e, u);
                    if !stripped[w.0] {
                        deg[w.0] -= 1;
                        if deg[w.0] == 1 {
                            leaves.push(w);
                        }
                    }
                }
            }
            let cycle: Vec<NodeId> = nodes.iter().copied().filter(|v| !stripped[v.0]).collect();
            let first = *cycle.iter().min().expect("unicyclic component has a cycle");
            let mut u = first;
            loop {
                let next = adj[u.0].iter().copied().find(|&e| {
                    heads[e].is_none() && !stripped[g.other_endpoint(e, u).0]
                });
                let Some(e) = next else { break };
                let w = g.other_endpoint(e, u);
                heads[e] = Some(w);
                u = w;
                if u == first {
                    break;
                }
            }
            roots.extend(cycle);
        }

        // Everything not yet directed points away from the roots.
        let mut queue: VecDeque<NodeId> = roots.iter().copied().collect();
        let mut reached = vec![false; g.node_count()];
        for r in &roots {
            reached[r.0] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &e in &adj[u.0] {
                let w = g.other_endpoint(e, u);
                if heads[e].is_none() && !reached[w.0] {
                    heads[e] = Some(w);
                    reached[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(Orientation::from_heads(
        heads
            .into_iter()
            .map(|h| h.expect("every edge is directed"))
            .collect(),
    ))
}

/// An approximate orientation together with the LP threshold it was rounded from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub value: u64,
    pub orientation: Orientation,
    /// Smallest integer threshold at which the relaxation is feasible; a
    /// lower bound on the weighted indegree optimum.
    pub lp_threshold: u64,
}

fn round_at(g: &Graph, threshold: u64, frac: FractionalOrientation) -> Result<Orientation, WeightedError> {
    match round_fractional(g, &frac) {
        Err(WeightedError::NotPseudoforest) => {
            let again = lp_feasible_with(g, threshold, PivotRule::Lexicographic)?
                .expect("feasibility does not depend on the pivot rule");
            round_fractional(g, &again)
        }
        other => other,
    }
}

/// Weighted indegree within a factor two of the optimum.
pub fn approx2_wind(g: &Graph) -> Result<ApproxResult, WeightedError> {
    require_simple(g)?;
    if g.edge_count() == 0 {
        return Ok(ApproxResult {
            value: 0,
            orientation: Orientation::from_heads(Vec::new()),
            lp_threshold: 0,
        });
    }
    let mut lo = g
        .edges()
        .iter()
        .map(|e| g.weight(e[0]).min(g.weight(e[1])))
        .max()
        .expect("non-empty edge list");
    let mut hi: u64 = g.weights().iter().sum();
    let mut best = lp_feasible(g, hi)?.expect("every orientation fits under the total weight");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match lp_feasible(g, mid)? {
            Some(frac) => {
                best = frac;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let orientation = round_at(g, hi, best)?;
    Ok(ApproxResult {
        value: weighted_value(g, &orientation, WeightedObjective::Indegree),
        orientation,
        lp_threshold: hi,
    })
}

/// Weighted star partition within a factor four of the optimum: the
/// orientation of [`approx2_wind`], read as a coloring.
pub fn approx4_wstar(g: &Graph) -> Result<ApproxResult, WeightedError> {
    let r = approx2_wind(g)?;
    Ok(ApproxResult {
        value: weighted_value(g, &r.orientation, WeightedObjective::Star),
        ..r
    })
}
