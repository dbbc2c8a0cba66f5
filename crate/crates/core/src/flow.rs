//! Exact star-partition solver based on unit-capacity max-flow.
//!
//! For a target `x` every node needs a certain number of outgoing edges. Given
//! any orientation, nodes with surplus out-degree are connected to a source
//! and nodes with a shortfall to a sink; a maximum flow through the graph arcs
//! says which edges to flip. Binary search over `x` finds the optimum.

use crate::coloring::{
    demand, orientation_to_owner, Objective, Orientation, PartialColoring, SolveError, SolveResult,
};
use crate::graph::{Graph, GraphKind, NodeId};

/// Slackness of `v` under `o` at target `x`: out-degree minus demand, or the
/// whole out-degree if the demand is at most one.
pub fn slackness(g: &Graph, o: &Orientation, v: NodeId, x: usize) -> i64 {
    let out = o.out_degrees(g)[v.0];
    slack_value(g.degree(v), g.capacity(v), out, x)
}

fn slack_value(degree: usize, capacity: usize, out: usize, x: usize) -> i64 {
    let l = demand(degree, capacity, x);
    if l <= 1 {
        out as i64
    } else {
        out as i64 - l as i64
    }
}

fn slacks(g: &Graph, loops: &[usize], o: &Orientation, x: usize) -> Vec<i64> {
    let out = o.out_degrees(g);
    g.nodes()
        .map(|v| {
            let extra = loops.get(v.0).copied().unwrap_or(0);
            slack_value(g.degree(v) + extra, g.capacity(v), out[v.0] + extra, x)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// Graph edge in its current direction.
    Edge(usize),
    /// Bundle of parallel source arcs into a node.
    Source(NodeId),
    /// Bundle of parallel sink arcs out of a node.
    Sink(NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    /// Number of parallel unit arcs in this bundle.
    pub capacity: u64,
    pub kind: ArcKind,
}

/// Graph nodes keep their ids; the source is `n` and the sink `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    /// Number of unit arcs, counting every bundle with its multiplicity.
    pub fn unit_arc_count(&self) -> u64 {
        self.arcs.iter().map(|a| a.capacity).sum()
    }

    /// Total capacity into the sink.
    pub fn sink_capacity(&self) -> u64 {
        self.arcs
            .iter()
            .filter(|a| a.to == self.sink)
            .map(|a| a.capacity)
            .sum()
    }

    pub fn source_arcs(&self) -> impl Iterator<Item = (NodeId, u64)> + '_ {
        self.arcs.iter().filter_map(|a| match a.kind {
            ArcKind::Source(v) => Some((v, a.capacity)),
            _ => None,
        })
    }

    pub fn sink_arcs(&self) -> impl Iterator<Item = (NodeId, u64)> + '_ {
        self.arcs.iter().filter_map(|a| match a.kind {
            ArcKind::Sink(v) => Some((v, a.capacity)),
            _ => None,
        })
    }
}

pub fn build_flow_network(g: &Graph, o: &Orientation, x: usize) -> FlowNetwork {
    build_with_loops(g, &[], o, x)
}

fn build_with_loops(g: &Graph, loops: &[usize], o: &Orientation, x: usize) -> FlowNetwork {
    let n = g.node_count();
    let mut arcs: Vec<FlowArc> = (0..g.edge_count())
        .map(|e| FlowArc {
            from: o.tail(g, e).0,
            to: o.head(e).0,
            capacity: 1,
            kind: ArcKind::Edge(e),
        })
        .collect();
    for (v, s) in slacks(g, loops, o, x).into_iter().enumerate() {
        if s > 0 {
            arcs.push(FlowArc {
                from: n,
                to: v,
                capacity: s as u64,
                kind: ArcKind::Source(NodeId(v)),
            });
        } else if s < 0 {
            arcs.push(FlowArc {
                from: v,
                to: n + 1,
                capacity: s.unsigned_abs(),
                kind: ArcKind::Sink(NodeId(v)),
            });
        }
    }
    FlowNetwork {
        node_count: n + 2,
        source: n,
        sink: n + 1,
        arcs,
    }
}

/// Flow per arc of a [`FlowNetwork`], in arc order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralFlow {
    pub flow: Vec<u64>,
    pub value: u64,
}

impl IntegralFlow {
    /// Capacity and conservation check. Returns the first offending node or arc.
    pub fn check(&self, net: &FlowNetwork) -> Result<(), String> {
        if self.flow.len() != net.arcs.len() {
            return Err(format!(
                "flow has {} entries, network has {} arcs",
                self.flow.len(),
                net.arcs.len()
            ));
        }
        let mut balance = vec![0i64; net.node_count];
        for (i, (arc, &f)) in net.arcs.iter().zip(&self.flow).enumerate() {
            if f > arc.capacity {
                return Err(format!("arc {i} carries {f} over capacity {}", arc.capacity));
            }
            balance[arc.from] -= f as i64;
            balance[arc.to] += f as i64;
        }
        for (v, &b) in balance.iter().enumerate() {
            if v != net.source && v != net.sink && b != 0 {
                return Err(format!("conservation violated at node {v} by {b}"));
            }
        }
        if balance[net.sink] != self.value as i64 || balance[net.source] != -(self.value as i64) {
            return Err(format!("flow value {} does not match sink inflow", self.value));
        }
        Ok(())
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(node_count: usize) -> Self {
        Residual {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); node_count],
        }
    }

    /// Adds an arc and its reverse; returns the forward index. The reverse is `index ^ 1`.
    fn add(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.cap.push(cap);
        self.adj[from].push(id);
        self.head.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
        id
    }

    fn levels(&self, s: usize, t: usize, level: &mut [u32]) -> bool {
        level.fill(u32::MAX);
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let w = self.head[a];
                if self.cap[a] > 0 && level[w] == u32::MAX {
                    level[w] = level[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        level[t] != u32::MAX
    }

    /// One augmenting path in the level graph, found iteratively.
    fn augment(&mut self, s: usize, t: usize, level: &[u32], next: &mut [usize], path: &mut Vec<usize>) -> u64 {
        path.clear();
        let mut u = s;
        loop {
            if u == t {
                let pushed = path.iter().map(|&a| self.cap[a]).min().unwrap_or(0);
                for &a in path.iter() {
                    self.cap[a] -= pushed;
                    self.cap[a ^ 1] += pushed;
                }
                return pushed;
            }
            let mut advanced = false;
            while next[u] < self.adj[u].len() {
                let a = self.adj[u][next[u]];
                let w = self.head[a];
                if self.cap[a] > 0 && level[w] == level[u] + 1 {
                    path.push(a);
                    u = w;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                // Dead end: retreat and skip the arc that led here.
                let Some(a) = path.pop() else { return 0 };
                u = self.head[a ^ 1];
                next[u] += 1;
            }
        }
    }
}

/// Maximum flow by Dinic's blocking-flow method. Bundles are handled as
/// integer capacities, which is the same as parallel unit arcs.
pub fn max_flow_unit(net: &FlowNetwork) -> IntegralFlow {
    let mut r = Residual::new(net.node_count);
    let ids: Vec<usize> = net
        .arcs
        .iter()
        .map(|a| r.add(a.from, a.to, a.capacity))
        .collect();
    let mut level = vec![0u32; net.node_count];
    let mut next = vec![0usize; net.node_count];
    let mut path = Vec::new();
    let mut value = 0;
    while r.levels(net.source, net.sink, &mut level) {
        next.fill(0);
        loop {
            let pushed = r.augment(net.source, net.sink, &level, &mut next, &mut path);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
    let flow = ids.iter().map(|&id| r.cap[id ^ 1]).collect();
    IntegralFlow { flow, value }
}

/// Everything computed by one feasibility probe.
#[derive(Debug, Clone)]
pub struct FlowProbe {
    pub network: FlowNetwork,
    pub flow: IntegralFlow,
    /// The flipped orientation, present iff the flow saturates every sink arc.
    pub orientation: Option<Orientation>,
}

pub fn probe_x(g: &Graph, x: usize, start: &Orientation) -> FlowProbe {
    probe_with_loops(g, &[], x, start)
}

fn probe_with_loops(g: &Graph, loops: &[usize], x: usize, start: &Orientation) -> FlowProbe {
    let network = build_with_loops(g, loops, start, x);
    let flow = max_flow_unit(&network);
    let orientation = (flow.value == network.sink_capacity()).then(|| {
        let mut o = start.clone();
        for (arc, &f) in network.arcs.iter().zip(&flow.flow) {
            if let ArcKind::Edge(e) = arc.kind {
                if f == 1 {
                    o.flip(g, e);
                }
            }
        }
        o
    });
    FlowProbe {
        network,
        flow,
        orientation,
    }
}

/// An orientation with non-negative slackness everywhere at target `x`, if one exists.
pub fn test_x(g: &Graph, x: usize, start: &Orientation) -> Option<Orientation> {
    probe_x(g, x, start).orientation
}

/// Optimal star partition of a simple graph.
pub fn minimum_star_coloring_flow(g: &Graph) -> Result<SolveResult, SolveError> {
    match g.kind() {
        GraphKind::Simple => solve_with_loops(g, &[]),
        kind => Err(SolveError::UnsupportedKind { kind, solver: "flow" }),
    }
}

/// Solves a simple graph whose node `v` additionally carries `loops[v]`
/// self-loops, all owned by `v`. The witness covers the simple edges only.
pub(crate) fn solve_with_loops(g: &Graph, loops: &[usize]) -> Result<SolveResult, SolveError> {
    let max_degree = g
        .nodes()
        .map(|v| g.degree(v) + loops.get(v.0).copied().unwrap_or(0))
        .max()
        .unwrap_or(0);
    if max_degree == 0 {
        return Ok(SolveResult {
            value: Objective::Finite(0),
            witness: PartialColoring::uncolored(0),
        });
    }
    let Some(mut best) = probe_with_loops(g, loops, max_degree, &Orientation::toward_higher(g)).orientation
    else {
        return Ok(SolveResult {
            value: Objective::Infeasible,
            witness: PartialColoring::uncolored(g.edge_count()),
        });
    };
    let (mut lo, mut hi) = (1, max_degree);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe_with_loops(g, loops, mid, &best).orientation {
            Some(o) => {
                best = o;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok(SolveResult {
        value: Objective::Finite(hi),
        witness: orientation_to_owner(g, &best)?,
    })
}
