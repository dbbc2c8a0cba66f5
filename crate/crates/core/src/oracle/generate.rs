//! Deterministic instance generators and the small fixed example graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::Orientation;
use crate::graph::{Graph, GraphBuilder, GraphError, GraphKind, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `K_{n,n}`; the left side is `0..n`.
    Knn(usize),
    /// Path on `n` nodes.
    Path(usize),
    /// Cycle on `n ≥ 3` nodes.
    Cycle(usize),
    /// Star with `n` leaves; node 0 is the center.
    Star(usize),
    /// Random connected graph with at most one cycle.
    Pseudoforest { n: usize, seed: u64 },
    /// Random spanning tree plus random extra edges, `m` edges in total.
    RandomConnected { n: usize, m: usize, seed: u64 },
    /// Random connected linear hypergraph with about `m` edges. Connecting all
    /// nodes may take more, and extra edges stop after 200·m rejected draws.
    RandomLinearHyper {
        n: usize,
        m: usize,
        max_edge_size: usize,
        seed: u64,
    },
    /// Random connected simple graph with every edge repeated 1 to `max_mult` times.
    RandomMulti {
        n: usize,
        m: usize,
        max_mult: usize,
        seed: u64,
    },
    /// Random connected simple graph plus `loops` self-loops at random nodes.
    RandomSelfLoops {
        n: usize,
        m: usize,
        loops: usize,
        seed: u64,
    },
    /// 7-node, 11-edge example with optimum 3.
    DfsExample,
    /// 5-node example whose value-2 target is reached by one round of flips.
    FlowExample,
    /// 7-node example where target 2 is infeasible.
    FlowInfeasibleExample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CapacityRule {
    /// Maximum degree everywhere.
    #[default]
    Default,
    Uniform(usize),
    /// Uniform in `0..=δ(v)` per node.
    Random { seed: u64 },
    /// Uniform in `1..=δ(v)` per node.
    RandomPositive { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeightRule {
    #[default]
    Unit,
    /// Uniform in `1..=max` per node.
    Random { max: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub family: Family,
    pub capacities: CapacityRule,
    pub weights: WeightRule,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec {
            family,
            capacities: CapacityRule::Default,
            weights: WeightRule::Unit,
        }
    }

    pub fn with_capacities(mut self, rule: CapacityRule) -> Self {
        self.capacities = rule;
        self
    }

    pub fn with_weights(mut self, rule: WeightRule) -> Self {
        self.weights = rule;
        self
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, GenerateError> {
    Err(GenerateError::InvalidSpec(msg.into()))
}

const DFS_EXAMPLE_EDGES: [(usize, usize); 11] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 7),
    (2, 3),
    (2, 5),
    (2, 7),
    (3, 4),
    (3, 6),
    (4, 5),
    (5, 6),
];

/// `(tail, head)` pairs, 1-based.
const FLOW_EXAMPLE_ARCS: [(usize, usize); 7] = [(2, 1), (1, 3), (1, 5), (4, 3), (2, 5), (3, 5), (5, 4)];

const FLOW_INFEASIBLE_ARCS: [(usize, usize); 10] = [
    (1, 3),
    (3, 4),
    (5, 1),
    (5, 3),
    (5, 4),
    (3, 6),
    (3, 7),
    (6, 7),
    (1, 2),
    (2, 4),
];

fn zero_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
}

fn heads(pairs: &[(usize, usize)]) -> Orientation {
    Orientation::from_heads(pairs.iter().map(|&(_, h)| NodeId(h - 1)).collect())
}

pub fn dfs_example() -> Graph {
    Graph::simple(7, &zero_based(&DFS_EXAMPLE_EDGES)).expect("fixture is valid")
}

pub fn flow_example() -> Graph {
    Graph::simple(5, &zero_based(&FLOW_EXAMPLE_ARCS)).expect("fixture is valid")
}

/// The starting orientation drawn with [`flow_example`].
pub fn flow_example_orientation(g: &Graph) -> Orientation {
    debug_assert_eq!(g.edge_count(), FLOW_EXAMPLE_ARCS.len());
    heads(&FLOW_EXAMPLE_ARCS)
}

pub fn flow_infeasible_example() -> Graph {
    Graph::simple(7, &zero_based(&FLOW_INFEASIBLE_ARCS)).expect("fixture is valid")
}

pub fn flow_infeasible_orientation(g: &Graph) -> Orientation {
    debug_assert_eq!(g.edge_count(), FLOW_INFEASIBLE_ARCS.len());
    heads(&FLOW_INFEASIBLE_ARCS)
}

/// Random labelled spanning tree by random attachment over a shuffled order.
fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let p = order[rng.gen_range(0..i)];
            let c = order[i];
            (p.min(c), p.max(c))
        })
        .collect()
}

fn random_connected(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>, GenerateError> {
    if n == 0 {
        return invalid("need at least one node");
    }
    let max_m = n * (n - 1) / 2;
    if m + 1 < n || m > max_m {
        return invalid(format!("{m} edges cannot form a connected simple graph on {n} nodes"));
    }
    let mut edges = random_tree(n, rng);
    let mut present: std::collections::BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|p| !present.contains(p))
        .collect();
    rest.shuffle(rng);
    for p in rest.into_iter().take(m - edges.len()) {
        present.insert(p);
        edges.push(p);
    }
    edges.shuffle(rng);
    Ok(edges)
}

fn random_linear_hyper(
    n: usize,
    m: usize,
    max_edge_size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<usize>>, GenerateError> {
    if n < 2 || max_edge_size < 2 {
        return invalid("linear hypergraphs need at least two nodes and edge size at least two");
    }
    let mut uncovered: Vec<usize> = (0..n).collect();
    uncovered.shuffle(rng);
    let mut covered = vec![uncovered.pop().expect("n >= 2")];
    let mut edges: Vec<Vec<usize>> = Vec::new();
    // Each new edge meets the covered part in exactly one node, so it shares
    // at most one node with every earlier edge.
    while !uncovered.is_empty() {
        let anchor = covered[rng.gen_range(0..covered.len())];
        let size = rng.gen_range(2..=max_edge_size).min(uncovered.len() + 1);
        let mut edge = vec![anchor];
        for _ in 1..size {
            let v = uncovered.pop().expect("size bounded by uncovered count");
            covered.push(v);
            edge.push(v);
        }
        edges.push(edge);
    }
    let mut attempts = 0;
    while edges.len() < m && attempts < 200 * m {
        attempts += 1;
        let size = rng.gen_range(2..=max_edge_size.min(n));
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(rng);
        let mut edge = nodes[..size].to_vec();
        edge.sort_unstable();
        let linear = edges.iter().all(|f| f.iter().filter(|v| edge.contains(v)).count() <= 1);
        if linear {
            edges.push(edge);
        }
    }
    Ok(edges)
}

/// Random connected simple graphs on 2 to `max_nodes` nodes, each with
/// default, random or random positive capacities. Edge counts stay within
/// the brute-force limit. Deterministic in `seed`.
pub fn random_capacitated_suite(seed: u64, count: usize, max_nodes: usize) -> Vec<GeneratorSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_nodes.max(2));
            let max_m = (n * (n - 1) / 2).min(super::EDGE_LIMIT);
            let m = rng.gen_range(n - 1..=max_m);
            let rule = match rng.gen_range(0..3) {
                0 => CapacityRule::Default,
                1 => CapacityRule::Random { seed: rng.gen() },
                _ => CapacityRule::RandomPositive { seed: rng.gen() },
            };
            GeneratorSpec::new(Family::RandomConnected { n, m, seed: rng.gen() }).with_capacities(rule)
        })
        .collect()
}

/// Builds the graph described by `spec`. The same spec always yields the same graph.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GenerateError> {
    let (kind, n, edges): (GraphKind, usize, Vec<Vec<usize>>) = match spec.family {
        Family::Knn(k) => {
            if k == 0 {
                return invalid("K_{n,n} needs n >= 1");
            }
            let edges = (0..k).flat_map(|a| (k..2 * k).map(move |b| vec![a, b])).collect();
            (GraphKind::Simple, 2 * k, edges)
        }
        Family::Path(n) => {
            if n == 0 {
                return invalid("path needs at least one node");
            }
            (GraphKind::Simple, n, (1..n).map(|i| vec![i - 1, i]).collect())
        }
        Family::Cycle(n) => {
            if n < 3 {
                return invalid("cycle needs at least three nodes");
            }
            (GraphKind::Simple, n, (0..n).map(|i| vec![i, (i + 1) % n]).collect())
        }
        Family::Star(leaves) => {
            if leaves == 0 {
                return invalid("star needs at least one leaf");
            }
            (GraphKind::Simple, leaves + 1, (1..=leaves).map(|i| vec![0, i]).collect())
        }
        Family::Pseudoforest { n, seed } => {
            if n == 0 {
                return invalid("pseudoforest needs at least one node");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = random_tree(n, &mut rng);
            if n >= 3 && rng.gen_bool(0.5) {
                let present: std::collections::BTreeSet<_> = edges.iter().copied().collect();
                let missing: Vec<(usize, usize)> = (0..n)
                    .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                    .filter(|p| !present.contains(p))
                    .collect();
                if let Some(&p) = missing.choose(&mut rng) {
                    edges.push(p);
                }
            }
            (GraphKind::Simple, n, edges.into_iter().map(|(a, b)| vec![a, b]).collect())
        }
        Family::RandomConnected { n, m, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges = random_connected(n, m, &mut rng)?;
            (GraphKind::Simple, n, edges.into_iter().map(|(a, b)| vec![a, b]).collect())
        }
        Family::RandomLinearHyper {
            n,
            m,
            max_edge_size,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (GraphKind::LinearHyper, n, random_linear_hyper(n, m, max_edge_size, &mut rng)?)
        }
        Family::RandomMulti { n, m, max_mult, seed } => {
            if max_mult == 0 {
                return invalid("multiplicity must be at least one");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for (a, b) in random_connected(n, m, &mut rng)? {
                for _ in 0..rng.gen_range(1..=max_mult) {
                    edges.push(vec![a, b]);
                }
            }
            edges.shuffle(&mut rng);
            (GraphKind::Multi, n, edges)
        }
        Family::RandomSelfLoops { n, m, loops, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges: Vec<Vec<usize>> = random_connected(n, m, &mut rng)?
                .into_iter()
                .map(|(a, b)| vec![a, b])
                .collect();
            for _ in 0..loops {
                let v = rng.gen_range(0..n);
                edges.push(vec![v]);
            }
            edges.shuffle(&mut rng);
            (GraphKind::WithSelfLoops, n, edges)
        }
        Family::DfsExample => return apply_rules(dfs_example(), spec),
        Family::FlowExample => return apply_rules(flow_example(), spec),
        Family::FlowInfeasibleExample => return apply_rules(flow_infeasible_example(), spec),
    };
    let mut b = GraphBuilder::new(kind, n);
    b.edges(edges);
    apply_rules(b.build()?, spec)
}

fn apply_rules(g: Graph, spec: &GeneratorSpec) -> Result<Graph, GenerateError> {
    if spec.capacities == CapacityRule::Default && spec.weights == WeightRule::Unit {
        return Ok(g);
    }
    let mut b = g.to_builder();
    match spec.capacities {
        CapacityRule::Default => {}
        CapacityRule::Uniform(c) => {
            b.capacities(std::iter::repeat_n(c, g.node_count()));
        }
        CapacityRule::Random { seed } | CapacityRule::RandomPositive { seed } => {
            let low = usize::from(matches!(spec.capacities, CapacityRule::RandomPositive { .. }));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let caps: Vec<usize> = g
                .nodes()
                .map(|v| {
                    let d = g.degree(v);
                    if d < low {
                        d
                    } else {
                        rng.gen_range(low..=d)
                    }
                })
                .collect();
            b.capacities(caps);
        }
    }
    match spec.weights {
        WeightRule::Unit => {}
        WeightRule::Random { max, seed } => {
            if max == 0 {
                return invalid("weights must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w: Vec<u64> = g.nodes().map(|_| rng.gen_range(1..=max)).collect();
            b.weights(w);
        }
    }
    Ok(b.build()?)
}
