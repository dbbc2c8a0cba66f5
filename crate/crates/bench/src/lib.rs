//! Instance builders shared by the criterion benches.

use starpart::oracle::{generate, Family, GeneratorSpec, WeightRule};
use starpart::Graph;

/// Node counts used by the scaling benches.
pub const LADDER: [usize; 4] = [250, 500, 1000, 2000];

/// Connected random graph with about `degree * n / 2` edges.
pub fn random_graph(n: usize, degree: usize, seed: u64) -> Graph {
    let m = (degree * n / 2).clamp(n.saturating_sub(1), n * n.saturating_sub(1) / 2);
    generate(&GeneratorSpec::new(Family::RandomConnected { n, m, seed })).expect("valid generator spec")
}

pub fn cycle(n: usize) -> Graph {
    generate(&GeneratorSpec::new(Family::Cycle(n))).expect("valid generator spec")
}

pub fn complete_bipartite(k: usize) -> Graph {
    generate(&GeneratorSpec::new(Family::Knn(k))).expect("valid generator spec")
}

/// Random connected graph with node weights in `1..=max_weight`.
pub fn weighted_graph(n: usize, m: usize, max_weight: u64, seed: u64) -> Graph {
    let spec = GeneratorSpec::new(Family::RandomConnected { n, m, seed })
        .with_weights(WeightRule::Random { max: max_weight, seed: seed ^ 0x9e37 });
    generate(&spec).expect("valid generator spec")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_produce_requested_sizes() {
        let g = random_graph(100, 4, 1);
        assert_eq!(g.node_count(), 100);
        assert_eq!(g.edge_count(), 200);
        assert_eq!(cycle(7).edge_count(), 7);
        assert_eq!(complete_bipartite(3).edge_count(), 9);
        let w = weighted_graph(6, 8, 5, 2);
        assert!(w.nodes().all(|v| (1..=5).contains(&w.weight(v))));
    }
}
