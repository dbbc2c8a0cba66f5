use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starpart::coloring::{is_valid, orientation_to_owner, owner_to_orientation, star_partition_value};
use starpart::dfs::{minimum_star_coloring_checked, minimum_star_coloring_with_stats};
use starpart::graph::merge_parallel_edges;
use starpart::oracle::{brute_force_xstar, generate, CapacityRule, Family, GeneratorSpec};
use starpart::{preprocess_and_solve, Algorithm, Graph, GraphBuilder, GraphError, GraphKind, NodeId, Objective, Orientation};

fn check_witness(g: &Graph, value: Objective, witness: &starpart::PartialColoring) {
    if let Objective::Finite(x) = value {
        assert!(is_valid(g, witness).unwrap());
        assert_eq!(star_partition_value(g, witness).unwrap(), x);
    }
}

#[test]
fn random_multigraphs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..150 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(8));
        let rule = if rng.gen_bool(0.5) { CapacityRule::Default } else { CapacityRule::Random { seed: rng.gen() } };
        let spec = GeneratorSpec::new(Family::RandomMulti { n, m, max_mult: 3, seed: rng.gen() }).with_capacities(rule);
        let g = generate(&spec).unwrap();
        if g.edge_count() > starpart::oracle::EDGE_LIMIT {
            continue;
        }
        let truth = brute_force_xstar(&g).unwrap().value;
        let (_, map) = merge_parallel_edges(&g).unwrap();
        for algo in [Algorithm::Dfs, Algorithm::Flow] {
            let r = preprocess_and_solve(&g, algo).unwrap();
            assert_eq!(r.value, truth, "{algo:?} on {spec:?}");
            check_witness(&g, r.value, &r.witness);
            if r.value.is_feasible() {
                let mut class_owner = vec![None; map.len()];
                for (e, &class) in map.iter().enumerate() {
                    let owner = r.witness.owner(e);
                    assert_eq!(*class_owner[class].get_or_insert(owner), owner, "parallel edges must share owners");
                }
            }
        }
    }
}

#[test]
fn random_self_loop_graphs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..150 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(10));
        let loops = rng.gen_range(1..=4);
        let g = generate(&GeneratorSpec::new(Family::RandomSelfLoops { n, m, loops, seed: rng.gen() })).unwrap();
        let truth = brute_force_xstar(&g).unwrap().value;
        for algo in [Algorithm::Dfs, Algorithm::Flow] {
            let r = preprocess_and_solve(&g, algo).unwrap();
            assert_eq!(r.value, truth, "{algo:?} on {g:?}");
            check_witness(&g, r.value, &r.witness);
            for e in (0..g.edge_count()).filter(|&e| g.is_self_loop(e)) {
                assert_eq!(r.witness.owner(e), Some(g.edge(e)[0]));
            }
        }
    }
}

#[test]
fn random_linear_hypergraphs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 120 {
        let n = rng.gen_range(3..=7);
        let m = rng.gen_range(1..=8);
        let spec = GeneratorSpec::new(Family::RandomLinearHyper { n, m, max_edge_size: 3, seed: rng.gen() });
        let g = generate(&spec).unwrap();
        assert!(g.max_edge_size() <= 3);
        let truth = brute_force_xstar(&g).unwrap().value;
        let (r, stats, satisfying) = minimum_star_coloring_checked(&g).unwrap();
        assert_eq!(r.value, truth, "{spec:?}");
        check_witness(&g, r.value, &r.witness);
        assert!(satisfying);
        assert_eq!(stats.invariant_violations, 0);
        let eta = g.max_edge_size() as u64;
        let edges = g.edge_count() as u64;
        assert!(stats.max_search_visits <= eta * edges, "{} > {eta}·{edges}", stats.max_search_visits);
        let (_, plain) = minimum_star_coloring_with_stats(&g).unwrap();
        assert!(plain.edge_visits <= 4 * eta * edges * edges);
        checked += 1;
    }
}

#[test]
fn overlapping_triples_are_rejected() {
    let err = GraphBuilder::new(GraphKind::LinearHyper, 5)
        .edges([[0, 1, 2], [1, 2, 3], [2, 3, 4]])
        .build()
        .unwrap_err();
    assert!(matches!(err, GraphError::NonLinearHypergraph { first: 0, second: 1 }));
}

/// Every orientation of every connected simple graph with at most 4 edges
/// survives the owner round trip, and every complete coloring does too.
#[test]
fn round_trip_exhaustive_small() {
    for n in 1..=5 {
        for g in starpart::oracle::enumerate_connected_graphs(n) {
            let m = g.edge_count();
            if m > 4 {
                continue;
            }
            for mask in 0u32..1 << m {
                let heads: Vec<NodeId> = (0..m).map(|e| g.edge(e)[(mask >> e & 1) as usize]).collect();
                let o = Orientation::from_heads(heads);
                let c = orientation_to_owner(&g, &o).unwrap();
                assert_eq!(owner_to_orientation(&g, &c).unwrap(), o);
                assert_eq!(orientation_to_owner(&g, &owner_to_orientation(&g, &c).unwrap()).unwrap(), c);
            }
        }
    }
}
