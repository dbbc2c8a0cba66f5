use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use starpart::coloring::{color_counts, is_valid, orientation_to_owner, owner_to_orientation, star_partition_value};
use starpart::oracle::{brute_force_kstar, brute_force_xstar, generate, CapacityRule, Family, GeneratorSpec, WeightRule};
use starpart::reductions::{ind_to_star, recover_ind_solution, solve_min_max_ind, PendantReduction};
use starpart::weighted::{
    approx2_wind, approx4_wstar, binpacking_to_wind, brute_force_weighted, extract_packing, gadget_transform,
    weighted_value, weighted_values, BinPackingInstance, GadgetReduction, WeightedObjective,
};
use starpart::{
    minimum_star_coloring, minimum_star_coloring_flow, preprocess_and_solve, Algorithm, Graph, GraphKind, Objective,
    Orientation, PartialColoring,
};

use crate::args::*;
use crate::format::{
    parse_binpack, parse_instance, parse_sidecar, parse_solution, print_instance, print_solution, print_value,
    Instance, ReductionKind, Sidecar, Solution,
};
use crate::CliError;

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: Cli, out: Out) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(a) => solve(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Reduce(a) => reduce(&a, out),
        Command::Pullback(a) => pullback(&a, out),
        Command::Approx(a) => approx(&a, out),
        Command::Gen(a) => gen(&a, out),
        Command::Bench(a) => bench(&a, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Out, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, &format!("{}\n", format_args!($($arg)*)))
    };
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| CliError::input(path, e))
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn finite(v: u64) -> Objective {
    Objective::Finite(v as usize)
}

/// Writes the solution to `path`, or to `out` when no path is given. The
/// value line always goes to `out`.
fn deliver(out: Out, sol: &Solution, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            write_file(p, &print_solution(sol))?;
            if let Some(v) = sol.value {
                say!(out, "{}", print_value(v))?;
            }
            Ok(())
        }
        None => emit(out, &print_solution(sol)),
    }
}

fn solve(a: &SolveArgs, out: Out) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = &inst.graph;
    let (value, coloring) = match a.objective {
        ObjectiveArg::Star => solve_star(g, a.algo)?,
        ObjectiveArg::Ind => solve_ind(g, a.algo)?,
        ObjectiveArg::Wind | ObjectiveArg::Wstar => {
            if a.algo != Algo::Oracle {
                return Err(CliError::Input(
                    "weighted objectives are NP-hard; use `--algo oracle` for small instances or `approx`".into(),
                ));
            }
            let objective = weighted_objective(a.objective);
            let r = brute_force_weighted(g, objective).map_err(input)?;
            (finite(r.value), orientation_to_owner(g, &r.orientation).map_err(input)?)
        }
    };
    deliver(out, &Solution::from_coloring(&inst, &coloring, value), a.out.as_deref())
}

fn weighted_objective(o: ObjectiveArg) -> WeightedObjective {
    match o {
        ObjectiveArg::Wstar => WeightedObjective::Star,
        _ => WeightedObjective::Indegree,
    }
}

fn solve_star(g: &Graph, algo: Algo) -> Result<(Objective, PartialColoring), CliError> {
    let r = match algo {
        Algo::Dfs => preprocess_and_solve(g, Algorithm::Dfs).map_err(input)?,
        Algo::Flow => preprocess_and_solve(g, Algorithm::Flow).map_err(input)?,
        Algo::Oracle => brute_force_xstar(g).map_err(input)?,
    };
    if let Objective::Finite(x) = r.value {
        let ok = is_valid(g, &r.witness).unwrap_or(false) && star_partition_value(g, &r.witness).ok() == Some(x);
        if !ok {
            return Err(CliError::Internal(format!("witness does not attain value {x}")));
        }
    }
    Ok((r.value, r.witness))
}

fn solve_ind(g: &Graph, algo: Algo) -> Result<(Objective, PartialColoring), CliError> {
    let (value, orientation) = match algo {
        Algo::Dfs => {
            let red = ind_to_star(g).map_err(input)?;
            let r = minimum_star_coloring(&red.reduced).map_err(input)?;
            match r.value {
                Objective::Finite(x) => {
                    let o = recover_ind_solution(&red, &r.witness).map_err(|e| CliError::Internal(e.to_string()))?;
                    (Objective::Finite(x - 1), Some(o))
                }
                Objective::Infeasible => (Objective::Infeasible, None),
            }
        }
        Algo::Flow => {
            let r = solve_min_max_ind(g).map_err(input)?;
            (r.value, r.orientation)
        }
        Algo::Oracle => {
            let r = brute_force_kstar(g).map_err(input)?;
            (r.value, r.orientation)
        }
    };
    let Some(o) = orientation else {
        return Ok((value, PartialColoring::uncolored(g.edge_count())));
    };
    let indeg = o.in_degrees(g);
    if g.nodes().any(|v| indeg[v.0] > g.capacity(v)) || value != Objective::Finite(o.max_in_degree(g)) {
        return Err(CliError::Internal("orientation does not attain the reported indegree".into()));
    }
    Ok((value, orientation_to_owner(g, &o).map_err(input)?))
}

/// Per-node counts under the objective, and whether capacities apply.
fn node_counts(g: &Graph, c: &PartialColoring, objective: ObjectiveArg) -> Result<(Vec<u64>, bool), CliError> {
    match objective {
        ObjectiveArg::Star => {
            let counts = color_counts(g, c).map_err(|e| CliError::Rejected(e.to_string()))?;
            Ok((counts.into_iter().map(|x| x as u64).collect(), true))
        }
        ObjectiveArg::Ind | ObjectiveArg::Wind | ObjectiveArg::Wstar => {
            if !g.is_two_uniform() {
                return Err(CliError::Input(format!("indegree objectives need two endpoints per edge ({} graph)", g.kind())));
            }
            let o = owner_to_orientation(g, c).map_err(|e| CliError::Rejected(e.to_string()))?;
            if objective == ObjectiveArg::Ind {
                Ok((o.in_degrees(g).into_iter().map(|x| x as u64).collect(), true))
            } else {
                if g.kind() != GraphKind::Simple {
                    return Err(CliError::Input(format!("weighted objectives need a simple graph, got {}", g.kind())));
                }
                Ok((weighted_values(g, &o, weighted_objective(objective)), false))
            }
        }
    }
}

fn verify(a: &VerifyArgs, out: Out) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = &inst.graph;
    let sol = parse_solution(&read(&a.solution)?).map_err(|e| CliError::input(&a.solution, e))?;
    let c = sol.to_coloring(&inst).map_err(|e| CliError::input(&a.solution, e))?;

    if sol.value == Some(Objective::Infeasible) {
        return verify_infeasible(&inst, a, out);
    }
    if let Some(e) = c.uncolored_edges().next() {
        return Err(CliError::Rejected(format!("edge {e} has no owner")));
    }
    c.check_against(g).map_err(|e| CliError::Rejected(e.to_string()))?;
    let (counts, capped) = node_counts(g, &c, a.objective)?;
    if a.verbose {
        for v in g.nodes() {
            if capped {
                say!(out, "node {} {} cap={}", inst.name(v), counts[v.0], g.capacity(v))?;
            } else {
                say!(out, "node {} {}", inst.name(v), counts[v.0])?;
            }
        }
    }
    if capped {
        if let Some(v) = g.nodes().find(|&v| counts[v.0] > g.capacity(v) as u64) {
            return Err(CliError::Rejected(format!(
                "node {} has count {} above its capacity {}",
                inst.name(v),
                counts[v.0],
                g.capacity(v)
            )));
        }
    }
    let value = counts.iter().copied().max().unwrap_or(0);
    if let Some(Objective::Finite(d)) = sol.value {
        if d as u64 != value {
            return Err(CliError::Rejected(format!("solution declares value {d} but attains {value}")));
        }
    }
    if let Some(b) = a.bound {
        if let Some(v) = g.nodes().find(|&v| counts[v.0] > b) {
            return Err(CliError::Rejected(format!(
                "node {} has count {} above the bound {b}",
                inst.name(v),
                counts[v.0]
            )));
        }
    }
    say!(out, "ok value {value}")
}

/// An INFEASIBLE claim is checked with an exact polynomial solver.
fn verify_infeasible(inst: &Instance, a: &VerifyArgs, out: Out) -> Result<(), CliError> {
    if let Some(b) = a.bound {
        return Err(CliError::Rejected(format!("solution claims INFEASIBLE but bound {b} was requested")));
    }
    let g = &inst.graph;
    let exact = match a.objective {
        ObjectiveArg::Star => {
            let algo = if g.kind() == GraphKind::LinearHyper { Algorithm::Dfs } else { Algorithm::Flow };
            preprocess_and_solve(g, algo).map_err(input)?.value
        }
        ObjectiveArg::Ind if g.kind() == GraphKind::Simple => solve_min_max_ind(g).map_err(input)?.value,
        ObjectiveArg::Ind => brute_force_kstar(g).map_err(input)?.value,
        ObjectiveArg::Wind | ObjectiveArg::Wstar => {
            return Err(CliError::Rejected("weighted instances always have a solution".into()))
        }
    };
    match exact {
        Objective::Infeasible => say!(out, "ok value INFEASIBLE"),
        Objective::Finite(x) => Err(CliError::Rejected(format!(
            "solution claims INFEASIBLE but the instance has value {x}"
        ))),
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".map");
    PathBuf::from(s)
}

fn ind2star_instance(inst: &Instance) -> Result<(Instance, PendantReduction), CliError> {
    let red = ind_to_star(&inst.graph).map_err(input)?;
    let mut names = inst.names.clone();
    names.extend(inst.names.iter().map(|n| format!("{n}_p")));
    Ok((
        Instance {
            graph: red.reduced.clone(),
            names,
        },
        red,
    ))
}

fn gadget_instance(inst: &Instance, k: u64) -> Result<(Instance, GadgetReduction), CliError> {
    let red = gadget_transform(&inst.graph, k).map_err(input)?;
    let mut names = inst.names.clone();
    for n in &inst.names {
        for suffix in ["1", "2", "3", "4", "t", "t1", "t2", "t3", "t4"] {
            names.push(format!("{n}_{suffix}"));
        }
    }
    Ok((
        Instance {
            graph: red.reduced.clone(),
            names,
        },
        red,
    ))
}

fn binpack_instance(bp: &BinPackingInstance) -> Result<(Instance, u64), CliError> {
    let (g, t) = binpacking_to_wind(bp).map_err(input)?;
    let names = (1..=bp.sizes.len())
        .map(|i| format!("i{i}"))
        .chain((1..=bp.bins).map(|j| format!("b{j}")))
        .collect();
    Ok((Instance { graph: g, names }, t))
}

fn reduce(a: &ReduceArgs, out: Out) -> Result<(), CliError> {
    let text = read(&a.input)?;
    let (reduced, sidecar) = match a.kind {
        ReductionArg::Ind2star => {
            let inst = parse_instance(&text).map_err(|e| CliError::input(&a.input, e))?;
            let (reduced, _) = ind2star_instance(&inst)?;
            let sidecar = Sidecar {
                kind: ReductionKind::Ind2Star,
                original_nodes: inst.graph.node_count(),
                original_edges: inst.graph.edge_count(),
                k: None,
                threshold: None,
            };
            (reduced, sidecar)
        }
        ReductionArg::Wind2wstar => {
            let k = a.k.ok_or_else(|| CliError::Input("wind2wstar needs --k".into()))?;
            let inst = parse_instance(&text).map_err(|e| CliError::input(&a.input, e))?;
            let (reduced, red) = gadget_instance(&inst, k)?;
            let sidecar = Sidecar {
                kind: ReductionKind::Wind2Wstar,
                original_nodes: inst.graph.node_count(),
                original_edges: inst.graph.edge_count(),
                k: Some(k),
                threshold: Some(red.star_bound()),
            };
            (reduced, sidecar)
        }
        ReductionArg::Bp2wind => {
            let bp = parse_binpack(&text).map_err(|e| CliError::input(&a.input, e))?;
            let (reduced, t) = binpack_instance(&bp)?;
            // Item and bin counts stand in for the node and edge counts.
            let sidecar = Sidecar {
                kind: ReductionKind::Bp2Wind,
                original_nodes: bp.sizes.len(),
                original_edges: bp.bins,
                k: None,
                threshold: Some(t),
            };
            (reduced, sidecar)
        }
    };
    let map = sidecar_path(&a.out);
    write_file(&a.out, &print_instance(&reduced))?;
    write_file(&map, &crate::format::print_sidecar(&sidecar))?;
    say!(
        out,
        "wrote {} ({} nodes, {} edges) and {}",
        a.out.display(),
        reduced.graph.node_count(),
        reduced.graph.edge_count(),
        map.display()
    )?;
    if let Some(t) = sidecar.threshold {
        say!(out, "threshold {t}")?;
    }
    Ok(())
}

fn complete_coloring(sol: &Solution, inst: &Instance, path: &Path) -> Result<PartialColoring, CliError> {
    let c = sol.to_coloring(inst).map_err(|e| CliError::input(path, e))?;
    if let Some(e) = c.uncolored_edges().next() {
        return Err(CliError::Rejected(format!("reduced solution leaves edge {e} without owner")));
    }
    c.check_against(&inst.graph).map_err(|e| CliError::Rejected(e.to_string()))?;
    Ok(c)
}

fn check_counts(sidecar: &Sidecar, nodes: usize, edges: usize) -> Result<(), CliError> {
    if (sidecar.original_nodes, sidecar.original_edges) != (nodes, edges) {
        return Err(CliError::Input(format!(
            "map was written for {} nodes and {} edges, original has {nodes} and {edges}",
            sidecar.original_nodes, sidecar.original_edges
        )));
    }
    Ok(())
}

fn tails_solution(inst: &Instance, o: &Orientation, value: Objective) -> Result<Solution, CliError> {
    let c = orientation_to_owner(&inst.graph, o).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Solution::from_coloring(inst, &c, value))
}

fn pullback(a: &PullbackArgs, out: Out) -> Result<(), CliError> {
    let sidecar = parse_sidecar(&read(&a.map)?).map_err(|e| CliError::input(&a.map, e))?;
    let sol = parse_solution(&read(&a.solution)?).map_err(|e| CliError::input(&a.solution, e))?;
    let original_text = read(&a.original)?;
    let parse_original = || parse_instance(&original_text).map_err(|e| CliError::input(&a.original, e));
    match sidecar.kind {
        ReductionKind::Ind2Star => {
            let inst = parse_original()?;
            check_counts(&sidecar, inst.graph.node_count(), inst.graph.edge_count())?;
            let (reduced, red) = ind2star_instance(&inst)?;
            let c = complete_coloring(&sol, &reduced, &a.solution)?;
            let o = recover_ind_solution(&red, &c).map_err(|e| CliError::Rejected(e.to_string()))?;
            let value = Objective::Finite(o.max_in_degree(&inst.graph));
            deliver(out, &tails_solution(&inst, &o, value)?, a.out.as_deref())
        }
        ReductionKind::Wind2Wstar => {
            let inst = parse_original()?;
            check_counts(&sidecar, inst.graph.node_count(), inst.graph.edge_count())?;
            let k = sidecar.k.ok_or_else(|| CliError::Input("wind2wstar map lacks `k`".into()))?;
            let (reduced, red) = gadget_instance(&inst, k)?;
            let c = complete_coloring(&sol, &reduced, &a.solution)?;
            let o = red.restrict(&owner_to_orientation(&reduced.graph, &c).map_err(input)?);
            let value = finite(weighted_value(&inst.graph, &o, WeightedObjective::Indegree));
            deliver(out, &tails_solution(&inst, &o, value)?, a.out.as_deref())
        }
        ReductionKind::Bp2Wind => {
            let bp = parse_binpack(&original_text).map_err(|e| CliError::input(&a.original, e))?;
            check_counts(&sidecar, bp.sizes.len(), bp.bins)?;
            let (reduced, _) = binpack_instance(&bp)?;
            let c = complete_coloring(&sol, &reduced, &a.solution)?;
            let o = owner_to_orientation(&reduced.graph, &c).map_err(input)?;
            let packing = extract_packing(&bp, &o).map_err(|e| CliError::Rejected(e.to_string()))?;
            let mut text = String::new();
            for (i, &j) in packing.iter().enumerate() {
                text.push_str(&format!("assign i{} b{}\n", i + 1, j + 1));
            }
            let loads = bp.loads(&packing);
            let list: Vec<String> = loads.iter().map(u64::to_string).collect();
            text.push_str(&format!("loads {}\n", list.join(" ")));
            match &a.out {
                Some(p) => write_file(p, &text)?,
                None => emit(out, &text)?,
            }
            if let Some(j) = loads.iter().position(|&l| l > bp.capacity) {
                return Err(CliError::Rejected(format!(
                    "bin b{} holds {} above capacity {}",
                    j + 1,
                    loads[j],
                    bp.capacity
                )));
            }
            Ok(())
        }
    }
}

/// Above this many edges `approx` skips the exhaustive comparison.
const APPROX_ORACLE_EDGES: usize = 20;

fn approx(a: &ApproxArgs, out: Out) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = &inst.graph;
    let (r, objective, factor) = match a.objective {
        ApproxObjective::Wind => (approx2_wind(g), WeightedObjective::Indegree, 2),
        ApproxObjective::Wstar => (approx4_wstar(g), WeightedObjective::Star, 4),
    };
    let r = r.map_err(input)?;
    if weighted_value(g, &r.orientation, objective) != r.value {
        return Err(CliError::Internal("approximate orientation does not attain its value".into()));
    }
    if let Some(p) = &a.out {
        let sol = tails_solution(&inst, &r.orientation, finite(r.value))?;
        write_file(p, &print_solution(&sol))?;
    }
    say!(out, "value {}", r.value)?;
    say!(out, "lp_threshold {}", r.lp_threshold)?;
    if g.edge_count() <= APPROX_ORACLE_EDGES {
        let opt = brute_force_weighted(g, objective).map_err(input)?.value;
        say!(out, "optimum {opt}")?;
        say!(out, "ratio {:.3}", r.value as f64 / opt as f64)?;
        if r.value > factor * opt || r.value < opt {
            return Err(CliError::Internal(format!("value {} outside [{opt}, {}]", r.value, factor * opt)));
        }
    }
    Ok(())
}

fn default_seed() -> Result<u64, CliError> {
    match std::env::var("STARPART_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("STARPART_SEED must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn gen(a: &GenArgs, out: Out) -> Result<(), CliError> {
    let seed = match a.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let n = a.n;
    let max_m = n * n.saturating_sub(1) / 2;
    let m = a.m.unwrap_or(2 * n).clamp(n.saturating_sub(1), max_m.max(n.saturating_sub(1)));
    let family = match a.family {
        FamilyArg::Knn => Family::Knn(n),
        FamilyArg::Path => Family::Path(n),
        FamilyArg::Cycle => Family::Cycle(n),
        FamilyArg::Star => Family::Star(n),
        FamilyArg::Pseudoforest => Family::Pseudoforest { n, seed },
        FamilyArg::Random => Family::RandomConnected { n, m, seed },
        FamilyArg::Hyper => Family::RandomLinearHyper {
            n,
            m,
            max_edge_size: a.max_edge_size,
            seed,
        },
        FamilyArg::Multi => Family::RandomMulti {
            n,
            m,
            max_mult: a.max_mult,
            seed,
        },
        FamilyArg::Selfloop => Family::RandomSelfLoops {
            n,
            m,
            loops: a.loops,
            seed,
        },
        FamilyArg::DfsExample => Family::DfsExample,
        FamilyArg::FlowExample => Family::FlowExample,
        FamilyArg::FlowInfeasible => Family::FlowInfeasibleExample,
    };
    let capacities = match a.caps {
        CapsArg::Default => CapacityRule::Default,
        CapsArg::Uniform => CapacityRule::Uniform(a.cap),
        CapsArg::Random => CapacityRule::Random { seed: seed ^ 0xcafe },
        CapsArg::Positive => CapacityRule::RandomPositive { seed: seed ^ 0xcafe },
    };
    let weights = match a.max_weight {
        Some(max) => WeightRule::Random { max, seed: seed ^ 0xbeef },
        None => WeightRule::Unit,
    };
    let spec = GeneratorSpec::new(family).with_capacities(capacities).with_weights(weights);
    let g = generate(&spec).map_err(input)?;
    let text = print_instance(&Instance::with_default_names(g));
    match &a.out {
        Some(p) => write_file(p, &text),
        None => emit(out, &text),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("expected `lo..hi`, got `{s}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn ladder(lo: usize, hi: usize, steps: usize) -> Vec<usize> {
    if steps <= 1 || lo == hi {
        return vec![hi];
    }
    let mut sizes: Vec<usize> = (0..steps).map(|i| lo + (hi - lo) * i / (steps - 1)).collect();
    sizes.dedup();
    sizes
}

fn bench(a: &BenchArgs, out: Out) -> Result<(), CliError> {
    let (lo, hi) = parse_range(&a.nodes)?;
    let seed = match a.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    say!(out, "{:>8} {:>10} {:>6} {:>10} {:>10}", "nodes", "edges", "value", "dfs_ms", "flow_ms")?;
    for (i, n) in ladder(lo, hi, a.steps).into_iter().enumerate() {
        let family = match a.family {
            BenchFamily::Random => {
                let m = (n * a.degree / 2).clamp(n - 1, n * (n - 1) / 2);
                Family::RandomConnected {
                    n,
                    m,
                    seed: seed.wrapping_add(i as u64),
                }
            }
            BenchFamily::Knn => Family::Knn(n),
            BenchFamily::Cycle => Family::Cycle(n.max(3)),
        };
        let g = generate(&GeneratorSpec::new(family)).map_err(input)?;
        let t = Instant::now();
        let dfs = minimum_star_coloring(&g).map_err(input)?;
        let dfs_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let flow = minimum_star_coloring_flow(&g).map_err(input)?;
        let flow_ms = t.elapsed().as_secs_f64() * 1e3;
        let value = match dfs.value {
            Objective::Finite(x) => x.to_string(),
            Objective::Infeasible => "INF".to_string(),
        };
        say!(
            out,
            "{:>8} {:>10} {:>6} {:>10.2} {:>10.2}",
            g.node_count(),
            g.edge_count(),
            value,
            dfs_ms,
            flow_ms
        )?;
        if dfs.value != flow.value {
            return Err(CliError::Internal(format!(
                "solvers disagree on {} nodes: dfs {:?}, flow {:?}",
                g.node_count(),
                dfs.value,
                flow.value
            )));
        }
    }
    Ok(())
}
