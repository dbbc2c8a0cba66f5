use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use starpart_cli::format::{parse_instance, parse_solution, print_instance};
use starpart::Objective;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starpart"))
        .args(args)
        .env_remove("STARPART_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn graph_fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "graph"))
        .filter(|p| !p.ends_with("overlapping_triples.graph"))
        .collect();
    v.sort();
    v
}

#[test]
fn solves_the_reference_instances() {
    let o = run(&["solve", &fixture("dfs_example.graph"), "--algo", "dfs"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).ends_with("value 3\n"));
    let o = run(&["solve", &fixture("knn4.graph"), "--algo", "flow"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).ends_with("value 3\n"));
}

#[test]
fn solution_output_is_stable() {
    let o = run(&["solve", &fixture("triangle.graph"), "--algo", "dfs"]);
    assert_eq!(stdout(&o), "owner 0 v1\nowner 1 v2\nowner 2 v1\nvalue 2\n");
    let o = run(&["solve", &fixture("infeasible.graph")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "value INFEASIBLE\n");
}

#[test]
fn non_linear_hypergraph_is_an_input_error() {
    let o = run(&["solve", &fixture("overlapping_triples.graph")]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("edges 0 (v1 v2 v3) and 1 (v2 v3 v4)"), "{err}");
}

#[test]
fn flow_rejects_hypergraphs() {
    let o = run(&["solve", &fixture("linear_hyper.graph"), "--algo", "flow"]);
    assert_eq!(code(&o), 2);
    let o = run(&["solve", &fixture("linear_hyper.graph"), "--algo", "dfs"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn parse_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.graph");
    std::fs::write(&p, "kind simple\nnode a\nnode b\nedge a c\n").unwrap();
    let o = run(&["solve", path_str(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4: unknown node `c`"), "{}", stderr(&o));
    let o = run(&["solve", "/nonexistent/file.graph"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_exit_codes() {
    let (g, sol) = (fixture("triangle.graph"), fixture("triangle_coloring.sol"));
    let o = run(&["verify", &g, &sol, "--bound", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "ok value 2\n");

    let o = run(&["verify", &g, &sol, "--bound", "1"]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("node v1") || err.contains("node v2"), "{err}");

    let o = run(&["verify", &g, &fixture("triangle_incomplete.sol")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("edge 1 has no owner"));

    let o = run(&["verify", &g, &sol, "--verbose"]);
    assert_eq!(stdout(&o), "node v1 2 cap=2\nnode v2 2 cap=2\nnode v3 1 cap=2\nok value 2\n");
}

#[test]
fn verify_rejects_wrong_claims() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture("triangle.graph");
    let lie = dir.path().join("lie.sol");
    std::fs::write(&lie, "owner 0 v1\nowner 1 v3\nowner 2 v3\nvalue 1\n").unwrap();
    assert_eq!(code(&run(&["verify", &g, path_str(&lie)])), 1);
    std::fs::write(&lie, "owner 0 v3\nowner 1 v3\nowner 2 v3\n").unwrap();
    assert_eq!(code(&run(&["verify", &g, path_str(&lie)])), 1, "v3 is not an endpoint of edge 0");
    std::fs::write(&lie, "value INFEASIBLE\n").unwrap();
    assert_eq!(code(&run(&["verify", &g, path_str(&lie)])), 1);
    assert_eq!(code(&run(&["verify", &fixture("infeasible.graph"), path_str(&lie)])), 0);
    std::fs::write(&lie, "owner 0 nobody\n").unwrap();
    assert_eq!(code(&run(&["verify", &g, path_str(&lie)])), 2);
}

#[test]
fn instance_files_round_trip() {
    for p in graph_fixtures() {
        let text = std::fs::read_to_string(&p).unwrap();
        let inst = parse_instance(&text).unwrap();
        let printed = print_instance(&inst);
        assert_eq!(parse_instance(&printed).unwrap(), inst, "{}", p.display());
        assert_eq!(print_instance(&parse_instance(&printed).unwrap()), printed);
    }
}

/// Every solution `solve` writes for the fixture corpus passes `verify`.
#[test]
fn verify_accepts_every_solve_output() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("out.sol");
    let sol = path_str(&sol);
    let mut checked = 0;
    for p in graph_fixtures() {
        let g = path_str(&p);
        let inst = parse_instance(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let mut runs: Vec<(&str, &str)> = vec![("star", "dfs"), ("star", "oracle")];
        if inst.graph.kind() != starpart::GraphKind::LinearHyper {
            runs.push(("star", "flow"));
        }
        if inst.graph.kind() == starpart::GraphKind::Simple {
            runs.extend([("ind", "dfs"), ("ind", "flow"), ("ind", "oracle")]);
            if inst.graph.edge_count() <= 12 {
                runs.extend([("wind", "oracle"), ("wstar", "oracle")]);
            }
        }
        let mut values = std::collections::HashMap::new();
        for (objective, algo) in runs {
            let o = run(&["solve", g, "--algo", algo, "--objective", objective, "--out", sol]);
            assert_eq!(code(&o), 0, "{g} {objective} {algo}: {}", stderr(&o));
            let value = parse_solution(&std::fs::read_to_string(sol).unwrap()).unwrap().value.unwrap();
            assert_eq!(*values.entry(objective).or_insert(value), value, "{g} {objective} {algo}");
            let mut args = vec!["verify", g, sol, "--objective", objective];
            let bound;
            if let Objective::Finite(x) = value {
                bound = x.to_string();
                args.extend(["--bound", &bound]);
            }
            let v = run(&args);
            assert_eq!(code(&v), 0, "{g} {objective} {algo}: {}", stderr(&v));
            checked += 1;
        }
    }
    assert!(checked > 40);
}

#[test]
fn ind2star_pullback_verifies_on_the_original() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["triangle.graph", "dfs_example.graph", "tight_path.graph", "knn4.graph", "flow_infeasible.graph"] {
        let orig = fixture(name);
        let red = dir.path().join("red.graph");
        let map = dir.path().join("red.graph.map");
        let sol = dir.path().join("red.sol");
        let back = dir.path().join("back.sol");
        assert_eq!(code(&run(&["reduce", "ind2star", &orig, "--out", path_str(&red)])), 0);
        let o = run(&["solve", path_str(&red), "--algo", "flow", "--out", path_str(&sol)]);
        assert_eq!(code(&o), 0);
        let x: usize = stdout(&o).trim().strip_prefix("value ").unwrap().parse().unwrap();
        let o = run(&[
            "pullback",
            path_str(&sol),
            "--map",
            path_str(&map),
            "--original",
            &orig,
            "--out",
            path_str(&back),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let k = (x - 1).to_string();
        let v = run(&["verify", &orig, path_str(&back), "--objective", "ind", "--bound", &k]);
        assert_eq!(code(&v), 0, "{name}: {}", stderr(&v));
        let o = run(&["solve", &orig, "--objective", "ind", "--algo", "oracle"]);
        assert!(stdout(&o).ends_with(&format!("value {k}\n")), "{name}");
    }
}

#[test]
fn ind2star_doubles_the_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let red = dir.path().join("t.graph");
    run(&["reduce", "ind2star", &fixture("triangle.graph"), "--out", path_str(&red)]);
    let inst = parse_instance(&std::fs::read_to_string(&red).unwrap()).unwrap();
    assert_eq!(inst.graph.capacities(), &[3, 3, 3, 1, 1, 1]);
}

#[test]
fn gadget_pullback_verifies_on_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let orig = fixture("weighted_edge.graph");
    let red = dir.path().join("g.graph");
    let sol = dir.path().join("g.sol");
    let back = dir.path().join("back.sol");
    let o = run(&["reduce", "wind2wstar", &orig, "--k", "2", "--out", path_str(&red)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("(20 nodes, 21 edges)"));
    let threshold: u64 = stdout(&o).lines().last().unwrap().strip_prefix("threshold ").unwrap().parse().unwrap();
    let o = run(&["solve", path_str(&red), "--algo", "oracle", "--objective", "wstar", "--out", path_str(&sol)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let value: u64 = stdout(&o).trim().strip_prefix("value ").unwrap().parse().unwrap();
    assert!(value <= threshold);
    let map = dir.path().join("g.graph.map");
    let o = run(&["pullback", path_str(&sol), "--map", path_str(&map), "--original", &orig, "--out", path_str(&back)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = run(&["verify", &orig, path_str(&back), "--objective", "wind", "--bound", "2"]);
    assert_eq!(code(&v), 0, "{}", stderr(&v));
    assert_eq!(code(&run(&["reduce", "wind2wstar", &orig, "--out", path_str(&red)])), 2, "--k is required");
}

#[test]
fn bin_packing_pullback() {
    let dir = tempfile::tempdir().unwrap();
    for (name, fits) in [("packing_example.binpack", true), ("packing_no.binpack", false)] {
        let red = dir.path().join("bp.graph");
        let sol = dir.path().join("bp.sol");
        let o = run(&["reduce", "bp2wind", &fixture(name), "--out", path_str(&red)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let threshold: u64 = stdout(&o).lines().last().unwrap().strip_prefix("threshold ").unwrap().parse().unwrap();
        let o = run(&["solve", path_str(&red), "--algo", "oracle", "--objective", "wind", "--out", path_str(&sol)]);
        let value: u64 = stdout(&o).trim().strip_prefix("value ").unwrap().parse().unwrap();
        assert_eq!(value <= threshold, fits, "{name}");
        let map = dir.path().join("bp.graph.map");
        let o = run(&["pullback", path_str(&sol), "--map", path_str(&map), "--original", &fixture(name)]);
        assert_eq!(code(&o) == 0, fits, "{name}: {}", stderr(&o));
        if fits {
            assert_eq!(threshold, 20);
            let loads = stdout(&o).lines().last().unwrap().to_string();
            assert!(loads.split_whitespace().skip(1).all(|l| l.parse::<u64>().unwrap() <= 10), "{loads}");
        }
    }
}

#[test]
fn approx_reports_ratio() {
    let o = run(&["approx", &fixture("weighted_triangle.graph"), "--objective", "wind"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let value: u64 = out.lines().next().unwrap().strip_prefix("value ").unwrap().parse().unwrap();
    assert!(value <= 6, "{out}");
    assert!(out.contains("optimum 3"));
    let o = run(&["approx", &fixture("weighted_triangle.graph"), "--objective", "wstar"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("optimum 6"));
    let o = run(&["approx", &fixture("doubled_triangle.graph")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = run(&["gen", "--family", "random", "--n", "9", "--seed", "5"]);
    let b = run(&["gen", "--family", "random", "--n", "9", "--seed", "5"]);
    let c = run(&["gen", "--family", "random", "--n", "9", "--seed", "6"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    let env = Command::new(env!("CARGO_BIN_EXE_starpart"))
        .args(["gen", "--family", "random", "--n", "9"])
        .env("STARPART_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), stdout(&a));

    let knn = parse_instance(&stdout(&run(&["gen", "--family", "knn", "--n", "5"]))).unwrap();
    assert_eq!((knn.graph.node_count(), knn.graph.edge_count()), (10, 25));
    let fixture_text = std::fs::read_to_string(fixture("flow_infeasible.graph")).unwrap();
    assert_eq!(stdout(&run(&["gen", "--family", "flow-infeasible"])), fixture_text);
}

#[test]
fn bench_prints_a_row_per_size() {
    let o = run(&["bench", "--nodes", "20..60", "--steps", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4, "{out}");
    assert!(out.starts_with("   nodes"));
    assert_eq!(code(&run(&["bench", "--nodes", "9..3"])), 2);
}
