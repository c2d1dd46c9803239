//! End-to-end runs of the `densekit` binary.

use std::path::Path;
use std::process::{Command, Output};

use densekit_cli::ExperimentReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densekit"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn greedypp_json_has_contract_keys() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k4.txt", "a b\na c\na d\nb c\nb d\nc d\n");
    let o = run(&["greedypp", &f, "--iters", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["best_density", "best_subset", "certificate", "convergence"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["best_density"], 1.5);
    assert_eq!(v["best_subset"], serde_json::json!(["a", "b", "c", "d"]));
    assert_eq!(v["convergence"].as_array().unwrap().len(), 10);
    assert_eq!(v["certificate"]["ratio"], 1.0);
}

#[test]
fn exact_refuses_signed_graph() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "signed.txt", "1 2 3\n2 3 -1\n1 3 2\n");
    let o = run(&["exact", &f, "--weighted"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NP-hard"));
    assert!(o.stdout.is_empty());
    // Greedy still runs, without a certificate.
    let o = run(&["greedypp", &f, "--weighted", "--iters", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = ExperimentReport::from_json(&stdout(&o)).unwrap();
    assert!(r.certificate.is_none() && r.graph.signed);
    assert_eq!(r.optimum.unwrap().method, "oracle");
}

#[test]
fn certify_stops_at_delta() {
    let o = run(&["certify", "gen:er:40:0.3", "--seed", "3", "--delta", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let r = ExperimentReport::from_json(&stdout(&o)).unwrap();
    let c = r.certificate.unwrap();
    assert!(c.ratio >= 0.99);
    assert_eq!(r.convergence.len(), c.iterations);
    assert!(
        r.convergence[c.iterations - 1]
            .accuracy_lower_bound
            .unwrap()
            >= 0.99
    );
}

#[test]
fn csv_output() {
    let o = run(&[
        "greedypp",
        "gen:complete:3",
        "--iters",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "iter,density,accuracy,dual_bound,ms\n1,1,1,2,\n2,1,1,1,\n"
    );
    let o = run(&[
        "greedypp",
        "gen:complete:3",
        "--iters",
        "1",
        "--format",
        "csv",
        "--no-optimum",
    ]);
    assert_eq!(
        stdout(&o),
        "iter,density,accuracy,dual_bound,ms\n1,1,>=0.5,2,\n"
    );
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(
        run(&["peel", "gen:complete:4", "--bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate", "x"]).status.code(), Some(1));
    assert_eq!(run(&["peel", "/no/such/file.txt"]).status.code(), Some(1));
    assert_eq!(run(&["peel", "gen:er:5:2.0"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "1 2\n2 3 4\n");
    let o = run(&["peel", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn oracle_refuses_large_graph() {
    let o = run(&["oracle", "gen:complete:30"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exact_exports_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("net.dimacs");
    let o = run(&[
        "exact",
        "gen:complete:4",
        "--dimacs",
        out.to_str().unwrap(),
        "--at",
        "3/2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    // 2 terminals + 4 vertices + 6 edges; 4 source arcs + 3 per edge.
    assert!(text.contains("p max 12 22\n"));
    assert!(text.contains("n 1 s\n") && text.contains("n 2 t\n"));
    let r = ExperimentReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.best_ratio, Some([6, 4]));
}

#[test]
fn weighted_scaling_for_exact() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.txt", "1 2 0.5\n2 3 0.5\n1 3 0.5\n3 4 0.25\n");
    assert_eq!(run(&["exact", &f, "--weighted"]).status.code(), Some(2));
    let o = run(&["exact", &f, "--weighted", "--scale", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = ExperimentReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.best_density, Some(0.5));
    assert_eq!(r.best_subset.unwrap(), vec!["1", "2", "3"]);
}

#[test]
fn bench_small_graph_notes_resolution() {
    let o = run(&["bench", "gen:trap:2:6:2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = ExperimentReport::from_json(&stdout(&o)).unwrap();
    let b = r.bench.unwrap();
    assert_eq!(b.timing_note.as_deref(), Some("below timer resolution"));
    assert!(b.speedup.is_none());
    assert!(b.iterations_to_90.unwrap() >= 1);
}

#[test]
fn printed_subsets_recompute() {
    for cmd in ["peel", "greedypp", "exact", "certify", "oracle"] {
        let o = run(&[cmd, "gen:er:16:0.4", "--seed", "11"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let r = ExperimentReport::from_json(&stdout(&o)).unwrap();
        let subset: Vec<usize> = r
            .best_subset
            .unwrap()
            .iter()
            .map(|l| l.parse().unwrap())
            .collect();
        let g = densekit::generators::erdos_renyi(16, 0.4, &mut {
            use rand::SeedableRng;
            rand_chacha::ChaCha8Rng::seed_from_u64(11)
        });
        let d = g.density(&subset).unwrap();
        assert_eq!(Some(d.value()), r.best_density, "{cmd}");
        let (a, b) = d.as_ratio().unwrap();
        let [p, q] = r.best_ratio.unwrap();
        assert_eq!(a * q, p * b, "{cmd}");
    }
}
