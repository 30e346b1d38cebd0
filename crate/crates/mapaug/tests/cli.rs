use std::path::Path;
use std::process::{Command, Output};

use mapaug::gen::{generate, Model};
use mapaug::io::write_instance;

const SQUARE: &str = "c alternating square\np map 4 4\ne 1 2 0\ne 2 3 1\ne 3 4 0\ne 4 1 1\n";

fn mapaug(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapaug"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn solve_square_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.txt");
    std::fs::write(&input, SQUARE).unwrap();
    let out = mapaug(&["solve", "--input", path(&input), "--json", "--oracle"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], "mapaug.run/1");
    assert_eq!(report["weight"], 2);
    assert_eq!(report["ratio_to_d2"], 1.0);
    assert_eq!(report["bound_satisfied"], true);
    assert_eq!(report["feasible"], true);
}

#[test]
fn verify_names_the_bridge_of_a_tampered_solution() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.txt");
    let sol = dir.path().join("square.sol");
    std::fs::write(&input, SQUARE).unwrap();
    std::fs::write(&sol, "s 3 1\nf 1\nf 2\nf 3\n").unwrap();
    let out = mapaug(&["verify", "--input", path(&input), "--solution", path(&sol)]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bridge"), "{err}");
}

#[test]
fn verify_rejects_a_wrong_declared_weight() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.txt");
    let sol = dir.path().join("square.sol");
    std::fs::write(&input, SQUARE).unwrap();
    std::fs::write(&sol, "s 4 1\nf 1\nf 2\nf 3\nf 4\n").unwrap();
    let out = mapaug(&["verify", "--input", path(&input), "--solution", path(&sol)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "p map 3 1\ne 1 2 7\n").unwrap();
    assert_eq!(
        mapaug(&["solve", "--input", path(&bad)]).status.code(),
        Some(2)
    );

    // two zero edges at vertex 1
    let invalid = dir.path().join("invalid.txt");
    std::fs::write(&invalid, "p map 3 3\ne 1 2 0\ne 2 3 1\ne 3 1 0\n").unwrap();
    assert_eq!(
        mapaug(&["solve", "--input", path(&invalid)]).status.code(),
        Some(3)
    );

    // a path is not 2-edge-connected
    let path3 = dir.path().join("path.txt");
    std::fs::write(&path3, "p map 3 2\ne 1 2 1\ne 2 3 1\n").unwrap();
    assert_eq!(
        mapaug(&["d2", "--input", path(&path3)]).status.code(),
        Some(3)
    );

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        mapaug(&["solve", "--input", path(&missing)]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_accepts_every_solve_output() {
    let dir = tempfile::tempdir().unwrap();
    for (model, n, density) in [
        (Model::Random, 8, 0.5),
        (Model::Random, 14, 0.3),
        (Model::SmallHeavy, 24, 0.0),
        (Model::SmallHeavy, 30, 0.05),
    ] {
        for seed in 0..4 {
            let inst = generate(model, n, density, seed).unwrap();
            let input = dir.path().join(format!("{model}-{n}-{seed}.txt"));
            let sol = dir.path().join(format!("{model}-{n}-{seed}.sol"));
            std::fs::write(&input, write_instance(inst.graph())).unwrap();
            let out = mapaug(&["solve", "--input", path(&input), "--output", path(&sol)]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{}",
                String::from_utf8_lossy(&out.stderr)
            );
            let out = mapaug(&[
                "verify",
                "--input",
                path(&input),
                "--solution",
                path(&sol),
                "--exact",
            ]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
    }
}

#[test]
fn gen_is_deterministic_and_parses() {
    let a = mapaug(&[
        "gen",
        "--model",
        "random",
        "--n",
        "8",
        "--density",
        "0.5",
        "--seed",
        "7",
    ]);
    let b = mapaug(&[
        "gen",
        "--model",
        "random",
        "--n",
        "8",
        "--density",
        "0.5",
        "--seed",
        "7",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(mapaug::io::parse_instance(&text).is_ok());
    assert_ne!(
        mapaug(&["gen", "--model", "nope", "--n", "8"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn d2_json_lists_edges() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.txt");
    std::fs::write(&input, SQUARE).unwrap();
    let out = mapaug(&["d2", "--input", path(&input), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weight"], 2);
    assert_eq!(v["edges"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn bench_small_corpus_meets_the_bound() {
    let out = mapaug(&["bench", "--count", "60", "--oracle", "--json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "mapaug.bench/1");
    assert_eq!(v["runs"], 60);
    assert_eq!(v["within_bound"], 60);
    assert_eq!(v["feasible"], 60);
}
