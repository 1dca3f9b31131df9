use std::process::Command;

fn crossings(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_crossings"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn analyze_prints_exact_variance() {
    let out = crossings(&["analyze", "--family", "linear_tree", "--n", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("347/90"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("command=analyze"));
}

#[test]
fn exit_codes() {
    assert_eq!(crossings(&["analyze", "--bogus"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "C~\nC#\n").unwrap();
    let out = crossings(&["validate", "graph6", "--graph6", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(
        crossings(&["validate", "trees", "--nmax", "12"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn seed_from_environment() {
    let run = |env: &str| {
        Command::new(env!("CARGO_BIN_EXE_crossings"))
            .args([
                "estimate",
                "--family",
                "cycle",
                "--n",
                "20",
                "--samples",
                "3000",
                "--out",
                "json",
            ])
            .env("CROSSINGS_SEED", env)
            .output()
            .unwrap()
    };
    let a = run("5");
    assert!(a.status.success());
    assert_eq!(a.stdout, run("5").stdout);
    assert_ne!(a.stdout, run("6").stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["seed"], 5);
}

#[test]
fn validate_graph6_corpus_json() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/atlas_n4.g6");
    let out = crossings(&["--out", "json", "validate", "graph6", "--graph6", path]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["graphs_checked"], 11);
    assert_eq!(v["success"], true);
}
