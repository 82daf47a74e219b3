use std::path::Path;
use std::process::{Command, Output};

use volbench::run::RunReport;

fn volbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_volbench"))
        .args(args)
        .env_remove("VOLBENCH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(path: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_examples() {
    for (scaling, estimate, initial, adjusted) in [
        ("n^2", "gate-depth", "QV-2", "QV-3"),
        ("n^3*log", "runtime", "QV-4", "QV-4"),
        ("1", "gate-count", "QV-1", "QV-1"),
    ] {
        let o = volbench(&["classify", "--scaling", scaling, "--estimate", estimate]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.contains(&format!("initial   {initial}")), "{text}");
        assert!(text.contains(&format!("adjusted  {adjusted}")), "{text}");
    }
    assert_eq!(volbench(&["classify", "--scaling", "n^^2", "--estimate", "runtime"]).status.code(), Some(2));
    assert_eq!(volbench(&["classify", "--scaling", "n", "--estimate", "vibes"]).status.code(), Some(2));
}

#[test]
fn tables_check_detects_a_changed_cell() {
    let ok = volbench(&["tables", "--check"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("QV-1   33 (57%)"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edited.csv");
    // turn one gate-count O(n^2) into a gate-depth one
    let edited = volbench::dataset::BUNDLED_CSV.replacen("2,0,gate-count", "2,0,gate-depth", 1);
    std::fs::write(&path, edited).unwrap();
    let bad = volbench(&["tables", "--check", "--dataset", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(4));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("first mismatch"), "{err}");

    let json = volbench(&["tables", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(value["final"]["classes"][1]["count"], 18);
}

#[test]
fn invalid_flags_and_capacity() {
    assert_eq!(volbench(&["run", "--class", "7"]).status.code(), Some(2));
    assert_eq!(volbench(&["run", "--p2", "-0.1"]).status.code(), Some(2));
    assert_eq!(volbench(&["run", "--circuits", "1"]).status.code(), Some(2));
    assert_eq!(volbench(&["run", "--topology", "torus"]).status.code(), Some(2));
    assert_eq!(volbench(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(volbench(&["run", "--class", "1", "--n-max", "24", "--out", "-"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("wide.json");
    std::fs::write(&c, r#"{"width": 7, "layers": []}"#).unwrap();
    let exact = volbench(&["circuit", "simulate", "--input", c.to_str().unwrap(), "--exact"]);
    assert_eq!(exact.status.code(), Some(3));
}

#[test]
fn circuit_gen_and_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    let gen = volbench(&["circuit", "gen", "--width", "3", "--depth", "4", "--seed", "9", "--out", c.to_str().unwrap()]);
    assert!(gen.status.success());
    let circuit = volbench::circuit_io::from_json(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!((circuit.width, circuit.depth()), (3, 4));

    let ideal = volbench(&["circuit", "simulate", "--input", c.to_str().unwrap()]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&ideal)).unwrap();
    let total: f64 = value["probabilities"].as_object().unwrap().values().map(|p| p.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);

    let noisy = volbench(&["circuit", "simulate", "--input", c.to_str().unwrap(), "--shots", "300", "--p2", "0.1"]);
    let counts = volbench::counts_io::counts_from_json(&stdout(&noisy)).unwrap();
    assert_eq!(counts.total_shots(), 300);
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"classes": [2], "n_max": 3, "circuits": 4, "shots": 50, "seed": 77, "noise": {"p2": 0.01}}"#)
        .unwrap();
    let out = dir.path().join("r.json");
    let run = |extra: &[&str], env_seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_volbench"));
        cmd.args(["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]).args(extra);
        match env_seed {
            Some(s) => cmd.env("VOLBENCH_SEED", s),
            None => cmd.env_remove("VOLBENCH_SEED"),
        };
        assert!(cmd.output().unwrap().status.success());
        report(&out).config
    };
    let from_file = run(&[], Some("5"));
    assert_eq!((from_file.seed, from_file.circuits, from_file.noise.p2), (77, 4, 0.01));
    assert_eq!(from_file.classes[0].k(), 2);
    let flagged = run(&["--seed", "8", "--shots", "20", "--p-readout", "0.02"], None);
    assert_eq!((flagged.seed, flagged.shots, flagged.circuits), (8, 20, 4));
    assert_eq!((flagged.noise.p2, flagged.noise.p_readout), (0.01, 0.02));

    // without a seed anywhere else, the environment supplies it
    std::fs::write(&cfg, r#"{"classes": [1], "n_max": 2, "circuits": 2, "shots": 10}"#).unwrap();
    assert_eq!(run(&[], Some("31")).seed, 31);
    assert_eq!(run(&[], None).seed, volbench::run::DEFAULT_SEED);
}
