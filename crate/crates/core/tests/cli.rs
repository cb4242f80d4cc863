use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsefold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gf_csv() {
    let o = run(&["gf", "--genus", "1", "--order", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,count");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[5], "4,1");
    assert_eq!(lines[6], "5,5");

    let o = run(&["gf", "--genus", "0", "--order", "4", "--by-arcs", "--irreducible"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n,arcs,count\n"));

    let o = run(&["gf", "--genus", "1", "--order", "5", "--matchings"]);
    assert!(stdout(&o).contains("\n2,1\n3,10\n4,70\n5,420\n"));
}

#[test]
fn gf_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d0.csv");
    let o = run(&["gf", "--order", "5", "--eta", "1.0", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,weight\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn theory_csv() {
    let o = run(&["theory", "--genus", "0", "--max-n", "60"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m,P,E_bar"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 60);
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r[1])));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("polymer-zeta fit"));

    let o = run(&["theory", "--model", "loop", "--max-n", "50", "--weights", "scores"]);
    assert!(o.status.success());
    let o = run(&["theory", "--model", "loop", "--genus", "1", "--max-n", "20"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_check_and_table() {
    let o = run(&["oracle", "--check-gf", "--max-n", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "OK");

    let o = run(&["oracle", "--max-n", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("n,genus,all,irreducible\n"));
    assert!(out.contains("\n4,1,1,1\n"));

    let o = run(&["oracle", "--max-n", "40"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fold_formats() {
    let o = run(&["fold", "GGGAAACCC", "--model", "loop"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(((...)))"));
    assert!(out.contains("score 1.5"));

    let o = run(&["fold", "--random", "40", "--seed", "3", "--format", "json", "--dump-table"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sequence"].as_str().unwrap().len(), 40);
    assert_eq!(v["omega"], 820);
    assert!(v["table"]["l"].is_object() || v["table"]["l"].is_array());

    let sparse = run(&["fold", "--random", "60", "--format", "csv"]);
    let full = run(&["fold", "--random", "60", "--format", "csv", "--no-sparse"]);
    let field = |o: &Output, k: usize| stdout(o).lines().nth(1).unwrap().split(',').nth(k).unwrap().to_string();
    assert_eq!(field(&sparse, 2), field(&full, 2));
    let visits = |o: &Output| field(o, 6).parse::<u64>().unwrap();
    assert!(visits(&sparse) < visits(&full));
}

#[test]
fn fold_input_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.txt");
    std::fs::write(&path, "GGGA\nAACCC\n").unwrap();
    let o = run(&["fold", "--input", path.to_str().unwrap(), "--model", "loop"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(((...)))"));

    assert_eq!(run(&["fold"]).status.code(), Some(2));
    assert_eq!(run(&["fold", "GGXCC"]).status.code(), Some(1));
}

#[test]
fn sweep_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let o = run(&[
        "sweep",
        "--lengths",
        "20,40",
        "--batch",
        "5",
        "--model",
        "loop",
        "--output-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["sweep.csv", "probs.csv", "plot.gp", "config.json"] {
        assert!(out_dir.join(f).exists(), "{f}");
    }
    let csv = std::fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);

    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"lengths": [15], "batch": 3, "bogus": 1}"#).unwrap();
    let o = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn asym_estimates() {
    let o = run(&["asym", "--genus", "0", "--order", "300"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let gamma: f64 = out.lines().next().unwrap().strip_prefix("gamma ").unwrap().parse().unwrap();
    assert!((gamma - 2.618).abs() < 0.01);
    assert!(out.contains("subexp ") && out.contains("constant "));

    let o = run(&["asym", "--series", "loop", "--order", "50"]);
    assert_eq!(o.status.code(), Some(1));
}
