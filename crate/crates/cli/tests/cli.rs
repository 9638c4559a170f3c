use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorenzkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kneading_full_tent() {
    let o = run(&["kneading", "--param", "2", "--depth", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu_prefix"], "100000000000");
    assert_eq!(v["cutting"]["S"][0], 1);
}

#[test]
fn kneading_from_word() {
    let o = run(&[
        "kneading", "--nu", "1(0)", "--depth", "6", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nu    100000\n"));
}

#[test]
fn rotation_reports_exact_hit() {
    let o = run(&["rotation", "--param", "3/2", "--n", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cutting"]["alpha"], "4/7");
    assert_eq!(v["counting"]["exact"], "4/7");
    assert_eq!(v["map"], "tent(3/2)");
}

#[test]
fn ostrowski_fibonacci() {
    let o = run(&["ostrowski", "--cf", "[0;(1)]", "--max", "40"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["S"], serde_json::json!([1, 2, 3, 5, 8, 13, 21, 34]));
}

#[test]
fn periods_verdicts_pass() {
    let o = run(&["periods", "--param", "9/5", "--max-period", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert!(items.iter().all(|i| i["verdict"]["pass"] == true));
}

#[test]
fn sweep_csv_is_ordered_and_deterministic() {
    let args = [
        "sweep",
        "--from",
        "3/2",
        "--to",
        "2",
        "--steps",
        "5",
        "--max-period",
        "5",
        "--mode",
        "all",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,mode,m,present"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first, ["3/2", "unimodal", "1", "true"]);
    assert_eq!(text.lines().count(), 1 + 5 * 3 * 5);
}

#[test]
fn verify_paper_tables_succeeds() {
    let o = run(&["verify", "--suite", "paper-tables"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
}

#[test]
fn access_certifies_fixed_point_orbit() {
    let o = run(&["access", "--param", "3/2", "--orbit", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificate"]["status"], "certified-lift");
    assert_eq!(v["rechecked"], true);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("lorenzkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    let o = run(&[
        "--out",
        path.to_str().unwrap(),
        "ostrowski",
        "--cf",
        "[0;(2)]",
        "--max",
        "30",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["S"], serde_json::json!([1, 2, 3, 5, 7, 12, 17, 29]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_and_library_errors_exit_2() {
    assert_eq!(run(&["kneading", "--param", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["kneading", "--family", "tent", "--param", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["sturmian", "--alpha", "3/2"]).status.code(), Some(2));
}
