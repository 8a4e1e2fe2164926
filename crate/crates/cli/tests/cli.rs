use std::process::{Command, Output};

fn coinweigh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coinweigh"))
        .args(args)
        .env("COINWEIGH_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_line() {
    let o = coinweigh(&["verify", "--strategy", "sort3-tiny", "--n", "4"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "strategy=sort3-tiny\tuniverse=all\tn=4\truns=81\tfailures=0\tmax=4\tbound=4\ttight=yes"
    );
}

#[test]
fn verify_json_parses() {
    let o = coinweigh(&["verify", "--strategy", "sort3-huge", "--n", "5", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["runs"], 243);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn run_emits_jsonl() {
    let o = coinweigh(&["run", "--strategy", "sort3-tiny", "--assignment", "3121"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["step"], 1);
    assert_eq!(
        lines.last().unwrap()["answer"]["groups"],
        serde_json::json!([[1, 3], [2], [0]])
    );
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["run", "--strategy", "sort3-tiny", "--universe", "all", "--n", "7", "--seed", "11"];
    let a = coinweigh(&args);
    let b = coinweigh(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_output_independent_of_threads() {
    let args = ["verify", "--strategy", "find-mid", "--n", "7", "--universe", "one-middle", "--json"];
    let a = coinweigh(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_coinweigh"))
        .args(args)
        .env("COINWEIGH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn balance_table() {
    let o = coinweigh(&["count", "--table", "balance", "--max", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["1\t3\t3\tyes", "2\t15\t15\tyes", "3\t93\t93\tyes", "4\t639\t639\tyes"]);
}

#[test]
fn adversary_trace() {
    let o = coinweigh(&["adversary", "--strategy", "sort3-tiny", "--n", "6"]);
    assert!(o.status.success());
    // seven weighings plus the answer line
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn hunt_with_seven() {
    let o = coinweigh(&["hunt", "--weighings", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("max=7"));
}

#[test]
fn exit_codes() {
    assert_eq!(coinweigh(&["verify", "--strategy", "nope", "--n", "3"]).status.code(), Some(2));
    assert_eq!(coinweigh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        coinweigh(&["run", "--strategy", "sort3-tiny", "--assignment", "3141"]).status.code(),
        Some(2)
    );
    assert_eq!(coinweigh(&["verify", "--strategy", "sort3-tiny", "--n", "20"]).status.code(), Some(2));
}
