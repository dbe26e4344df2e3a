use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn treedepth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treedepth"))
        .args(args)
        .env_remove("TREEDEPTH_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn json(p: &str) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

/// Generates a family member and writes `I(G)^t`.
fn ideal_file(dir: &TempDir, family: &[&str], t: u32, name: &str) -> String {
    let g = path(dir, &format!("{name}.graph.json"));
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", &g]);
    assert_eq!(code(&treedepth(&args)), 0);
    let i = path(dir, &format!("{name}.ideal.json"));
    let t = t.to_string();
    assert_eq!(code(&treedepth(&["ideal", &g, "--t", &t, "-o", &i])), 0);
    i
}

#[test]
fn gen_writes_family_graphs() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.json");
    assert_eq!(code(&treedepth(&["gen", "caterpillar", "--n", "4", "--k", "7", "--l", "5", "-o", &g])), 0);
    let v = json(&g);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 26);
    assert_eq!(v["edges"].as_array().unwrap().len(), 25);
    assert_eq!(v["family"]["kind"], "caterpillar");

    let out = treedepth(&["gen", "lobster", "--r", "8", "--p", "4", "--q", "0"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], serde_json::json!({"kind": "lobster", "r": 8, "p": 4, "q": 0}));
    let n = v["vertices"].as_array().unwrap().len();
    assert_eq!(v["edges"].as_array().unwrap().len(), n - 1);

    let star = treedepth(&["gen", "caterpillar", "--n", "1", "--k", "3", "--l", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&star)).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_parameters_exit_with_usage_code() {
    let out = treedepth(&["gen", "caterpillar", "--n", "3", "--k", "2", "--l", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("l <= k"));
    assert_eq!(code(&treedepth(&["gen", "lobster", "--r", "3"])), 2);
}

#[test]
fn ideal_export_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = ideal_file(&dir, &["caterpillar", "--n", "4", "--k", "7", "--l", "5"], 1, "a");
    assert_eq!(json(&a)["gens"].as_array().unwrap().len(), 25);
    let b = ideal_file(&dir, &["caterpillar", "--n", "4", "--k", "7", "--l", "5"], 1, "b");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let sq = ideal_file(&dir, &["caterpillar", "--n", "2", "--k", "2", "--l", "2"], 2, "sq");
    assert_eq!(json(&sq)["gens"].as_array().unwrap().len(), 6);

    let bad = path(&dir, "bad.json");
    fs::write(&bad, "{\"vertices\": [\"a\"], \"edges\": [[\"a\", \"b\"]]}").unwrap();
    assert_eq!(code(&treedepth(&["ideal", &bad, "-o", &path(&dir, "x.json")])), 2);
}

#[test]
fn depth_prints_value_then_detail() {
    let dir = TempDir::new().unwrap();
    let i = ideal_file(&dir, &["lobster", "--r", "4", "--p", "2", "--q", "2"], 1, "s42");
    let out = treedepth(&["depth", &i]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("4"));
    let detail: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(detail["depth"], 4);
    assert_eq!(detail["field_char"], 32003);

    let two = treedepth(&["--field-char", "2", "depth", &i]);
    assert_eq!(stdout(&two).lines().next(), Some("4"));
    assert_eq!(code(&treedepth(&["--field-char", "6", "depth", &i])), 2);
}

#[test]
fn sdepth_certificate_checks_in_a_separate_process() {
    let dir = TempDir::new().unwrap();
    let i = ideal_file(&dir, &["caterpillar", "--n", "5", "--k", "3", "--l", "3"], 1, "p53");
    let cert = path(&dir, "cert.json");
    let out = treedepth(&["sdepth", &i, "--certificate", &cert]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("7"));
    assert!(Path::new(&cert).exists());

    let check = treedepth(&["check-cert", &i, &cert]);
    assert_eq!(code(&check), 0, "{}", String::from_utf8_lossy(&check.stderr));

    let mut v = json(&cert);
    v["claimed_d"] = serde_json::json!(8);
    let forged = path(&dir, "forged.json");
    fs::write(&forged, v.to_string()).unwrap();
    assert_eq!(code(&treedepth(&["check-cert", &i, &forged])), 1);
}

#[test]
fn sdepth_of_a_single_edge() {
    let dir = TempDir::new().unwrap();
    let i = path(&dir, "xy.json");
    fs::write(&i, r#"{"vars": ["x", "y"], "gens": [{"x": 1, "y": 1}]}"#).unwrap();
    let out = treedepth(&["sdepth", &i]);
    assert_eq!(stdout(&out).lines().next(), Some("1"));
}

#[test]
fn caps_exit_with_code_three() {
    let dir = TempDir::new().unwrap();
    let i = ideal_file(&dir, &["lobster", "--r", "4", "--p", "2", "--q", "2"], 1, "s");
    let out = Command::new(env!("CARGO_BIN_EXE_treedepth"))
        .args(["depth", &i])
        .env("TREEDEPTH_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn bound_reports_new_and_prior() {
    let out = treedepth(&["bound", "caterpillar", "--n", "50", "--k", "10", "--l", "10", "--t", "15"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["new_bound"], 179);
    assert_eq!(v["prior_diam_bound"], 13);
    assert_eq!(v["exact_depth"], "skipped");
}

#[test]
fn verify_writes_sorted_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "grid.csv");
    let args = ["verify", "caterpillar", "--n", "2..3", "--k", "2..3", "--t", "1..2", "--exact", "-o", &csv];
    let out = treedepth(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,k,l,r,p,q,t,new_bound,diam_bound,nearleaf_bound,depth,sdepth,status")
    );
    let rows: Vec<&str> = lines.collect();
    // two spine lengths, l over 1..=k for k = 2, 3, two powers
    assert_eq!(rows.len(), 2 * (2 + 3) * 2);
    assert!(rows.iter().all(|r| r.ends_with(",ok")));

    // rerunning with more workers gives the same bytes
    let again = path(&dir, "again.csv");
    let mut args2 = args[..args.len() - 1].to_vec();
    args2.extend_from_slice(&[&again, "--workers", "3"]);
    assert_eq!(code(&treedepth(&args2)), 0);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&again).unwrap());

    let js = path(&dir, "grid.json");
    assert_eq!(code(&treedepth(&["verify", "lobster", "--r", "55", "--p", "2", "--q", "2", "--t", "10", "-o", &js])), 0);
    let v = json(&js);
    assert_eq!(v["rows"][0]["new_bound"], 46);
    assert_eq!(v["rows"][0]["status"], "ok");
    assert_eq!(v["field_char"], 32003);
}

#[test]
fn verify_rejects_empty_power_range() {
    let out = treedepth(&["verify", "lobster", "--r", "2..4", "--p", "1", "--t", "2..1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn lemma_suites_and_fault_injection() {
    let ok = treedepth(&["lemmas", "--seed", "42", "--cases", "20"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert_eq!(stdout(&ok).lines().filter(|l| l.ends_with("pass")).count(), 6);

    let bad = treedepth(&["lemmas", "--seed", "42", "--cases", "5", "--fault", "drop-generator", "--suite", "leaf-colon"]);
    assert_eq!(code(&bad), 1);
    let text = stdout(&bad);
    let report = text.lines().find(|l| l.starts_with('{')).expect("counterexample JSON");
    let v: serde_json::Value = serde_json::from_str(report).unwrap();
    assert_eq!(v["suite"], "leaf_colon");
    assert!(v["counterexample"]["case"]["family"].is_object());

    assert_eq!(code(&treedepth(&["lemmas", "--cases", "0"])), 2);
}
