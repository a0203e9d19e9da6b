use std::process::{Command, Output};

fn qgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// `(exponent, coefficient)` rows of a table expansion.
fn table_rows(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip_while(|l| !l.trim_start().starts_with("exponent"))
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().to_string(), it.next().unwrap().to_string())
        })
        .collect()
}

#[test]
fn expand_divisor_series() {
    let o = qgraph(&["expand", "--series", "D", "--order", "8"]);
    assert_eq!(code(&o), 0);
    let coeffs: Vec<String> = table_rows(&stdout(&o)).into_iter().map(|(_, c)| c).collect();
    assert_eq!(coeffs, ["1", "2", "2", "3", "2", "4", "2", "4"]);
}

#[test]
fn c5_graph_series() {
    let o = qgraph(&["graph-series", "--graph", "builtin:C5", "--order", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 + 5*q + 15*q^2"), "{}", stdout(&o));
    let o = qgraph(&["graph-series", "--graph", "builtin:C5", "--order", "2", "--method", "tree-dp"]);
    assert!(stdout(&o).contains("1 + 5*q + 15*q^2"));
}

#[test]
fn formats_carry_the_same_data() {
    let dir = std::env::temp_dir().join(format!("qgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    std::fs::write(&path, r#"{"r": 2, "edges": [[1, 2]], "b": ["3/2", 1]}"#).unwrap();
    let p = path.to_str().unwrap();
    let table = qgraph(&["graph-series", "--graph", p, "--order", "6"]);
    let structured = qgraph(&["graph-series", "--graph", p, "--order", "6", "--format", "structured"]);
    assert_eq!((code(&table), code(&structured)), (0, 0));
    let v: serde_json::Value = serde_json::from_slice(&structured.stdout).unwrap();
    let from_json: Vec<(String, String)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let c = t["coefficient"].as_str().unwrap();
            assert!(c.contains('/'));
            (t["exponent"].as_str().unwrap().to_string(), c.trim_end_matches("/1").to_string())
        })
        .collect();
    let rows = table_rows(&stdout(&table));
    assert_eq!(rows, from_json);
    assert!(rows.iter().any(|(e, _)| e.contains('/')));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_single_identity() {
    let o = qgraph(&["verify", "--identity", "C5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("resolved-variant"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning: C5"));
    let o = qgraph(&["verify", "--identity", "A2", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["order"], 50);
}

#[test]
fn mathematical_failure_exits_one() {
    // at order 0 both C5 prefactors agree, so the variant is ambiguous
    let o = qgraph(&["verify", "--identity", "C5", "--order", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn verify_all_with_report() {
    let dir = std::env::temp_dir().join(format!("qgraph-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = qgraph(&["verify", "--identity", "all", "--order", "default", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let records = v.as_array().unwrap();
    assert!(records.len() >= 45);
    assert!(records.iter().all(|r| r["status"] == "pass" || r["status"] == "resolved-variant"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["--format", "structured", "--threads", "3", "verify", "--tag", "toolkit"];
    let a = qgraph(&args);
    let b = qgraph(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["--seed", "11", "jets", "--vars", "2", "--relations", "1*2", "--max-degree", "6"];
    assert_eq!(qgraph(&args).stdout, qgraph(&args).stdout);
}

#[test]
fn thread_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(["verify", "--identity", "JACOBI"])
        .env("QGRAPH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn jets_commands() {
    let o = qgraph(&["jets", "--vars", "1", "--relations", "1*1", "--max-degree", "12"]);
    assert_eq!(code(&o), 0);
    let dims: Vec<String> = stdout(&o)
        .lines()
        .skip_while(|l| !l.trim_start().starts_with("degree"))
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(dims, ["1", "1", "1", "1", "2", "2", "3", "3", "4", "5", "6", "7", "9"]);
    let o = qgraph(&["jets", "--graph", "builtin:A3", "--compare", "--max-degree", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: match"));
    let o = qgraph(&["jets", "--graph", "builtin:B2", "--max-degree", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("InvalidPresentation"));
}

#[test]
fn asym_commands() {
    let o = qgraph(&["asym", "--case", "A4", "--t", "0.2,0.1,0.05,0.025"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: pass"));
    let o = qgraph(&["asym", "--case", "A3", "--t", "0.1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("insufficient-grid"));
    let o = qgraph(&["asym", "--case", "A6", "--fit", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["fit"]["form"], "(a + c log t)/t");
    let residual = v[0]["rows"][0]["residual"].as_str().unwrap();
    assert_eq!(residual.chars().filter(|c| c.is_ascii_digit()).skip_while(|&c| c == '0').count(), 15);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["expand", "--order", "3"],
        vec!["verify", "--identity", "NOPE"],
        vec!["verify", "--order", "many"],
        vec!["graph-series", "--graph", "/no/such/file.json"],
        vec!["graph-series", "--graph", "builtin:ZZ"],
        vec!["asym", "--case", "A9"],
        vec!["asym", "--t", "0.1,0.2"],
        vec!["jets", "--vars", "2", "--relations", "1-2"],
        vec!["frobnicate"],
    ] {
        let o = qgraph(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn listings() {
    let o = qgraph(&["list", "identities"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("BAILEY-D5")));
    let o = qgraph(&["list", "graphs"]);
    assert!(stdout(&o).contains("builtin:G8"));
    let o = qgraph(&["list", "series", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|e| e["name"] == "chi0"));
}
