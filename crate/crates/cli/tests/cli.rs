use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_outerlabel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn label_cycle_six() {
    let g6 = stdout(&run(&["gen", "cycle", "6", "--format", "graph6"], None));
    let o = run(&["label", "--graph6", g6.trim()], None);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["labeling"]["labels"], serde_json::json!([0, 2, 4, 0, 2, 4]));
    assert_eq!(v["span"], 4);
}

#[test]
fn label_ladder_from_file_and_verify() {
    let edges = stdout(&run(&["gen", "gl", "4"], None));
    let path = scratch("g4.edges", &edges);
    let o = run(&["label", "-f", path.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["span"].as_u64().unwrap() <= 6);
    let lab = scratch("g4.json", &stdout(&o));
    let o = run(&["verify", "-f", path.to_str().unwrap(), "--labeling", lab.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn k4_is_rejected() {
    let o = run(&["label", "-"], Some("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"));
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not outerplanar"));
}

#[test]
fn lambda_values() {
    let text = |args: &[&str]| {
        let o = run(args, None);
        assert_eq!(code(&o), 0);
        stdout(&o).lines().next().unwrap().to_string()
    };
    assert_eq!(text(&["lambda", "--graph6", "Bw", "--format", "text"]), "4");
    assert_eq!(text(&["lambda", "--graph6", "A_", "--format", "text"]), "2");
    let g4 = stdout(&run(&["gen", "gl", "4", "--format", "graph6"], None));
    assert_eq!(text(&["lambda", "--graph6", g4.trim(), "--format", "text"]), "6");
    assert_eq!(text(&["lambda", "--graph6", g4.trim(), "--k", "5", "--format", "text"]), "k 5 infeasible");
}

#[test]
fn lambda_budget_exit_code() {
    let g8 = stdout(&run(&["gen", "gl", "8", "--format", "graph6"], None));
    let o = run(&["lambda", "--graph6", g8.trim(), "--budget", "10"], None);
    assert_eq!(code(&o), 5);
}

#[test]
fn verify_reports_distance_two_clash() {
    let o = run(&["verify", "--graph6", "Bg", "--labeling", r#"{"k":6,"labels":[0,3,0]}"#], None);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("1 violation(s)"));
    assert!(out.contains("distance 2"));
}

#[test]
fn gen_and_enumerate() {
    let o = run(&["gen", "gl", "4", "--format", "graph6"], None);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0].as_bytes()[0], 63 + 10);
    assert_eq!(stdout(&run(&["enumerate", "5"], None)).lines().count(), 2);
    assert_eq!(stdout(&run(&["enumerate", "3"], None)).trim(), "Bw");
    assert!(stdout(&run(&["gen", "gl", "3", "--format", "dot"], None)).contains("\"u\" -- \"x1\""));
}

#[test]
fn parse_errors() {
    assert_eq!(code(&run(&["label", "--graph6", "!!"], None)), 2);
    assert_eq!(code(&run(&["label"], None)), 2);
    assert_eq!(code(&run(&["label", "-"], Some("2 1\n0 2\n"))), 2);
    assert_eq!(code(&run(&["verify", "--graph6", "Bg", "--labeling", "{nope"], None)), 2);
}

#[test]
fn round_trip_gen_label_verify() {
    let mut cases: Vec<Vec<String>> = Vec::new();
    for l in 3..=8 {
        cases.push(vec!["gl".into(), l.to_string()]);
    }
    for n in [3, 4, 5, 9] {
        cases.push(vec!["cycle".into(), n.to_string()]);
        cases.push(vec!["path".into(), n.to_string()]);
    }
    for seed in 0..10 {
        cases.push(vec!["random".into(), (20 + 17 * seed).to_string(), "--seed".into(), seed.to_string()]);
    }
    for (i, case) in cases.iter().enumerate() {
        let mut args = vec!["gen"];
        args.extend(case.iter().map(String::as_str));
        let graph = stdout(&run(&args, None));
        let labeled = run(&["label", "-"], Some(&graph));
        assert_eq!(code(&labeled), 0, "{case:?}");
        let lab = scratch(&format!("round_trip_{i}.json"), &stdout(&labeled));
        let checked = run(&["verify", "-", "--labeling", lab.to_str().unwrap()], Some(&graph));
        assert_eq!(code(&checked), 0, "{case:?}: {}", stdout(&checked));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["gen", "random", "300", "--seed", "11"];
    let a = run(&args, None);
    assert_eq!(a.stdout, run(&args, None).stdout);
    let graph = stdout(&a);
    let first = run(&["label", "-", "--strategy", "paper"], Some(&graph));
    let second = run(&["label", "-", "--strategy", "paper"], Some(&graph));
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn text_and_dot_formats() {
    let o = run(&["label", "--graph6", "Bw", "--format", "text"], None);
    assert_eq!(stdout(&o), "span 4\nlabels 0 2 4\n");
    let o = run(&["label", "--graph6", "Bw", "--format", "dot"], None);
    assert!(stdout(&o).contains("xlabel=\"4\""));
}

#[test]
fn selftest_single_criterion() {
    let o = run(&["selftest", "--quick", "--only", "8"], None);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("criterion 8 [PASS]"));
}
