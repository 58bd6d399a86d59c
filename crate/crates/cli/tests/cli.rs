use std::process::{Command, Output};

fn confnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confnum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn tower_metadata() {
    let o = confnum(&["tower", "--level", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["signature"], serde_json::json!([2, 0]));
    assert_eq!(v["generator_squares"], serde_json::json!([-1]));

    let v = json(&confnum(&["tower", "--level", "1", "--format", "json"]));
    assert_eq!(v["clifford"], serde_json::json!([1, 2]));
    assert_eq!(v["note"], "Pauli algebra");

    let text = stdout(&confnum(&["tower", "--level", "2"]));
    assert!(text.contains("R_{2,3}"));
    assert!(text.contains("Dirac"));
    assert!(text.contains("signature (4, 2)"));
}

#[test]
fn verify_all_passes_at_default_level() {
    let o = confnum(&["verify", "all", "--format", "json", "--no-timing"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let reports = json(&o);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 7);
    for r in reports {
        let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        assert_eq!(r["failures"], serde_json::json!([]));
        assert_eq!(r["ms"], 0.0);
        assert!(r["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_lorentz_level3() {
    let o = confnum(&["verify", "lorentz", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS lorentz(level 3): 4096 checks, 0 failures"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        confnum(&["verify", "metric", "--level", "9999"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(confnum(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        confnum(&["table", "--tolerance", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        confnum(&["table", "--vocab", "words"]).status.code(),
        Some(2)
    );
    assert_eq!(confnum(&[]).status.code(), Some(2));
    // raising the bound makes the level legal
    assert_eq!(
        confnum(&["tower", "--level", "5", "--max-level", "5"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn reports_are_byte_stable_without_timing() {
    let args = [
        "verify",
        "involutions",
        "--level",
        "2",
        "--seed",
        "17",
        "--format",
        "json",
        "--no-timing",
    ];
    let a = confnum(&args);
    let b = confnum(&args);
    assert_eq!(a.stdout, b.stdout);
    let m1 = confnum(&[
        "demo",
        "moebius",
        "--level",
        "1",
        "--seed",
        "5",
        "--samples",
        "20",
        "--format",
        "json",
    ]);
    let m2 = confnum(&[
        "demo",
        "moebius",
        "--level",
        "1",
        "--seed",
        "5",
        "--samples",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(m1.stdout, m2.stdout);
    assert_eq!(m1.status.code(), Some(0));
}

#[test]
fn tables() {
    let o = confnum(&["table", "--level", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip_while(|l| !l.starts_with("sigma"))
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows, vec![vec!["0", "-e_1"], vec!["e_1", "0"]]);

    let v = json(&confnum(&["table", "--level", "2", "--format", "json"]));
    assert_eq!(v["n"], 6);
    assert_eq!(
        v["sigma"][4][5],
        serde_json::json!({"sign": 1, "factors": ["i", "j", "ı", "ȷ"]})
    );
    assert_eq!(
        v["sigma"][0][4],
        serde_json::json!({"sign": -1, "factors": ["i", "ȷ"]})
    );

    let text = stdout(&confnum(&["table", "--level", "2"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("  ")).count(), 6);
}

#[test]
fn word_cap_too_small_is_a_failure() {
    let o = confnum(&["table", "--level", "2", "--word-cap", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no signed unit word"));
}

#[test]
fn demos() {
    let o = confnum(&["demo", "massratio", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o)["deviation_percent"].as_f64().unwrap();
    assert!((d - 3.4).abs() < 0.1);

    // a pole inside the grid
    let o = confnum(&["demo", "harmonic", "--x0", "-0.5", "--y0", "-0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole"));

    let o = confnum(&["demo", "harmonic", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["ratio_in_range"], true);
    assert_eq!(
        o.status.code(),
        Some(if v["passed"] == true { 0 } else { 1 })
    );
}

#[test]
fn harmonic_csv_dump() {
    let path = std::env::temp_dir().join(format!("confnum-lap-{}.csv", std::process::id()));
    let o = confnum(&[
        "demo",
        "harmonic",
        "--h",
        "0.1",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.code().is_some());
    let csv = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("nx,ny,h"));
    assert_eq!(lines.next(), Some("11,11,0.1"));
    assert_eq!(lines.count(), 11);
}
