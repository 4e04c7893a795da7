use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn stripcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stripcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn epd_reproduces_golden_diagrams() {
    for name in ["hood_f", "hood_g"] {
        let out = stripcat(&["epd", path(&fixture(&format!("{name}.json")))]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let golden = fs::read_to_string(fixture(&format!("{name}.diagram.json"))).unwrap();
        assert_eq!(stdout(&out), golden, "{name}");
    }
}

#[test]
fn epd_points_of_the_hood() {
    let out = stripcat(&["epd", path(&fixture("hood_g.json"))]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let points: Vec<(String, String, String, i64)> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["kind"].as_str().unwrap().to_string(),
                p["lo"].as_str().unwrap().to_string(),
                p["hi"].as_str().unwrap().to_string(),
                p["deg"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        points,
        vec![
            ("CC".into(), "0/1".into(), "2/1".into(), 0),
            ("CO".into(), "1/1".into(), "2/1".into(), 1)
        ]
    );
}

#[test]
fn empty_complex_gives_empty_diagram() {
    let out = stripcat(&["epd", path(&fixture("empty.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["points"].as_array().unwrap().is_empty());
}

#[test]
fn sheaf_names_the_summands() {
    let f = stripcat(&["sheaf", path(&fixture("hood_f.diagram.json"))]);
    assert_eq!(stdout(&f).trim(), "F_[0,2] ⊕ F_[0,1)");
    let g = stripcat(&["sheaf", path(&fixture("hood_g.diagram.json"))]);
    assert_eq!(stdout(&g).trim(), "F_[0,2] ⊕ F_[1,2)[-1]");
}

#[test]
fn check_passes_on_the_hood() {
    for name in ["hood_f.json", "hood_g.json", "empty.json"] {
        let out = stripcat(&["check", path(&fixture(name))]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}{}",
            stdout(&out),
            stderr(&out)
        );
        let text = stdout(&out);
        assert_eq!(text.lines().count(), 5, "{text}");
        assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec![
            "epd".to_string(),
            fixture("hood_g.json").display().to_string(),
        ],
        vec![
            "cone".to_string(),
            fixture("cone_inclusion.json").display().to_string(),
            "--triangle".to_string(),
        ],
        vec![
            "resolve".to_string(),
            fixture("hood_coker.json").display().to_string(),
            "--horizon".into(),
            "2".into(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(stdout(&stripcat(&args)), stdout(&stripcat(&args)));
    }
}

#[test]
fn cone_of_an_inclusion() {
    let out = stripcat(&["cone", path(&fixture("cone_inclusion.json"))]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sheaves"], "F_[1,2)");
    let tri = stripcat(&["cone", path(&fixture("cone_inclusion.json")), "--triangle"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&tri)).unwrap();
    assert_eq!(v["to_cone"]["entries"], serde_json::json!([[0, 0, "1"]]));
}

#[test]
fn hom_between_the_hood_diagrams() {
    let out = stripcat(&[
        "hom",
        path(&fixture("hood_f.diagram.json")),
        path(&fixture("hood_g.diagram.json")),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 2);
}

#[test]
fn resolve_reports_betti_functions_and_euler_status() {
    let out = stripcat(&[
        "resolve",
        path(&fixture("hood_coker.json")),
        "--depth",
        "5",
        "--horizon",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"].as_array().unwrap().len(), 5);
    assert_eq!(v["euler"]["max_deg"], 1);
    let out = stripcat(&["resolve", path(&fixture("hood_coker.json")), "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["euler"]["infinite_support"].is_string());
}

#[test]
fn k0_difference_of_the_hood_classes() {
    let out = stripcat(&[
        "k0",
        "sub",
        path(&fixture("class_f.json")),
        path(&fixture("class_g.json")),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coefs: Vec<i64> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coef"].as_i64().unwrap())
        .collect();
    assert_eq!(coefs, vec![1, -1]);
    let eq = stripcat(&[
        "k0",
        "eq",
        path(&fixture("class_f.json")),
        path(&fixture("class_g.json")),
    ]);
    assert_eq!(stdout(&eq).trim(), "false");
}

#[test]
fn plot_writes_an_svg() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("hood.svg");
    let out = stripcat(&[
        "plot",
        path(&fixture("hood_g.diagram.json")),
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let svg = fs::read_to_string(&target).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 2);
    let via_epd = dir.path().join("epd.svg");
    stripcat(&[
        "epd",
        path(&fixture("hood_g.json")),
        "--svg",
        via_epd.to_str().unwrap(),
    ]);
    assert_eq!(fs::read_to_string(via_epd).unwrap(), svg);
}

#[test]
fn schema_errors_exit_with_two_and_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"char\": 2,\n  \"values\": {\"a\": 1}\n}\n").unwrap();
    let out = stripcat(&["epd", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.json:3:"), "{}", stderr(&out));

    let out = stripcat(&["--char", "4", "epd", path(&fixture("hood_f.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let out = stripcat(&["epd", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn char_flag_overrides_the_file() {
    let out = stripcat(&["--char", "3", "epd", path(&fixture("hood_f.json"))]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["char"], 3);
}

#[test]
fn forbidden_slots_are_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("forbidden.json");
    // There are no nonzero morphisms between these summands.
    fs::write(
        &bad,
        r#"{"char": 2,
            "source": [{"kind": "CO", "lo": "0", "hi": "2", "deg": 0}],
            "target": [{"kind": "CO", "lo": "5", "hi": "6", "deg": 0}],
            "entries": [[0, 0, "1"]]}"#,
    )
    .unwrap();
    let out = stripcat(&["cone", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}
