use std::process::{Command, Output};

fn homlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlab"))
        .args(args)
        .env_remove("HOMLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lists_every_experiment() {
    let o = homlab(&["list-experiments"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for id in ["hom-k2-kn-sphere", "tkm-invariants", "property-suites", "csorba-square"] {
        assert!(text.contains(id), "missing {id}");
    }
}

#[test]
fn chromatic_number_of_toroidal_graph() {
    let o = homlab(&["chromatic", "T(1,3)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = homlab(&["chromatic", "K(4)", "--json"]);
    assert_eq!(stdout(&o).trim(), r#"{"chromatic_number":4}"#);
}

#[test]
fn klein_bottle_fixture() {
    let o = homlab(&["homology", "--fixture", "klein", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([0, 1, 0]));
    assert_eq!(v["torsion"][1], serde_json::json!([2]));
    let o = homlab(&["homology", "--fixture", "klein", "--field", "gf2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([0, 2, 1]));
}

#[test]
fn hom_complex_homology_and_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k2.json");
    std::fs::write(&path, r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
    let o = homlab(&["homology", path.to_str().unwrap(), "K(4)"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("H2=Z"), "{}", stdout(&o));
}

#[test]
fn csv_report_header() {
    let o = homlab(&["report", "hom-k2-kn-sphere", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,pass,expected,measured,seconds"));
    assert!(lines.next().unwrap().starts_with("hom-k2-kn-sphere,true,"));
}

#[test]
fn unknown_input_exits_with_code_two() {
    assert_eq!(homlab(&["chromatic", "Q(3)"]).status.code(), Some(2));
    assert_eq!(homlab(&["verify", "no-such-experiment"]).status.code(), Some(2));
}

#[test]
fn tampered_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = homlab(&["hom", "K(2)", "K(3)", "--json", "--cache-dir", d]);
    assert!(first.status.success());
    let again = homlab(&["hom", "K(2)", "K(3)", "--json", "--cache-dir", d]);
    assert_eq!(stdout(&first), stdout(&again));
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "json"))
        .expect("cache entry written");
    let text = std::fs::read_to_string(&entry).unwrap();
    std::fs::write(&entry, text.replacen('0', "1", 3)).unwrap();
    let bad = homlab(&["hom", "K(2)", "K(3)", "--cache-dir", d]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("cache"));
}
