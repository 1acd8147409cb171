use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn gstable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gstable")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no key {key} in\n{out}"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("gstable-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn extend_klein_gives_two_classes() {
    let o = gstable(&["extend", data("klein_gf3.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "classes"), "2");
    assert_eq!(value(&out, "node.root.h1"), "2");
    assert_eq!(value(&out, "unique"), "false");
    // b maps to 1 in one class and to -1 in the other
    assert_eq!(value(&out, "class.0.image.1"), "[[1]]");
    assert_eq!(value(&out, "class.1.image.1"), "[[2]]");
}

#[test]
fn extend_c4_is_obstructed() {
    let o = gstable(&["extend", data("c4_gf3.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(value(&out, "classes"), "0");
    assert_eq!(value(&out, "node.root.obstruction"), "nonzero");
    assert_eq!(value(&out, "existence"), "not-exists");
    let table: toml::Value = toml::from_str(&format!("t = {}", value(&out, "node.root.obstruction_table"))).unwrap();
    assert!(!table["t"].as_array().unwrap().is_empty());
}

#[test]
fn non_associative_table_is_an_input_error() {
    let o = gstable(&["validate", data("not_associative.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("(1*2)*2 != 1*(2*2)"), "{err}");
}

#[test]
fn validate_round_trips() {
    for name in ["klein_gf3.toml", "s3_diag_gf7.toml", "s3_transposition_gf3.toml"] {
        let first = gstable(&["validate", data(name).to_str().unwrap()]);
        assert_eq!(first.status.code(), Some(0));
        let text = stdout(&first);
        let again = gstable(&["validate", scratch(name, &text).to_str().unwrap()]);
        assert_eq!(stdout(&again), text, "{name}");
    }
}

#[test]
fn json_matches_text() {
    let path = data("s3_diag_gf7.toml");
    let text = stdout(&gstable(&["extend", path.to_str().unwrap()]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&gstable(&["extend", "--json", path.to_str().unwrap()]))).unwrap();
    assert_eq!(json["classes"], 1);
    assert_eq!(json["leaves"].to_string(), value(&text, "leaves"));
    assert_eq!(json["class.0.image.1"].to_string(), value(&text, "class.0.image.1"));
}

#[test]
fn printed_matrices_reparse() {
    let out = stdout(&gstable(&["extend", data("s3_diag_gf7.toml").to_str().unwrap()]));
    let mut seen = 0;
    for line in out.lines().filter(|l| l.contains(".image.")) {
        let (_, m) = line.split_once(": ").unwrap();
        let v: toml::Value = toml::from_str(&format!("m = {m}")).unwrap();
        assert_eq!(v["m"].as_array().unwrap().len(), 2);
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn budget_exceeded_exit_code() {
    let o = gstable(&["extend", "--budget-cochains", "4", data("klein_gf3.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(value(&stdout(&o), "status"), "budget-exceeded");
}

#[test]
fn unstable_character() {
    let text = std::fs::read_to_string(data("s3_diag_gf7.toml")).unwrap().replace("[[2, 0], [0, 4]]", "[[2]]");
    let path = scratch("unstable.toml", &text);
    let o = gstable(&["stability", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(value(&out, "stable"), "false");
    let e = gstable(&["extend", path.to_str().unwrap()]);
    assert_eq!(e.status.code(), Some(1));
    assert_eq!(value(&stdout(&e), "status"), "not-stable");
}

#[test]
fn aut_chain_of_a_jordan_block() {
    let text = "[group]\nnamed = \"cyclic:4\"\n[subgroup]\nelements = [0, 2]\n[field]\np = 2\n\
                [representation]\nimages = [{ element = 2, matrix = [[1, 1], [0, 1]] }]\n";
    let o = gstable(&["aut-chain", scratch("jordan.toml", text).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "indecomposable"), "true");
    assert_eq!(value(&out, "series"), "radical");
    assert_eq!(value(&out, "aut_order"), "2");
    assert_eq!(value(&out, "residue_degree"), "1");
    assert_eq!(value(&out, "radical_dims"), "[1,0]");
}

#[test]
fn cohomology_of_the_first_layer() {
    let o = gstable(&["cohomology", "-n", "1", data("klein_gf3.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "module.source"), "first layer");
    assert_eq!(value(&out, "order"), "2");
    assert_eq!(value(&out, "factors"), "[2]");
    let bad = gstable(&["cohomology", "-n", "3", data("klein_gf3.toml").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_agrees_and_is_deterministic() {
    for name in ["klein_gf3.toml", "c4_gf3.toml", "s3_diag_gf7.toml", "s3_transposition_gf3.toml"] {
        let path = data(name);
        let args = ["verify", "--seed", "7", path.to_str().unwrap()];
        let a = gstable(&args);
        assert_eq!(value(&stdout(&a), "agreement"), "true", "{name}");
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(stdout(&a), stdout(&gstable(&args)));
    }
}
