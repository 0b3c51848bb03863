use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use zpg_core::format::{parse, ModuleFile};
use zpg_core::arith::GroupParams;
use zpg_core::constructions::j_module;
use zpg_core::format::to_json;
use zpg_core::modules::{augmentation_ideal, direct_sum, trivial_module};
use zpg_core::oracle::{modules_isomorphic, IsoSearchConfig};

fn zpg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zpg"))
        .args(args)
        .env_remove("ZPG_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let o = zpg(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const IDEAL_P3_N1: &str = r#"{"p": 3, "n": 1, "generators": 1, "relations": [[[1, 1, 1]]]}"#;

fn groups(v: &Value) -> Vec<(Value, Value)> {
    v["data"]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["h0"].clone(), g["h1"].clone()))
        .collect()
}

#[test]
fn augmentation_ideal_table() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "i.json", IDEAL_P3_N1);
    let (code, v) = machine(&["cohomology", s(&f)]);
    assert_eq!(code, 0);
    assert_eq!(groups(&v), vec![(serde_json::json!([]), serde_json::json!([1]))]);
    let text = stdout(&zpg(&["cohomology", s(&f)]));
    assert!(text.contains("Z/3"), "{text}");
}

#[test]
fn free_module_has_no_cohomology() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"p": 3, "n": 2, "generators": 2}"#);
    let (code, v) = machine(&["cohomology", s(&f), "--maps"]);
    assert_eq!(code, 0);
    for (h0, h1) in groups(&v) {
        assert_eq!(h0, serde_json::json!([]));
        assert_eq!(h1, serde_json::json!([]));
    }
    assert_eq!(v["data"]["maps"].as_array().unwrap().len(), 4);
}

#[test]
fn j2_cohomology_and_comparison_with_j1() {
    let dir = TempDir::new().unwrap();
    let j1 = dir.path().join("j1.json");
    let j2 = dir.path().join("j2.json");
    for (e, path) in [("1", &j1), ("2", &j2)] {
        let o = zpg(&["--p", "3", "--n", "2", "construct", "j-module", "--e", e, "--out", s(path)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let (_, v) = machine(&["cohomology", s(&j2)]);
    let one = serde_json::json!([1]);
    let two = serde_json::json!([2]);
    assert_eq!(groups(&v), vec![(one.clone(), one), (two.clone(), two)]);

    let o = zpg(&["delta-compare", s(&j1), s(&j2)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not isomorphic"));
    assert!(stdout(&o).contains("level 2 invariants differ"), "{}", stdout(&o));

    let o = zpg(&["delta-compare", s(&j2), s(&j2)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn lemma3_battery_passes() {
    let o = zpg(&["verify", "lemma3", "--p", "3", "--n", "2", "--e-max", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("[fail]"));
}

#[test]
fn prop5_battery_passes() {
    let o = zpg(&["verify", "prop5", "--p", "3", "--n", "1", "--r", "1", "--e", "2", "--unit-rank", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn other_batteries_pass() {
    for suite in ["prop4", "theorem1", "axioms", "yakovlev"] {
        let o = zpg(&["verify", suite, "--p", "3", "--n", "1"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn corrupted_diagram_names_the_level() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "i.json", IDEAL_P3_N1);
    let (code, v) = machine(&["delta", s(&f)]);
    assert_eq!(code, 0);
    let mut diagram = v["data"]["diagram"].clone();
    let good = write(&dir, "good.json", &diagram.to_string());
    assert_eq!(zpg(&["verify", "axioms", "--diagram", s(&good)]).status.code(), Some(0));

    diagram["levels"][0]["exponents"] = serde_json::json!([2]);
    let bad = write(&dir, "bad.json", &diagram.to_string());
    let o = zpg(&["verify", "axioms", "--diagram", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[fail] level 1: exponent exceeds"), "{}", stdout(&o));
}

#[test]
fn split_module_is_kernel_plus_ideal() {
    let dir = TempDir::new().unwrap();
    let ext = write(
        &dir,
        "ext.json",
        r#"{"p": 3, "n": 1, "kernel": {"exponents": [2]}, "cocycle": "split"}"#,
    );
    let out = dir.path().join("m.json");
    let o = zpg(&["construct", "split-module", "--extension", s(&ext), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let file: ModuleFile = parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let m = file.to_module().unwrap();
    let params = m.params();
    let expected = direct_sum(&trivial_module(params, &[2]).unwrap(), &augmentation_ideal(params)).unwrap();
    assert!(modules_isomorphic(&m, &expected, &IsoSearchConfig::default()).unwrap().is_isomorphic());
}

#[test]
fn lemma2_and_theorem1_on_a_witness_file() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "t1.json",
        r#"{"module": {"p": 3, "n": 1, "generators": 2, "relations": [[[1, 1, 1], [0, 0, 0]]]},
            "free_witness": [[[0, 0, 0], [1, 0, 0]]],
            "ideal_witness": [[1, 0, 0], [0, 0, 0]]}"#,
    );
    let out = dir.path().join("l2");
    let o = zpg(&["construct", "lemma2", "--input", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for name in ["a.json", "b.json", "extension.json", "shifts.json"] {
        assert!(out.join(name).exists(), "{name} missing");
    }
    let o = zpg(&["construct", "split-module", "--extension", s(&out.join("extension.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = zpg(&["verify", "theorem1", "--input", s(&input)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = zpg(&["construct", "cocycle", "--input", s(&input)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"cocycle\""));
}

#[test]
fn machine_output_is_deterministic() {
    let args = ["verify", "yakovlev", "--p", "3", "--n", "1", "--seed", "7", "--format", "machine"];
    let a = zpg(&args);
    let b = zpg(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["iso"]["seed"], 7);
    assert_eq!(v["status"], "pass");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "{\"p\": 3,\n \"n\": 1,\n \"generators\": x}");
    let o = zpg(&["cohomology", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn unknown_fields_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"p": 3, "n": 1, "generators": 1, "gens": 2}"#);
    let o = zpg(&["cohomology", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("gens"), "{}", stderr(&o));
}

#[test]
fn flags_must_agree_with_the_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "i.json", IDEAL_P3_N1);
    let o = zpg(&["cohomology", s(&f), "--p", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("disagrees"));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_zpg"))
        .args(["verify", "prop4", "--p", "3", "--n", "1", "--format", "machine"])
        .env("ZPG_PRECISION", "20")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["precision"], 20);
}

#[test]
fn precision_exhaustion_is_reported_with_advice() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"p": 3, "n": 1, "generators": 1, "relations": [[[243, 0, 0]]]}"#);
    let o = zpg(&["cohomology", s(&f), "--precision", "5"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stderr(&o).contains("precision exhausted"), "{}", stderr(&o));
    assert!(stderr(&o).contains("--precision"));
}

#[test]
fn p2_warns() {
    let o = zpg(&["verify", "prop4", "--p", "2", "--n", "1"]);
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(zpg(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(zpg(&["verify", "lemma3"]).status.code(), Some(1));
    assert_eq!(zpg(&["--help"]).status.code(), Some(0));
}

#[test]
fn j1_cohomology_is_z_mod_p_everywhere() {
    let dir = TempDir::new().unwrap();
    let j1 = dir.path().join("j1.json");
    let o = zpg(&["--p", "3", "--n", "2", "construct", "j-module", "--e", "1", "--out", s(&j1)]);
    assert!(o.status.success());
    let (_, v) = machine(&["cohomology", s(&j1)]);
    let one = serde_json::json!([1]);
    assert_eq!(groups(&v), vec![(one.clone(), one.clone()), (one.clone(), one)]);
}

#[test]
fn delta_of_free_module_is_empty() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"p": 3, "n": 2, "generators": 1}"#);
    let (code, v) = machine(&["delta", s(&f)]);
    assert_eq!(code, 0);
    for level in v["data"]["diagram"]["levels"].as_array().unwrap() {
        assert_eq!(level["exponents"], serde_json::json!([]));
    }
}

#[test]
fn cyclic_torsion_plus_ideal_matches_j_module_plus_ideal() {
    let dir = TempDir::new().unwrap();
    for n in [1, 2] {
        let params = GroupParams::with_defaults(3, n).unwrap();
        let ideal = augmentation_ideal(params);
        let torsion = direct_sum(&trivial_module(params, &[2]).unwrap(), &ideal).unwrap();
        let j = direct_sum(&j_module(params, 2.min(n)).unwrap(), &ideal).unwrap();
        let a = write(&dir, "a.json", &to_json(&ModuleFile::from_module(&torsion)));
        let b = write(&dir, "b.json", &to_json(&ModuleFile::from_module(&j)));
        let (code, v) = machine(&["delta-compare", s(&a), s(&b)]);
        assert_eq!(code, 0, "n={n}: {v}");
        assert_eq!(v["data"]["verdict"], "isomorphic");
        assert_eq!(v["data"]["gammas"].as_array().unwrap().len(), n as usize);
    }
}
