use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bmw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmw"))
        .args(args)
        .env_remove("BMW_DEGREE_CAP")
        .output()
        .expect("run bmw")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn build_reports_dimension_and_orientation() {
    let o = bmw(&[
        "build",
        "--n",
        "2",
        "--r",
        "1",
        "--field",
        "gfp:101",
        "--q",
        "3",
        "--u",
        "5",
        "--admissible",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["expected_dimension"], 3);
    assert_eq!(v["dimension_matches"], true);
    assert_eq!(v["orientation"]["chosen"], "x");
    assert!(v["completion"]["final_rules"].as_u64().unwrap() > 0);

    let o = bmw(&[
        "build",
        "--n",
        "3",
        "--r",
        "2",
        "--q",
        "3",
        "--u",
        "2,5",
        "--admissible",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["dimension"], 120);
}

#[test]
fn build_rejects_bad_input_with_exit_one() {
    for args in [
        &["build", "--n", "2", "--q", "3", "--u", "5,x"][..],
        &["build", "--n", "2", "--q", "3", "--u", "2,5", "--r", "3"],
        &["build", "--n", "2", "--q", "1", "--u", "2"],
        &["build", "--n", "2", "--field", "gfp:100", "--q", "3", "--u", "2"],
        &["build", "--n", "2"],
        &["build", "--not-a-flag"],
    ] {
        let o = bmw(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
    }
    let o = bmw(&["build", "--n", "2", "--q", "3", "--u", "5,x"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("u:"));
}

#[test]
fn completion_cap_exits_two() {
    let o = bmw(&["build", "--n", "3", "--q", "3", "--u", "2,5", "--degree-cap", "3"]);
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_bmw"))
        .args(["build", "--n", "3", "--q", "3", "--u", "2,5"])
        .env("BMW_DEGREE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn parameter_files_match_inline_flags() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.params");
    std::fs::write(
        &file,
        "# rank two\nfield = gfp:101\nq = 3\nu = 2, 5\nadmissible = true\n",
    )
    .unwrap();
    let from_file = bmw(&["build", "--n", "2", "--params", path_str(&file)]);
    let inline = bmw(&["build", "--n", "2", "--q", "3", "--u", "2,5", "--admissible"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, inline.stdout);
    let both = bmw(&["build", "--n", "2", "--params", path_str(&file), "--q", "3"]);
    assert_eq!(code(&both), 1);
}

#[test]
fn affine_classification_rows() {
    let o = bmw(&["classify", "--mode", "affine", "--n", "2", "--e", "2", "--omega-zero"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["f", "index"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| &r[0] == "0"));

    let o = bmw(&[
        "classify", "--mode", "affine", "--n", "2", "--e", "2", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v["count"], 5);
    assert_eq!(v["entries"][4]["f"], 1);
    assert_eq!(v["entries"][4]["index"], "{}");

    let o = bmw(&["classify", "--mode", "affine", "--n", "2", "--e", "inf"]);
    assert_eq!(code(&o), 1);
    let o = bmw(&[
        "classify", "--mode", "affine", "--n", "2", "--e", "inf", "--window", "0..2", "--format", "json",
    ]);
    assert_eq!(json(&o)["count"], 6);
}

#[test]
fn cyclotomic_classification() {
    // q = 3, u = 22 = 9^3: e = 50, four index pairs at n = 3
    let o = bmw(&[
        "classify",
        "--mode",
        "cyclotomic",
        "--n",
        "3",
        "--q",
        "3",
        "--u",
        "22",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["count"], 4);
    assert_eq!(v["e"], "50");

    let o = bmw(&["classify", "--mode", "cyclotomic", "--n", "2", "--q", "3", "--u", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("power of q^2"));

    let o = bmw(&[
        "classify",
        "--mode",
        "cyclotomic",
        "--n",
        "2",
        "--e",
        "2",
        "--multicharge",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(json(&o)["count"], 2);
}

#[test]
fn analyze_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let generic = dir.path().join("b13.json");
    let o = bmw(&[
        "build",
        "--n",
        "3",
        "--q",
        "3",
        "--u",
        "22",
        "--out",
        path_str(&generic),
    ]);
    assert_eq!(code(&o), 0);
    let o = bmw(&["analyze", path_str(&generic)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let mut blocks: Vec<u64> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_u64().unwrap())
        .collect();
    blocks.sort_unstable();
    assert_eq!(blocks, vec![1, 1, 2, 3]);
    assert_eq!(v["classification_count"], 4);
    assert_eq!(v["match"], true);

    // q = 10 has q^2 = -1 in GF(101), so e = 2
    let ak = dir.path().join("ak.json");
    let o = bmw(&[
        "build",
        "--n",
        "2",
        "--q",
        "10",
        "--u",
        "1",
        "--variant",
        "ariki-koike",
        "--out",
        path_str(&ak),
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&bmw(&["analyze", path_str(&ak), "--strict"]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["classification_count"], 1);

    let text = std::fs::read_to_string(&generic).unwrap();
    let bad = dir.path().join("bad.json");
    for corrupt in [
        text[..text.len() / 2].to_string(),
        text.replacen("\"bmw-dump/1\"", "\"other\"", 1),
        text.replacen("\"unit\": [\n    [\n      0,", "\"unit\": [\n    [\n      99,", 1),
        "{}".to_string(),
    ] {
        assert_ne!(corrupt, text);
        std::fs::write(&bad, corrupt).unwrap();
        let o = bmw(&["analyze", path_str(&bad)]);
        assert_eq!(code(&o), 1);
    }
    assert_eq!(code(&bmw(&["analyze", path_str(&dir.path().join("missing.json"))])), 1);
}

#[test]
fn strict_analysis_rejects_non_split_algebras() {
    // GF(101)[C_3] is not split: 101 = 2 mod 3, so x^2 + x + 1 stays
    // irreducible. Splice its table into a real dump.
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("b12.json");
    assert_eq!(
        code(&bmw(&[
            "build",
            "--n",
            "2",
            "--q",
            "3",
            "--u",
            "22",
            "--out",
            path_str(&dump)
        ])),
        0
    );
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    v["basis"] = serde_json::json!(["1", "t", "t^2"]);
    v["unit"] = serde_json::json!([[0, "1"]]);
    v["generators"] = serde_json::json!([[[1, "1"]]]);
    let products: Vec<Value> = (0..3)
        .flat_map(|i| (0..3).map(move |j| serde_json::json!([i, j, [[(i + j) % 3, "1"]]])))
        .collect();
    v["products"] = Value::Array(products);
    std::fs::write(&dump, serde_json::to_string(&v).unwrap()).unwrap();

    let o = bmw(&["analyze", path_str(&dump)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["split"], false);
    assert_ne!(r["match"], true);
    let o = bmw(&["analyze", "--strict", path_str(&dump)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not split"));
}

#[test]
fn rational_builds_analyze_as_split() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("q.json");
    let o = bmw(&[
        "build",
        "--n",
        "2",
        "--field",
        "q",
        "--q",
        "2",
        "--u",
        "4",
        "--out",
        path_str(&dump),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["dimension"], 3);
    let o = bmw(&["analyze", "--strict", path_str(&dump)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["split"], true);
}

#[test]
fn semiadmissible_degree() {
    let v = json(&bmw(&[
        "semiadmissible",
        "--q",
        "3",
        "--u",
        "2,5",
        "--semi-degree",
        "1",
    ]));
    assert_eq!(v["d"], 1);
    let v = json(&bmw(&["semiadmissible", "--q", "3", "--u", "2,5"]));
    assert_eq!(v["d"], 2);
}

#[test]
fn verify_filters_and_negative_control() {
    let o = bmw(&["verify", "--only", "dims"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 1);
    assert_eq!(criteria[0]["name"], "dims");
    assert_eq!(v["passed"], true);

    let o = bmw(&["verify", "--only", "dims,omega", "--rho", "7"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(v["criteria"].as_array().unwrap().iter().all(|c| c["passed"] == false));

    assert_eq!(code(&bmw(&["verify", "--only", "nonsense"])), 1);
}

#[test]
fn outputs_are_byte_identical_for_equal_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = bmw(&["build", "--n", "3", "--q", "3", "--u", "2,5", "--out", path_str(p)]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r1 = bmw(&["analyze", path_str(&a), "--seed", "9"]);
    let r2 = bmw(&["analyze", path_str(&b), "--seed", "9"]);
    assert_eq!(r1.stdout, r2.stdout);
    let v1 = bmw(&["verify", "--only", "omega,properties", "--seed", "3", "--jobs", "2"]);
    let v2 = bmw(&["verify", "--only", "omega,properties", "--seed", "3"]);
    assert_eq!(v1.stdout, v2.stdout);
}
