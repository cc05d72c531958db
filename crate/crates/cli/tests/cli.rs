//! End-to-end runs of the `gmlab` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gmlab(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmlab"))
        .args(args)
        .env("GMLAB_CACHE_DIR", cache)
        .output()
        .expect("gmlab runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(gmlab(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(gmlab(&["bott", "table", "--bundle", "omega9"], dir.path()).status.code(), Some(2));
    assert_eq!(gmlab(&["vf", "search", "--p", "9..5"], dir.path()).status.code(), Some(2));
    assert_eq!(gmlab(&["vf", "certify", "--family", "6"], dir.path()).status.code(), Some(2));
    let help = gmlab(&["--help"], dir.path());
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("Usage"));
}

#[test]
fn bott_table_for_omega2_minus3() {
    let dir = tempfile::tempdir().unwrap();
    let out = gmlab(&["bott", "table", "--bundle", "omega2", "--twist", "-3", "--p", "5", "--emit", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["schema"], "gmlab/1");
    assert_eq!(r["verdict"], "PASS");
    let rows = r["payload"]["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let dominant: Vec<&Value> = rows.iter().filter(|row| !row["w"].is_null()).collect();
    assert_eq!(dominant.len(), 1);
    assert_eq!(dominant[0]["lambda"], serde_json::json!([0, -1, -1, 5, 3]));
    assert_eq!(dominant[0]["w_dot_lambda"], serde_json::json!([2, 1, 1, 1, 1]));
    let h: Vec<String> = r["payload"]["cohomology"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.to_string())
        .collect();
    assert_eq!(h.len(), 7);
    let md = gmlab(&["bott", "table", "--bundle", "omega2", "--twist", "-3"], dir.path());
    let text = String::from_utf8_lossy(&md.stdout);
    assert!(text.contains("| h^j(Omega^2(-3)) | 0 | 0 | 0 | 0 | 0 | 5 | 0 |"), "{text}");
}

#[test]
fn hodge_diamond_of_x() {
    let dir = tempfile::tempdir().unwrap();
    let out = gmlab(&["hodge", "diamond", "--variety", "X", "--p", "5", "--emit", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["verdict"], "PASS");
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    // h^{3,3} sits in the middle of the middle row
    let md = gmlab(&["hodge", "diamond", "--variety", "X"], dir.path());
    assert!(String::from_utf8_lossy(&md.stdout).contains(" 0     0     1    22     1     0     0"));
}

#[test]
fn json_is_reproducible_under_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gm", "roundtrip", "--field", "7", "--trials", "4", "--seed", "11", "--emit", "json"];
    let a = gmlab(&args, dir.path());
    let b = gmlab(&args, dir.path());
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "2"]);
    let c = gmlab(&with_jobs, dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let other = gmlab(&["gm", "random", "--seed", "12", "--emit", "json"], dir.path());
    let again = gmlab(&["gm", "random", "--seed", "12", "--emit", "json"], dir.path());
    assert_eq!(other.stdout, again.stdout);
    let different = gmlab(&["gm", "random", "--seed", "13", "--emit", "json"], dir.path());
    assert_ne!(other.stdout, different.stdout);
}

#[test]
fn large_primes_give_an_empty_classification() {
    let dir = tempfile::tempdir().unwrap();
    let out = gmlab(&["vf", "search", "--p", "11..200", "--emit", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["payload"]["classes"], serde_json::json!([]));
    assert!(stderr(&out).contains("computed"));
    let again = gmlab(&["vf", "search", "--p", "11..200", "--emit", "json"], dir.path());
    assert!(stderr(&again).contains("cache hit"), "{}", stderr(&again));
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn full_search_is_cached_and_narrowed() {
    let dir = tempfile::tempdir().unwrap();
    let full = gmlab(&["vf", "search", "--emit", "json"], dir.path());
    assert_eq!(full.status.code(), Some(0), "{}", stderr(&full));
    let classes = json(&full)["payload"]["classes"].as_array().unwrap().clone();
    assert_eq!(classes.len(), 5);
    let mut families: Vec<u64> = classes.iter().map(|c| c["family"].as_u64().unwrap()).collect();
    families.sort_unstable();
    assert_eq!(families, [1, 2, 3, 4, 5]);

    let seven = gmlab(&["vf", "search", "--p", "7", "--emit", "json"], dir.path());
    assert!(stderr(&seven).contains("narrowed"), "{}", stderr(&seven));
    let r = json(&seven);
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["payload"]["classes"].as_array().unwrap().len(), 1);

    let computed = gmlab(&["vf", "search", "--p", "7", "--no-cache", "--emit", "json"], dir.path());
    assert!(stderr(&computed).contains("computed"));
    assert_eq!(json(&computed)["payload"]["classes"], r["payload"]["classes"]);

    let lemma = gmlab(&["vf", "lemma56"], dir.path());
    assert_eq!(lemma.status.code(), Some(0));
    assert!(stderr(&lemma).contains("cache hit"));
}

#[test]
fn gm_files_convert_and_lift() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let random = gmlab(&["gm", "random", "--p", "7", "--n", "3", "-o", &p("a.json")], dir.path());
    assert_eq!(random.status.code(), Some(0), "{}", stderr(&random));
    let to_gm = gmlab(&["gm", "convert", &p("a.json"), "-o", &p("w.json")], dir.path());
    assert_eq!(to_gm.status.code(), Some(0), "{}", stderr(&to_gm));
    let back = gmlab(&["gm", "convert", &p("w.json"), "-o", &p("b.json")], dir.path());
    assert_eq!(back.status.code(), Some(0), "{}", stderr(&back));
    let w: Value = serde_json::from_str(&std::fs::read_to_string(p("w.json")).unwrap()).unwrap();
    assert_eq!(w["W"].as_array().unwrap().len(), 8);
    assert_eq!(w["q"].as_array().unwrap().len(), 6);

    let lift = gmlab(&["gm", "lift", &p("a.json"), "--k", "3", "-o", &p("z.json"), "--emit", "json"], dir.path());
    assert_eq!(lift.status.code(), Some(0), "{}", stderr(&lift));
    let z: Value = serde_json::from_str(&std::fs::read_to_string(p("z.json")).unwrap()).unwrap();
    assert_eq!(z["ring"], serde_json::json!({ "kind": "zmodpk", "p": 7, "k": 3 }));

    let scan = gmlab(&["gm", "scan", &p("a.json"), "--budget", "500"], dir.path());
    assert!(matches!(scan.status.code(), Some(0 | 1)));
    let v5 = gmlab(&["gm", "find-v5p", &p("a.json"), "--emit", "json"], dir.path());
    assert_eq!(v5.status.code(), Some(0), "{}", stderr(&v5));

    std::fs::write(p("bad.json"), r#"{"ring":{"kind":"gf","p":7,"k":1},"n":3}"#).unwrap();
    assert_eq!(gmlab(&["gm", "scan", &p("bad.json")], dir.path()).status.code(), Some(2));
    assert_eq!(gmlab(&["gm", "scan", &p("missing.json")], dir.path()).status.code(), Some(2));
}

#[test]
fn lattice_verify_reports_the_signature_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let out = gmlab(&["lattice", "verify", "--emit", "json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert!(failed[0].contains("signature"));
}

#[test]
fn config_files_set_the_suite_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("gmlab.toml");
    std::fs::write(&cfg, "round_trips = 2\nlifts = 2\nnumeric_samples = 3\nemit = \"json\"\n").unwrap();
    let out = gmlab(&["all", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["inputs"]["round_trips"], 2);
    let failing: Vec<u64> = r["payload"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(failing, [8, 11]);

    std::fs::write(&cfg, "round_trip = 2\n").unwrap();
    assert_eq!(gmlab(&["all", "--config", cfg.to_str().unwrap()], dir.path()).status.code(), Some(2));
}
