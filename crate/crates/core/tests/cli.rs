use std::process::Command;
use std::sync::Arc;

use blocko::blocks::{BlockData, Bounds};
use blocko::cli::{run, EXIT_MATH, EXIT_OK, EXIT_USAGE};
use blocko::kl::IntPoly;
use blocko::rootdata::{CartanDatum, Weight};
use blocko::zmod::graph::{MomentGraph, DEFAULT_DEGREE_BOUND};
use blocko::zmod::lattice::ZLattice;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn blocko(args: &[&str]) -> (i32, String) {
    run(std::iter::once("blocko").chain(args.iter().copied()))
}

fn json_ok(args: &[&str]) -> Value {
    let (code, out) = blocko(args);
    assert_eq!(code, EXIT_OK, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn kl_example() {
    let a3 = fixture("a3");
    let v = json_ok(&["kl", "--cartan", &a3, "--x", "2", "--w", "2 1 3 2"]);
    assert_eq!(v["kl_poly"], "1+q");
    assert_eq!(v["bruhat_leq"], true);
    let p: IntPoly = v["kl_poly"].as_str().unwrap().parse().unwrap();
    assert_eq!(p.to_string(), "1+q");
}

#[test]
fn block_examples() {
    let a2 = fixture("a2");
    let v = json_ok(&["block", "--cartan", &a2, "--weight", "0,-1/2"]);
    assert_eq!(v["integral_simples"], serde_json::json!([[1, 0]]));
    assert_eq!(v["coxeter_matrix"], serde_json::json!([[1]]));
    let v = json_ok(&["block", "--cartan", &fixture("a1"), "--weight", "0"]);
    assert_eq!(v["stabilizer_order"], 1);
    assert_eq!(v["has_dominant"], true);
    assert_eq!(v["has_antidominant"], true);
    let v = json_ok(&["block", "--cartan", &fixture("affine_a1"), "--weight", "-1,-1"]);
    assert_eq!(v["critical"], true);
    let (code, out) = blocko(&["block", "--cartan", &fixture("affine_a1"), "--weight", "-1,-1", "--require-noncritical"]);
    assert_eq!(code, EXIT_MATH);
    assert!(serde_json::from_str::<Value>(&out).unwrap()["error"].is_string());
    // the reported Cartan datum re-parses
    let v = json_ok(&["block", "--cartan", &a2, "--weight", "0,-1/2"]);
    CartanDatum::from_json(&v["cartan"].to_string()).unwrap();
    serde_json::from_value::<Weight>(v["base_weight"].clone()).unwrap();
}

#[test]
fn bs_example() {
    let a2 = fixture("a2");
    let v = json_ok(&["bs", "--cartan", &a2, "--word", "1 2 1"]);
    assert_eq!(v["rank"], 8);
    let sizes: Vec<usize> =
        v["summands"].as_array().unwrap().iter().map(|s| s["multiplicities"].as_object().unwrap().len()).collect();
    assert_eq!(sizes, vec![6, 2]);
    let block = BlockData::new(CartanDatum::finite("A", 2).unwrap(), Weight::zero(2), Bounds::default()).unwrap();
    let graph: Arc<MomentGraph> = MomentGraph::from_block(&block, DEFAULT_DEGREE_BOUND).unwrap();
    for s in v["summands"].as_array().unwrap() {
        let l = ZLattice::from_json(graph.clone(), &s["lattice"]).unwrap();
        assert_eq!(serde_json::to_string(&l.to_json()).unwrap(), serde_json::to_string(&s["lattice"]).unwrap());
    }
}

#[test]
fn center_and_character() {
    let v = json_ok(&["center", "--cartan", &fixture("a2")]);
    assert_eq!(v["rank"], 6);
    let v = json_ok(&["character", "--cartan", &fixture("a1"), "--weight", "0", "--w", "e"]);
    assert_eq!(v["character"]["terms"], serde_json::json!({"e": 1, "1": -1}));
}

#[test]
fn equiv_example() {
    let v = json_ok(&["equiv", "--cartan", &fixture("a2"), "--cartan", &fixture("a1"), "--weight", "0,-1/2", "--weight", "0"]);
    assert_eq!(v["verdict"], "equivalent");
}

#[test]
fn exit_codes() {
    assert_eq!(blocko(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(blocko(&["block", "--cartan", &fixture("a2"), "--weight", "1,x"]).0, EXIT_USAGE);
    assert_eq!(blocko(&["block", "--cartan", "/nonexistent.json"]).0, EXIT_USAGE);
    assert_eq!(blocko(&["kl", "--cartan", &fixture("a2"), "--x", "1"]).0, EXIT_USAGE);
    assert_eq!(blocko(&["block", "--cartan", &fixture("a2"), "--height-bound", "0"]).0, EXIT_USAGE);
    assert_eq!(blocko(&["--help"]).0, EXIT_OK);
    // singular block cannot carry a Bott-Samelson lattice
    assert_eq!(blocko(&["bs", "--cartan", &fixture("a1"), "--weight", "-1", "--word", "1"]).0, EXIT_MATH);
}

#[test]
fn tsv_format() {
    let (code, out) = blocko(&["kl", "--cartan", &fixture("a3"), "--x", "2", "--w", "2 1 3 2", "--format", "tsv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "kl_poly\t1+q"));
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["bs", "--cartan", &fixture("b2"), "--word", "1 2 1"],
        vec!["block", "--cartan", &fixture("affine_a1"), "--weight", "1,0"],
        vec!["center", "--cartan", &fixture("a2")],
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        assert_eq!(blocko(&args), blocko(&args));
    }
}

#[test]
fn cache_warm_and_cold_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let a3 = fixture("a3");
    let pairs = [("e", "1 2 1"), ("2", "2 1 3 2"), ("1", "1 2 3 2 1"), ("2", "1 3")];
    let plain: Vec<_> = pairs.iter().map(|(x, w)| blocko(&["kl", "--cartan", &a3, "--x", x, "--w", w])).collect();
    let cold: Vec<_> =
        pairs.iter().map(|(x, w)| blocko(&["kl", "--cartan", &a3, "--x", x, "--w", w, "--cache-dir", cache])).collect();
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(entries >= pairs.len());
    let warm: Vec<_> =
        pairs.iter().map(|(x, w)| blocko(&["kl", "--cartan", &a3, "--x", x, "--w", w, "--cache-dir", cache])).collect();
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), entries);
}

#[test]
fn binary_and_environment_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_blocko"))
        .args(["kl", "--cartan", &fixture("a3"), "--x", "2", "--w", "2 1 3 2"])
        .env("BLOCKO_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kl_poly"], "1+q");
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_blocko"))
        .args(["block", "--cartan", &fixture("affine_a1"), "--weight", "-1,-1", "--require-noncritical"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_MATH));
}
