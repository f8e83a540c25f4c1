//! End-to-end checks of the binary: exit codes, JSON output, and file
//! round-trips through the subcommands.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn kqr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kqr"))
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kqr-cli-test-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_k7(dir: &PathBuf) -> PathBuf {
    let g = kqr_core::hypergraph::Hypergraph::complete(7, 2);
    let path = dir.join("k7.hg");
    fs::write(&path, kqr_cli::hypergraph_to_string(&g)).unwrap();
    path
}

#[test]
fn check_div_exit_codes() {
    let dir = temp_dir("checkdiv");
    let k7 = write_k7(&dir);
    let out = kqr().args(["check-div", "--input"]).arg(&k7).args(["-q", "3"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // K_6 is not K_3-divisible: the verification fails, exit code 1
    let k6 = dir.join("k6.hg");
    fs::write(&k6, kqr_cli::hypergraph_to_string(&kqr_core::hypergraph::Hypergraph::complete(6, 2))).unwrap();
    let out = kqr().args(["check-div", "--input"]).arg(&k6).args(["-q", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // malformed input: exit code 2
    let bad = dir.join("bad.hg");
    fs::write(&bad, "not a hypergraph").unwrap();
    let out = kqr().args(["check-div", "--input"]).arg(&bad).args(["-q", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_parses() {
    let out = kqr().args(["--format", "json", "fake-edge", "-q", "3", "-r", "2"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(true));
    assert_eq!(v["new_vertices"], serde_json::json!(3));
    assert_eq!(v["rooted_degeneracy"], serde_json::json!(2));
}

#[test]
fn decompose_exact_writes_verifiable_packing() {
    let dir = temp_dir("sts");
    let k7 = write_k7(&dir);
    let packing = dir.join("sts7.cliques");
    let out = kqr()
        .args(["decompose-exact", "--input"])
        .arg(&k7)
        .args(["-q", "3", "--out"])
        .arg(&packing)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&packing).unwrap();
    let fam = kqr_cli::packing_from_str(3, &text).unwrap();
    assert_eq!(fam.len(), 7);
    let g = kqr_core::hypergraph::Hypergraph::complete(7, 2);
    assert!(kqr_core::hypergraph::verify_decomposition(&g, &fam).unwrap());
}

#[test]
fn reserves_round_trip_through_files() {
    let dir = temp_dir("reserves");
    let k7 = write_k7(&dir);
    let xfile = dir.join("x.hg");
    let out = kqr()
        .args(["--seed", "9", "reserves", "--input"])
        .arg(&k7)
        .args(["-q", "3", "-p", "1/3", "--out"])
        .arg(&xfile)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&xfile).unwrap();
    let x = kqr_cli::hypergraph_from_str(&text).unwrap();
    assert_eq!(kqr_cli::hypergraph_to_string(&x), text); // bit-exact round trip
}

#[test]
fn nibble_with_explicit_clique_file() {
    let dir = temp_dir("nibble");
    // cover a triangle with itself, empty reserves
    let tri = kqr_core::hypergraph::Hypergraph::from_edges(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
    let gfile = dir.join("tri.hg");
    fs::write(&gfile, kqr_cli::hypergraph_to_string(&tri)).unwrap();
    let xfile = dir.join("empty.hg");
    fs::write(&xfile, kqr_cli::hypergraph_to_string(&kqr_core::hypergraph::Hypergraph::new(3, 2))).unwrap();
    let cfile = dir.join("fam.cliques");
    fs::write(&cfile, "0 1 2\n").unwrap();
    let out = kqr()
        .args(["nibble", "--input"])
        .arg(&gfile)
        .arg("--reserves")
        .arg(&xfile)
        .args(["-q", "3", "--cliques"])
        .arg(&cfile)
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("leave_edges: 0"), "{text}");
    assert!(out.status.success());
}

#[test]
fn pipeline_reports_trace() {
    let dir = temp_dir("pipeline");
    let k7 = write_k7(&dir);
    let out = kqr()
        .args(["--seed", "4", "pipeline", "--input"])
        .arg(&k7)
        .args(["-q", "3", "-p", "1/21"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("stage=input"), "{text}");
    assert!(text.contains("decomposition verified: true"), "{text}");
    assert!(out.status.success());
}
