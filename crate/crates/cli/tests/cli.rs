use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn amocnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amocnf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn schema_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.v1.json")
}

fn validated_report(out: &Output) -> Value {
    let report: Value = serde_json::from_str(&stdout(out)).expect("stdout is JSON");
    let schema: Value = serde_json::from_str(&fs::read_to_string(schema_path()).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(&report)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
    report
}

fn generated(dir: &TempDir, kind: &str, n: usize) -> PathBuf {
    let path = dir.path().join(format!("{kind}-{n}.cnf"));
    let out = amocnf(&[
        "generate",
        "--kind",
        kind,
        "--n",
        &n.to_string(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn dimacs_clause_count(text: &str) -> usize {
    text.lines()
        .filter(|l| !l.starts_with('c') && !l.starts_with('p') && !l.trim().is_empty())
        .count()
}

#[test]
fn generate_product_amo_25_has_68_clauses() {
    let dir = TempDir::new().unwrap();
    let path = generated(&dir, "product-amo", 25);
    let text = fs::read_to_string(path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("c inputs 1 2 3")));
    assert_eq!(dimacs_clause_count(&text), 68);

    let out = amocnf(&["generate", "--kind", "product-amo", "--n", "25", "--json"]);
    let report = validated_report(&out);
    assert_eq!(report["command"], "generate");
    assert_eq!(report["result"]["clauses"], 68);
    assert_eq!(report["config"]["n"], 25);
}

#[test]
fn generate_without_out_prints_dimacs() {
    let out = amocnf(&["generate", "--kind", "pairwise-amo", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(dimacs_clause_count(&stdout(&out)), 6);
}

#[test]
fn generate_partition_fixture_takes_blocks() {
    let out = amocnf(&[
        "generate",
        "--kind",
        "partition-fixture",
        "--blocks",
        "2,2,2,2",
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = validated_report(&out);
    assert_eq!(report["result"]["n"], 8);
}

#[test]
fn verify_nonpc_exactly_one_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let path = generated(&dir, "nonpc-exone", 5);
    let out = amocnf(&[
        "verify",
        "--function",
        "eo",
        "--mode",
        "input-pc",
        "--trace",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = validated_report(&out);
    let result = &report["result"];
    assert_eq!(result["verdict"], false);
    assert_eq!(result["witness"]["type"], "missed_consequence");
    let trace = result["trace"].as_array().unwrap();
    assert!(trace.last().unwrap().as_str().unwrap().starts_with("fixpoint"));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_passes_for_pc_constructions() {
    let dir = TempDir::new().unwrap();
    for kind in ["pairwise-amo", "sequential-amo", "product-amo", "tree-amo"] {
        let path = generated(&dir, kind, 6);
        for mode in ["enc", "p", "input-pc", "prime"] {
            let out = amocnf(&["verify", "--mode", mode, path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{kind} {mode}");
            let report = validated_report(&out);
            assert_eq!(report["result"]["verdict"], true, "{kind} {mode}");
        }
    }
}

#[test]
fn verify_auto_classifies_exactly_one() {
    let dir = TempDir::new().unwrap();
    let path = generated(&dir, "prime-exone", 4);
    let out = amocnf(&["verify", path.to_str().unwrap()]);
    let report = validated_report(&out);
    assert_eq!(report["result"]["class"], "eo");
    assert_eq!(report["result"]["verdict"], true);
}

#[test]
fn verify_missing_file_is_a_usage_error() {
    let out = amocnf(&["verify", "/nonexistent/formula.cnf"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn malformed_dimacs_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.cnf");
    fs::write(&path, "p cnf 2 1\n1 x 0\n").unwrap();
    let out = amocnf(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_product_reports_tight_partner_graph() {
    let dir = TempDir::new().unwrap();
    let path = generated(&dir, "product-amo", 25);
    let out = amocnf(&["analyze", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report = validated_report(&out);
    let result = &report["result"];
    assert_eq!(result["structure"]["regular"], true);
    assert_eq!(result["p_encoding"]["verdict"], true);
    let mantel = &result["two_cnf"]["mantel"];
    assert_eq!(mantel["auxiliaries"], 10);
    assert_eq!(mantel["tight"], true);

    let text = stdout(&amocnf(&["analyze", path.to_str().unwrap()]));
    assert!(text.contains("regular form: yes"));
}

#[test]
fn reduce_writes_output_and_trace() {
    let dir = TempDir::new().unwrap();
    let path = generated(&dir, "sequential-amo", 7);
    let out_path = dir.path().join("reduced.cnf");
    let out = amocnf(&[
        "reduce",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = validated_report(&out);
    let steps = report["result"]["steps"].as_array().unwrap();

    let trace = fs::read_to_string(dir.path().join("reduced.cnf.trace")).unwrap();
    let tags: Vec<&str> = trace.lines().collect();
    assert_eq!(tags.len(), steps.len());
    assert!(tags.iter().all(|t| ["i", "ii", "iii", "iv"].contains(t)));

    let reduced = fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        dimacs_clause_count(&reduced) as u64,
        report["result"]["size_after"].as_u64().unwrap()
    );
    let check = amocnf(&["verify", "--mode", "p", out_path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn bounds_csv_has_expected_columns() {
    let out = amocnf(&["bounds", "--from", "3", "--to", "12", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        [
            "n",
            "lb_general",
            "lb_2cnf",
            "regular_floor_ceil",
            "size_pairwise",
            "size_sequential",
            "size_product"
        ]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    let nine = &rows[6];
    assert_eq!(&nine[0], "9");
    assert_eq!(&nine[1], "19");
    assert_eq!(&nine[2], "21");
}

#[test]
fn bounds_json_validates() {
    let out = amocnf(&["bounds", "--from", "3", "--to", "42", "--json"]);
    let report = validated_report(&out);
    assert_eq!(report["result"]["rows"].as_array().unwrap().len(), 40);
}

#[test]
fn bounds_below_three_is_rejected() {
    let out = amocnf(&["bounds", "--from", "1", "--to", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_finds_pairwise_minimum() {
    let out = amocnf(&["search", "--function", "amo", "--n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = validated_report(&out);
    let result = &report["result"];
    assert_eq!(result["outcome"]["status"], "found");
    assert_eq!(result["outcome"]["size"], 3);
    assert_eq!(result["certified"], true);
}

#[test]
fn search_reports_empty_budget_with_exit_one() {
    let out = amocnf(&[
        "search",
        "--function",
        "amo",
        "--n",
        "4",
        "--max-size",
        "5",
        "--unsafe-no-aux",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = validated_report(&out);
    assert_eq!(report["result"]["outcome"]["status"], "none-within-budget");
}

#[test]
fn search_refuses_large_budget_without_flag() {
    let out = amocnf(&["search", "--function", "eo", "--n", "3", "--max-size", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_sizes_never_undercut_bounds() {
    let out = amocnf(&["bench", "--from", "3", "--to", "64", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = validated_report(&out);
    let rows = report["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 62);
    for row in rows {
        let lb = row["lb_general"]
            .as_u64()
            .unwrap()
            .max(row["lb_2cnf"].as_u64().unwrap());
        for key in ["size_pairwise", "size_sequential", "size_tree", "size_product"] {
            assert!(row[key].as_u64().unwrap() >= lb, "n={} {key}", row["n"]);
        }
    }
}

#[test]
fn bench_pc_check_skips_beyond_cap() {
    let out = amocnf(&["bench", "--from", "8", "--to", "10", "--verify-pc", "--json"]);
    let report = validated_report(&out);
    let rows = report["result"]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["pc_product"], "pass");
    assert_eq!(rows[2]["pc_product"], "skipped (cap)");
}

#[test]
fn seed_is_recorded() {
    let out = amocnf(&["bounds", "--from", "3", "--to", "3", "--json", "--seed", "42"]);
    let report = validated_report(&out);
    assert_eq!(report["seed"], 42);
}
