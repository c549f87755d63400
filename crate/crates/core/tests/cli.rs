use std::fs;
use std::path::Path;
use std::process::Command;

use circulant_topology::circulant::{build_circulant, VertexSet};
use circulant_topology::classify::{ClassificationRecord, Label};
use circulant_topology::cli::{
    parse_json, render_json, run, CACHE_DIR_ENV, EXIT_BUDGET_UNKNOWN, EXIT_GOLDEN_MISSING,
    EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, GOLDEN_TABLE,
};
use circulant_topology::decomp::ShellingCertificate;
use circulant_topology::simplex::independence_complex;

const FOUND_CERT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/c16_1_4_8.found.shelling");

fn circtop(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("circtop").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(text: &str) -> Vec<ClassificationRecord> {
    text.lines().map(|l| parse_json(l).unwrap()).collect()
}

#[test]
fn classify_reports_the_shellable_example() {
    let (code, out, _) = circtop(&["classify", "16:1,4,8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("label          S"), "{out}");
    assert!(out.contains("1-well-covered yes"), "{out}");
}

#[test]
fn classify_json_for_the_four_cycle() {
    let (code, out, _) = circtop(&["classify", "4:1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let r = parse_json(out.trim()).unwrap();
    assert_eq!(r.label, Label::B);
    assert!(r.connected && r.well_covered);
    assert_eq!(r.alpha, 2);
}

#[test]
fn classify_rejects_bad_specs_with_exit_two() {
    let (code, _, err) = circtop(&["classify", "5:7"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("generator 7 exceeds floor(5/2)"), "{err}");
    let (code, _, err) = circtop(&["classify", "12:1,x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("position 5") && err.contains("\"x\""), "{err}");
    assert_eq!(circtop(&["classify", "4:1", "--field", "4"]).0, EXIT_USAGE);
}

#[test]
fn classify_with_tiny_budget_is_unknown_not_downgraded() {
    let (code, out, _) = circtop(&["classify", "16:1,4,8", "--json", "--budget", "1"]);
    assert_eq!(code, EXIT_BUDGET_UNKNOWN);
    let r = parse_json(out.trim()).unwrap();
    assert_eq!(r.label, Label::CM);
    assert_eq!(serde_json::to_value(&r).unwrap()["status"], "unknown-budget");
}

#[test]
fn census_small_ranges() {
    let (code, out, _) = circtop(&[
        "census", "--n-min", "3", "--n-max", "5", "--well-covered-only", "--json", "--no-cache",
    ]);
    assert_eq!(code, EXIT_OK);
    let specs: Vec<String> = json_lines(&out).iter().map(|r| r.spec.to_string()).collect();
    assert_eq!(specs, ["3:1", "4:1", "4:2", "4:1,2", "5:1", "5:1,2"]);

    let (_, out, _) = circtop(&["census", "--n-min", "8", "--n-max", "8", "--json", "--no-cache"]);
    let rows = json_lines(&out);
    let label_of = |s: &str| rows.iter().find(|r| r.spec.to_string() == s).unwrap().label;
    assert_eq!(label_of("8:2"), Label::N);
    assert_eq!(label_of("8:1,4"), Label::B);

    let (_, out, _) = circtop(&["census", "--n-min", "3", "--n-max", "3", "--json", "--no-cache"]);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].label, rows[0].one_well_covered), (Label::V, true));
}

#[test]
fn census_rejects_bad_ranges() {
    let (code, _, err) = circtop(&["census", "--n-min", "2", "--n-max", "5", "--no-cache"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("invalid range"));
}

#[test]
fn json_round_trips_for_every_census_record() {
    let (_, out, _) = circtop(&["census", "--n-min", "3", "--n-max", "12", "--json", "--no-cache"]);
    for line in out.lines() {
        let record = parse_json(line).unwrap();
        assert_eq!(render_json(&record), line);
        assert_eq!(parse_json(&render_json(&record)).unwrap(), record);
    }
}

#[test]
fn census_output_is_identical_for_any_job_count() {
    let outputs: Vec<String> = ["1", "2", "4", "8"]
        .iter()
        .map(|jobs| {
            circtop(&["census", "--n-min", "3", "--n-max", "13", "--jobs", jobs, "--json", "--no-cache"]).1
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(!outputs[0].is_empty());
}

fn cache_lines(dir: &Path) -> Vec<String> {
    fs::read_to_string(dir.join("census-v1.jsonl"))
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn cache_replay_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["census", "--n-min", "3", "--n-max", "11", "--json", "--cache-dir", d];
    let (code, cold, _) = circtop(&args);
    assert_eq!(code, EXIT_OK);
    let written = cache_lines(dir.path()).len();
    assert_eq!(written, cold.lines().count());

    let (_, warm, err) = circtop(&args);
    assert_eq!(warm, cold);
    assert!(err.is_empty(), "{err}");
    assert_eq!(cache_lines(dir.path()).len(), written, "warm run must not recompute");

    let mut forced = args.to_vec();
    forced.push("--force");
    assert_eq!(circtop(&forced).1, cold);
    assert_eq!(cache_lines(dir.path()).len(), 2 * written);
}

#[test]
fn corrupt_cache_lines_are_discarded_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["census", "--n-min", "3", "--n-max", "8", "--json", "--cache-dir", d];
    let (_, cold, _) = circtop(&args);

    let path = dir.path().join("census-v1.jsonl");
    let mut lines = cache_lines(dir.path());
    // flip the label inside the JSON but keep the old checksum
    let victim = lines.iter().position(|l| l.contains("\"label\":\"V\"")).unwrap();
    lines[victim] = lines[victim].replacen("\"label\":\"V\"", "\"label\":\"N\"", 1);
    lines.push("not a cache line".to_string());
    fs::write(&path, lines.join("\n") + "\n").unwrap();

    let (code, warm, err) = circtop(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(warm, cold, "tampered record must be recomputed, not served");
    assert_eq!(err.matches("corrupt cache line discarded").count(), 2, "{err}");
}

#[test]
fn cache_dir_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_DIR_ENV, dir.path());
    let (code, _, _) = circtop(&["census", "--n-min", "3", "--n-max", "6"]);
    std::env::remove_var(CACHE_DIR_ENV);
    assert_eq!(code, EXIT_OK);
    assert!(!cache_lines(dir.path()).is_empty());
}

#[test]
fn table_up_to_twelve_has_no_differences() {
    let (code, out, _) = circtop(&["table", "--n-max", "12"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("82 rows compared, 0 differences"), "{out}");
}

#[test]
fn table_reports_a_perturbed_label() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().join("golden.tsv");
    let perturbed = GOLDEN_TABLE.replacen("4:1\t-\tB\t-", "4:1\t-\tV\t-", 1);
    assert_ne!(perturbed, GOLDEN_TABLE);
    fs::write(&golden, perturbed).unwrap();
    let (code, out, _) = circtop(&["table", "--n-max", "6", "--golden", golden.to_str().unwrap()]);
    assert_eq!(code, EXIT_MISMATCH);
    let diff: Vec<&str> = out
        .lines()
        .filter(|l| (l.starts_with('-') || l.starts_with('+')) && !l.starts_with("---") && !l.starts_with("+++"))
        .collect();
    assert_eq!(diff, ["-4:1\t-\tV\t-", "+4:1\t-\tB\t-"]);
    assert!(out.contains("1 difference\n"), "{out}");
}

#[test]
fn table_with_missing_golden_has_its_own_exit_code() {
    let (code, _, err) = circtop(&["table", "--golden", "/nonexistent/table.tsv"]);
    assert_eq!(code, EXIT_GOLDEN_MISSING);
    assert!(err.contains("not found"));
}

#[test]
fn verify_shelling_accepts_the_found_certificate() {
    let (code, out, _) = circtop(&["verify-shelling", "16:1,4,8", FOUND_CERT]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("PASS"));
}

/// Prefix feasibility straight from the definition: each facet meets the
/// union of its predecessors in a pure complex of codimension one.
fn is_shelling_by_definition(order: &[VertexSet]) -> bool {
    (1..order.len()).all(|i| {
        let f = order[i];
        let d = f.count_ones() - 1;
        let traces: Vec<VertexSet> = order[..i].iter().map(|&g| g & f).collect();
        traces.iter().all(|&t| {
            traces
                .iter()
                .any(|&m| m.count_ones() == d && t & !m == 0)
        })
    })
}

#[test]
fn verify_shelling_on_a_reordered_certificate_matches_the_definition() {
    let text = fs::read_to_string(FOUND_CERT).unwrap();
    let mut cert = ShellingCertificate::parse(&text, 4).unwrap();
    assert!(is_shelling_by_definition(&cert.order));
    cert.order.swap(0, 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("swapped");
    fs::write(&path, cert.to_text(4)).unwrap();
    let (code, out, _) = circtop(&["verify-shelling", "16:1,4,8", path.to_str().unwrap()]);
    assert_eq!(code == EXIT_OK, is_shelling_by_definition(&cert.order), "{out}");

    cert.order.swap(0, 40);
    fs::write(&path, cert.to_text(4)).unwrap();
    let (code, out, _) = circtop(&["verify-shelling", "16:1,4,8", path.to_str().unwrap()]);
    assert_eq!(code == EXIT_OK, is_shelling_by_definition(&cert.order), "{out}");
    if code != EXIT_OK {
        assert!(out.contains("violates the shelling condition against facet"), "{out}");
    }
}

#[test]
fn verify_shelling_reports_counts_before_checking() {
    let text = fs::read_to_string(FOUND_CERT).unwrap();
    let labels: Vec<&str> = text.split_whitespace().collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short");
    fs::write(&path, labels[..labels.len() - 4].join(" ")).unwrap();
    let (code, out, _) = circtop(&["verify-shelling", "16:1,4,8", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("79 facets given, 80 expected"), "{out}");

    fs::write(&path, labels[..labels.len() - 1].join(" ")).unwrap();
    let (code, _, _) = circtop(&["verify-shelling", "16:1,4,8", path.to_str().unwrap()]);
    assert_ne!(code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_circtop");
    let status = Command::new(bin).args(["classify", "5:7"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&status.stderr).contains("generator 7 exceeds floor(5/2)"));
    let status = Command::new(bin).args(["classify", "8:2", "--json"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let r = parse_json(String::from_utf8_lossy(&status.stdout).trim()).unwrap();
    assert_eq!((r.label, r.connected), (Label::N, false));
    assert_eq!(r.spec, build_circulant("8:2".parse().unwrap()).spec().clone());
    assert!(independence_complex(&build_circulant(r.spec)).is_pure());
}
