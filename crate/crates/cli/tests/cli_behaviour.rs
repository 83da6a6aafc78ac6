use std::fs;
use std::process::Command;

use stperiod_cli::cache::{cache_get, cache_put, entry_path, CacheLookup};
use stperiod_cli::config::{Source, TypeArgs};
use stperiod_cli::{run, Command as Cmd, Format, RunConfig};
use stperiod_core::coxeter::{CartanType, Family};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stperiod"))
}

fn status(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(status(&["period", "--family", "A", "--rank", "1", "--qF", "3"]), 0);
    assert_eq!(status(&["period", "--family", "A", "--rank", "1", "--qF", "6"]), 2);
    assert_eq!(status(&["growth", "--family", "D", "--rank", "3"]), 2);
    assert_eq!(status(&["growth", "--family", "A", "--rank", "2", "--K", "x"]), 2);
    assert_eq!(status(&["orbit", "--p", "4", "--n", "1"]), 2);
    assert_eq!(status(&["tree-verify", "--qF", "11"]), 2);
    assert_eq!(status(&["growth", "--family", "E", "--rank", "8", "--K", "10", "--budget", "1000"]), 3);
    assert_eq!(status(&["--help"]), 0);
}

#[test]
fn growth_example() {
    let out = bin().args(["growth", "--family", "A", "--rank", "2", "--K", "4", "--format", "csv"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,a_k\n0,1\n1,3\n2,6\n3,9\n4,12\n");
}

#[test]
fn period_json_is_exact_and_versioned() {
    let out = bin().args(["period", "--family", "A", "--rank", "1", "--qF", "3"]).output().unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["result"]["period"]["closed_form_value"], serde_json::json!({"num": "1", "den": "2"}));
    assert_eq!(doc["result"]["bounds"]["status"], "holds");
}

#[test]
fn orbit_example() {
    let out = bin().args(["orbit", "--p", "3", "--n", "1"]).output().unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["affine_square"]["orbit_count"], 2);
    assert_eq!(doc["result"]["inversion_closure"]["orbit_count"], 1);
    assert_eq!(doc["result"]["nonsquare_witness"], serde_json::json!({"a": 1, "b": 1}));
}

#[test]
fn cocycle_csv_export() {
    let out = bin().args(["tree-verify", "--qF", "2", "--depth", "2", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("edge_id,num,den"));
    assert_eq!(lines.next(), Some("0,1,1"));
    // 1 + 2*4 + 2*16 edges
    assert_eq!(lines.count(), 40);
}

fn cfg(command: Cmd) -> RunConfig {
    RunConfig::new(command)
}

#[test]
fn identical_configs_give_identical_bytes() {
    let commands = [
        Cmd::Period { ty: TypeArgs { family: Family::C, rank: 2 }, q_f: 4, k: 10, source: Source::Enumerated },
        Cmd::TreePeriod { q_f: 3, depth: 3 },
        Cmd::Invariant { q_f: 2, depth: 3 },
        Cmd::Orbit { p: 2, n: 3 },
    ];
    for c in commands {
        for format in [Format::Json, Format::Csv, Format::Text] {
            let mut cfg = cfg(c.clone());
            cfg.format = format;
            assert_eq!(run(&cfg).unwrap().rendered, run(&cfg).unwrap().rendered, "{c:?}");
        }
    }
}

#[test]
fn suite_is_deterministic_and_passes() {
    let a = bin().args(["suite"]).output().unwrap();
    let b = bin().args(["suite"]).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(doc["result"]["checks"].as_array().unwrap().len() >= 16);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let command = Cmd::Growth { ty: TypeArgs { family: Family::A, rank: 3 }, k: 7, source: Source::Enumerated };
    let plain = run(&cfg(command.clone())).unwrap().rendered;
    let mut cached = cfg(command);
    cached.cache_dir = Some(dir.path().to_path_buf());
    let first = run(&cached).unwrap().rendered;
    let ty = CartanType::new(Family::A, 3).unwrap();
    assert!(matches!(cache_get(dir.path(), ty, 7), CacheLookup::Hit(_)));
    let second = run(&cached).unwrap().rendered;
    assert_eq!(plain, first);
    assert_eq!(plain, second);
}

#[test]
fn cache_hit_matches_recomputation_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let ty = CartanType::new(Family::A, 2).unwrap();
    let mut c = cfg(Cmd::Growth { ty: TypeArgs { family: Family::A, rank: 2 }, k: 6, source: Source::Enumerated });
    c.cache_dir = Some(dir.path().to_path_buf());
    run(&c).unwrap();
    let stored = fs::read(entry_path(dir.path(), ty, 6)).unwrap();
    let series = cache_get(dir.path(), ty, 6).series().unwrap();
    let other = tempfile::tempdir().unwrap();
    let rewritten = cache_put(other.path(), &series).unwrap();
    assert_eq!(stored, fs::read(rewritten).unwrap());
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let ty = CartanType::new(Family::A, 2).unwrap();
    let path = entry_path(dir.path(), ty, 6);
    fs::write(&path, b"not json").unwrap();
    let mut c = cfg(Cmd::Growth { ty: TypeArgs { family: Family::A, rank: 2 }, k: 6, source: Source::Enumerated });
    let expected = run(&c).unwrap().rendered;
    c.cache_dir = Some(dir.path().to_path_buf());
    assert_eq!(run(&c).unwrap().rendered, expected);
    // the bad file has been replaced by a valid entry
    assert!(matches!(cache_get(dir.path(), ty, 6), CacheLookup::Hit(_)));
}

#[test]
fn tampered_coefficients_are_not_reused() {
    let dir = tempfile::tempdir().unwrap();
    let ty = CartanType::new(Family::A, 2).unwrap();
    let mut c = cfg(Cmd::Growth { ty: TypeArgs { family: Family::A, rank: 2 }, k: 6, source: Source::Enumerated });
    c.cache_dir = Some(dir.path().to_path_buf());
    run(&c).unwrap();
    let path = entry_path(dir.path(), ty, 6);
    let mut doc: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    doc["series"]["coefficients"] = serde_json::json!([1, 3, 6]);
    fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
    assert!(matches!(cache_get(dir.path(), ty, 6), CacheLookup::Corrupt(_)));
}
