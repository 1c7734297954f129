use std::process::{Command, Output};

use serde_json::Value;

fn coxtr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxtr"))
        .args(args)
        .env_remove("COXTR_BUDGET")
        .env_remove("COXTR_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = coxtr(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn count_rows() {
    let e6 = json(&["count", "E6"]);
    assert_eq!((e6["T"].as_u64(), e6["S"].as_u64()), (Some(5), Some(9)));
    assert_eq!(e6["minus_identity"], false);

    let mixed = json(&["count", "B4 + D5 + I2(7) + A0"]);
    assert_eq!((mixed["T"].as_u64(), mixed["S"].as_u64()), (Some(0), Some(80)));
    assert_eq!(mixed["system"], "B4+D5+I2(7)+A0");

    let h3 = json(&["count", "h3", "--strategy", "brute"]);
    assert_eq!((h3["T"].as_u64(), h3["S"].as_u64()), (Some(4), Some(4)));
    assert_eq!(h3["method"], "brute_force");
    assert_eq!(h3["minus_identity"], true);
    assert!(h3.get("timing_ms").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(coxtr(&["count", "Q7"]).status.code(), Some(2));
    assert_eq!(coxtr(&["count", "D1"]).status.code(), Some(2));
    assert_eq!(coxtr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(coxtr(&["classes", "I2(7)"]).status.code(), Some(2));
    assert_eq!(coxtr(&["count", "I2(7)", "--strategy", "brute"]).status.code(), Some(2));
    assert_eq!(coxtr(&["count", "E7", "--strategy", "brute"]).status.code(), Some(3));
    assert_eq!(coxtr(&["count", "E8", "--strategy", "brute"]).status.code(), Some(3));
    // --heavy reaches E7 but never E8.
    assert_eq!(coxtr(&["count", "E8", "--strategy", "brute", "--heavy", "--budget", "1000000000"]).status.code(), Some(3));
    assert_eq!(coxtr(&["cache", "list"]).status.code(), Some(2));

    let file = tempfile::NamedTempFile::new().unwrap();
    let blocked = file.path().join("sub");
    let out = coxtr(&["cache", "warm", "A2", "--cache-dir", blocked.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sub"));
}

#[test]
fn budget_flag_beats_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_coxtr"));
        cmd.args(["count", "G2", "--strategy", "brute"]).env_remove("COXTR_CACHE_DIR");
        match env {
            Some(v) => cmd.env("COXTR_BUDGET", v),
            None => cmd.env_remove("COXTR_BUDGET"),
        };
        if let Some(f) = flag {
            cmd.args(["--budget", f]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, None), Some(0));
    assert_eq!(run(Some("5"), None), Some(3));
    assert_eq!(run(Some("5"), Some("100")), Some(0));
    assert_eq!(run(None, Some("11")), Some(3));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = coxtr(&["count", "F4+A2", "--strategy", "brute", "--cache-dir", d]);
    assert!(cold.status.success());

    let warm = coxtr(&["cache", "warm", "E6", "--cache-dir", d]);
    assert_eq!(stdout(&warm), "E6\torder 51840\tstored\n");
    let again = coxtr(&["cache", "warm", "E6", "--cache-dir", d]);
    assert_eq!(stdout(&again), "E6\torder 51840\talready cached\n");

    let hit = coxtr(&["count", "F4+A2", "--strategy", "brute", "--cache-dir", d]);
    assert_eq!(stdout(&cold), stdout(&hit));

    let list = stdout(&coxtr(&["cache", "list", "--cache-dir", d]));
    let keys: Vec<&str> = list.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(keys, ["A2", "E6", "F4"]);
    assert_eq!(list, stdout(&coxtr(&["cache", "list", "--cache-dir", d])));

    let via_env = Command::new(env!("CARGO_BIN_EXE_coxtr")).args(["cache", "clear"]).env("COXTR_CACHE_DIR", d).output().unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), "removed 3 cached groups\n");
    assert_eq!(stdout(&coxtr(&["cache", "list", "--cache-dir", d])), "");
}

#[test]
fn tables_are_stable_and_satisfy_the_inequality() {
    let first = coxtr(&["table", "--format", "json"]);
    let second = coxtr(&["table", "--format", "json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let tables: Value = serde_json::from_slice(&first.stdout).unwrap();
    let tables = tables.as_array().unwrap();
    assert_eq!(tables.len(), 2);
    for t in tables {
        for row in t["rows"].as_array().unwrap() {
            let (tr, s) = (row["T"].as_u64().unwrap(), row["S"].as_u64().unwrap());
            assert!(s >= 1 && tr <= s, "{row}");
            assert_ne!(row["brute_force_agrees"], false, "{row}");
            let equal = t["section"] == "section3";
            assert_eq!(tr == s, equal, "{row}");
            assert_eq!(row["minus_identity"], equal, "{row}");
        }
    }

    let csv = stdout(&coxtr(&["table", "section4", "--format", "csv"]));
    assert!(csv.starts_with("section,system,T,S,method,|W|,-I in W,brute force\n"));
    assert!(csv.contains("section4,E6,5,9,closed_form,51840,no,agrees\n"));
    let md = stdout(&coxtr(&["table", "section3"]));
    assert!(md.contains("| H4 | 20 | 20 | closed_form | 14400 | yes | agrees |"));
}

#[test]
fn classes_report() {
    let rows = json(&["classes", "B2"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows.iter().map(|r| r["size"].as_u64().unwrap()).sum::<u64>(), 8);
    assert_eq!(rows[0]["char_poly"], "t^2 - 2t + 1");
    let csv = stdout(&coxtr(&["classes", "A2", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("class,size,det,char poly,+1,-1"));
}

#[test]
fn verify_lemma_is_deterministic() {
    let a = coxtr(&["verify", "lemma", "--degree", "120"]);
    let b = coxtr(&["verify", "lemma", "--degree", "120"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("| lemma | partition identity | PASS |"));
}

#[test]
fn verify_theorems_seeded() {
    let out = coxtr(&["verify", "theorems", "--seed", "3", "--trials", "10", "--format", "json"]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 10 + 25);
    assert!(rows.iter().all(|r| r["passed"] == true));
}
