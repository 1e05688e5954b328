use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use splitstar::cli::{run, CoverDocument};
use splitstar::permutation::{factorial, Permutation};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_splitstar"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn inproc(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["splitstar"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn dcc_examples() {
    let (code, out, _) = bin(&["dcc", "--n", "4", "--u", "1234", "--v", "2134", "--len", "3"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let c1: Vec<&str> = doc["c1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(c1, ["1234", "3124", "2314"]);
    for key in ["n", "u", "v", "ell", "c1", "c2", "case_trace"] {
        assert!(doc.get(key).is_some(), "{key}");
    }

    let (code, _, err) = bin(&["dcc", "--n", "4", "--u", "1234", "--v", "1234", "--len", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("u and v must differ"));

    let (code, out, _) = bin(&["dcc", "--n", "5", "--u", "12345", "--v", "21345", "--len", "60"]);
    assert_eq!(code, 0);
    let doc: CoverDocument = serde_json::from_str(&out).unwrap();
    assert_eq!((doc.c1.len(), doc.c2.len()), (60, 60));

    for bad in [
        vec!["dcc", "--n", "4", "--u", "1234", "--v", "2134", "--len", "13"],
        vec!["dcc", "--n", "4", "--u", "12345", "--v", "2134", "--len", "3"],
        vec!["dcc", "--n", "4", "--u", "1234"],
        vec!["frobnicate"],
    ] {
        assert_eq!(inproc(&bad).0, 2, "{bad:?}");
    }
    let (code, out, _) = inproc(&[
        "dcc", "--n", "4", "--u", "1234", "--v", "2134", "--len", "5", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("c1 (5): 1234"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = bin(&["dcc", "--n", "5", "--u", "31524", "--v", "12345", "--len", "17"]);
    let good = dir.path().join("good.json");
    std::fs::write(&good, &out).unwrap();
    assert_eq!(bin(&["verify", good.to_str().unwrap()]).0, 0);

    let row = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/printed_tables.txt")).unwrap();
    let line = row.lines().next().unwrap();
    let parts: Vec<&str> = line.split('|').collect();
    let doc = serde_json::json!({
        "n": 4, "u": "1234", "v": "2134", "ell": 3,
        "c1": parts[1].split_whitespace().collect::<Vec<_>>(),
        "c2": parts[2].split_whitespace().collect::<Vec<_>>(),
    });
    let printed = dir.path().join("printed.json");
    std::fs::write(&printed, doc.to_string()).unwrap();
    let (code, out, _) = bin(&["verify", printed.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert!(report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["code"] == "RepeatedVertex" && v["detail"] == "2413"));

    let trunc = dir.path().join("trunc.json");
    std::fs::write(&trunc, &std::fs::read_to_string(&good).unwrap()[..40]).unwrap();
    assert_eq!(bin(&["verify", trunc.to_str().unwrap()]).0, 2);
    assert_eq!(bin(&["verify", dir.path().join("missing.json").to_str().unwrap()]).0, 2);
}

#[test]
fn round_trip_random_instances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 4..=6usize {
        let total = factorial(n);
        for _ in 0..100 {
            let u = Permutation::unrank(rng.gen_range(0..total), n).unwrap();
            let v = Permutation::unrank(rng.gen_range(0..total), n).unwrap();
            if u == v {
                continue;
            }
            let ell = rng.gen_range(3..=total as usize / 2).to_string();
            let (ns, us, vs) = (n.to_string(), u.to_string(), v.to_string());
            let (code, out, _) = inproc(&["dcc", "--n", &ns, "--u", &us, "--v", &vs, "--len", &ell]);
            assert_eq!(code, 0);
            std::fs::write(&path, out).unwrap();
            assert_eq!(inproc(&["verify", p]).0, 0, "{u} {v} {ell}");
        }
    }
}

#[test]
fn sweep_and_tables() {
    let (code, out, _) = bin(&["sweep", "--n", "4"]);
    assert_eq!((code, out.as_str()), (0, "230/230 pass\n"));
    let (code, out, _) = bin(&["sweep", "--n", "7", "--sample", "50", "--seed", "1", "--jobs", "1"]);
    assert_eq!((code, out.as_str()), (0, "50/50 pass\n"));
    assert_eq!(inproc(&["sweep", "--n", "3"]).0, 2);
    assert_eq!(inproc(&["sweep", "--n", "5", "--jobs", "0"]).0, 2);

    let (code, out, _) = bin(&["tables", "--check"]);
    assert_eq!(code, 0);
    assert!(out.contains("table 1 ell=3: flagged"));
    assert!(out.contains("table 2 ell=3: flagged"));
    assert!(out.lines().any(|l| l.ends_with("pass (as printed)")));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let (code, _, err) = bin(&["tables", "--check", "--data", empty.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("configuration error"));
}

#[test]
fn export_formats() {
    let (code, out, _) = bin(&["export", "--n", "3", "--format", "edgelist"]);
    assert_eq!((code, out.lines().count()), (0, 9));
    let (code, out, _) = bin(&["export", "--n", "4", "--format", "edgelist"]);
    assert_eq!((code, out.lines().count()), (0, 60));
    let (code, out, _) = inproc(&["export", "--n", "4", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph S4_2 {"));
    assert_eq!(out.matches(" -- ").count(), 60);
    assert_eq!(bin(&["export", "--n", "6"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["dcc", "--n", "6", "--u", "123456", "--v", "654321", "--len", "200"],
        vec!["sweep", "--n", "6", "--sample", "40", "--seed", "3"],
        vec!["export", "--n", "5", "--format", "dot"],
        vec!["tables", "--check"],
    ] {
        let a = bin(&args);
        let b = bin(&args);
        assert_eq!((a.0, &a.1), (b.0, &b.1), "{args:?}");
    }
}
