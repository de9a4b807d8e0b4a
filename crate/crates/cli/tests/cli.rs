use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("voaf").chain(args.iter().copied());
    let code = voaf_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Partitions of n with an even number of parts, by brute recursion.
fn even_length_partitions(n: u32) -> usize {
    fn rec(rem: u32, max: u32, len: usize) -> usize {
        if rem == 0 {
            return (len % 2 == 0) as usize;
        }
        (1..=max.min(rem)).map(|p| rec(rem - p, p, len + 1)).sum()
    }
    rec(n, n, 0)
}

#[test]
fn char_of_m_plus() {
    let (code, out, _) = run(&["char", "--module", "M+", "--cutoff", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("3 q^{4}"), "{out}");
    let (_, json, _) = run(&["char", "--module", "M+", "--cutoff", "6", "--json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    let coeffs = v["series"]["coeffs"].as_array().unwrap();
    for (d, c) in coeffs.iter().enumerate() {
        assert_eq!(c.as_str().unwrap(), even_length_partitions(d as u32).to_string(), "degree {d}");
    }
}

#[test]
fn fusion_of_three_twisted_modules() {
    let (code, out, _) = run(&["fusion", "--m", "Mtheta+", "--n", "Mtheta+", "--l", "Mtheta+"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "N(Mtheta+, Mtheta+; Mtheta+) = 0");
    let (code, json, _) = run(&["fusion", "--m", "M(s=2)", "--n", "Mtheta+", "--l", "Mtheta+", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["verdict"], 1);
}

#[test]
fn character_suite_passes() {
    let (code, out, _) = run(&["verify", "--suite", "characters"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["fusion", "--m", "nope", "--n", "M+", "--l", "M+"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["char", "--module", "M(s)", "--cutoff", "3"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "everything"]).0, 2);
    let (code, _, err) = run(&["verify", "--suite", "zhu", "--cutoff", "3"]);
    assert_eq!(code, 3);
    assert!(err.contains("--cutoff"));
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn table_round_trips_and_is_deterministic() {
    let (code, a, _) = run(&["table41", "--json"]);
    assert_eq!(code, 0);
    let (_, b, _) = run(&["table41", "--json"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["module"], "Mtheta-");
    assert_eq!(rows[4]["b"], "-45/128");
    assert_eq!(serde_json::to_string_pretty(&v).unwrap().trim(), a.trim());
}

#[test]
fn reduce_prints_coordinates_and_polynomials() {
    let (code, json, _) = run(&["reduce", "--module", "M-", "--expr", "h(-1)^3|0>", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 2);
    assert_eq!(v["contraction"][0]["generator"], "g0");
    assert_eq!(run(&["reduce", "--module", "M-", "--expr", "h(-2)h(-1)|0>"]).0, 2);
}

#[test]
fn fusion_table_csv() {
    let (code, out, _) = run(&["fusion-table", "--lambda-squares", "2"]);
    assert_eq!(code, 0);
    // M+, M-, Mtheta+, Mtheta-, M(s=2), M(s=8)
    assert_eq!(out.lines().count(), 1 + 6 * 6 * 6);
    assert!(out.lines().any(|l| l.starts_with("M(s=2),M(s=2),M(s=8),1")));
}

#[test]
fn cutoff_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_voaf"))
        .args(["char", "--module", "Mtheta", "--json"])
        .env("VOAF_CUTOFF", "3/2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["series"]["cutoff"], "3/2");
    let dims: Vec<&str> = v["series"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(dims, ["1", "1", "1", "2"]);
}
