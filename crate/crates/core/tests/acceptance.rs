//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! tolerance and timing; sub-checks that did not pass are listed below it.
//!
//! Criteria listed in KNOWN_DISCREPANCIES compare against printed values
//! that the recomputation contradicts. They still print FAIL, but only the
//! expected set of failing sub-checks is asserted for them.

use std::time::{Duration, Instant};

use voaf::verify::{
    character_checks, cmn_check, contravariance_checks, default_lambda_squares, fusion_checks, heisenberg_checks, phi_checks,
    printed_checks, relation_membership_check, rewrite_checks, singular_vector_checks, step3_checks, table41_checks,
    theta_checks, twisted_leading_checks, virasoro_relation_checks, zhu_ideal_checks, Check,
};
use voaf::exact::ri;

/// (criterion, sub-checks expected not to pass)
const KNOWN_DISCREPANCIES: &[(u32, &[&str])] = &[
    (4, &["M-: f of the R4 row", "M(s=2): f1, f2 of the R4 row", "M(s=1/2): f1, f2 of the R4 row"]),
    (5, &["beta difference ~ (t-u)(3s+3t+3u-10)"]),
];

struct Outcome {
    id: u32,
    passed: bool,
    in_time: bool,
    failing: Vec<String>,
}

fn run(id: u32, title: &str, limit_s: u64, tolerance: &str, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let t = Instant::now();
    let checks = f();
    let dt = t.elapsed();
    let failing: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let in_time = dt < Duration::from_secs(limit_s);
    let passed = failing.is_empty() && in_time && !checks.is_empty();
    println!(
        "[{}] criterion {id}: {title} ({} checks, {} not passing; tolerance {tolerance}; {:.2} s, limit {limit_s} s)",
        if passed { "PASS" } else { "FAIL" },
        checks.len(),
        failing.len(),
        dt.as_secs_f64(),
    );
    for c in &failing {
        println!("      {c}");
    }
    if !in_time {
        println!("      time limit exceeded");
    }
    Outcome { id, passed, in_time, failing: failing.iter().map(|c| c.name.clone()).collect() }
}

fn select(checks: Vec<Check>, prefixes: &[&str]) -> Vec<Check> {
    checks.into_iter().filter(|c| prefixes.iter().any(|p| c.name.starts_with(p))).collect()
}

#[test]
fn acceptance() {
    let mut out = Vec::new();

    out.push(run(1, "top-level o(w), o(J) on all five modules", 30, "exact", || table41_checks().unwrap()));

    out.push(run(2, "ideal generators vanish at every top level", 1, "exact", || zhu_ideal_checks().unwrap()));

    out.push(run(3, "J - 4w*w - 17w + 9h(-3)h(-1)1 in O(M(1)+) at W = 6", 60, "exact certificate", || {
        vec![relation_membership_check(6).unwrap()]
    }));

    out.push(run(4, "recomputed constraint polynomials against the printed ones", 300, "exact up to a reported scalar", || {
        printed_checks().unwrap()
    }));

    out.push(run(5, "generic M(1, lam) identity suite", 300, "exact", || {
        select(
            step3_checks().unwrap(),
            &[
                "M- sum identity (9/16)(s-t)^2(3s+3t-2)",
                "p(t,u) has the factor (8u-1)(8u-9)",
                "beta difference",
                "p(t,u) nonzero at the roots",
            ],
        )
    }));

    out.push(run(6, "fusion table over the 16-label grid and its symmetry", 600, "exact", || {
        fusion_checks(&default_lambda_squares()).unwrap()
    }));

    out.push(run(7, "character identities and Virasoro decompositions", 60, "coefficientwise to q-order 20", || {
        character_checks(&ri(20)).unwrap()
    }));

    out.push(run(8, "singular vectors of weight 1, 1/4, 9/4 vanish", 10, "exact", singular_vector_checks));

    out.push(run(9, "structural properties", 300, "exact", || {
        let mut c = heisenberg_checks();
        c.extend(virasoro_relation_checks());
        c.extend(theta_checks());
        c.extend(contravariance_checks());
        c.extend(phi_checks().unwrap());
        c.extend(rewrite_checks().unwrap());
        c.extend(twisted_leading_checks().unwrap());
        c.push(cmn_check(8));
        c
    }));

    let mut unexpected = Vec::new();
    for o in &out {
        match KNOWN_DISCREPANCIES.iter().find(|(id, _)| *id == o.id) {
            Some((_, names)) => {
                let mut got = o.failing.clone();
                let mut want: Vec<String> = names.iter().map(|s| s.to_string()).collect();
                got.sort();
                want.sort();
                if got != want || !o.in_time {
                    unexpected.push(format!("criterion {}: failing {:?}, expected {:?}", o.id, got, want));
                }
            }
            None if !o.passed => unexpected.push(format!("criterion {}", o.id)),
            None => {}
        }
    }
    assert!(unexpected.is_empty(), "unexpected acceptance failures: {unexpected:?}");
}
