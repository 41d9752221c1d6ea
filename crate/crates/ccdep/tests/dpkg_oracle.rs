//! Cross-validation of the version ordering against the system dpkg
//! implementation, where available.
//!
//! Restricted to the shared semantic territory. This crate compares the
//! release dot-segment by dot-segment, while dpkg compares the flat
//! string, so the two diverge when an alphanumeric segment meets a
//! shorter numeric one across a boundary (`1.2a` vs `1.2.0`: dpkg weighs
//! `a` against `.`, the segment model weighs `2a` against `2`). Keeping
//! every generated version at three numeric segments with alpha only in
//! a trailing suffix stays inside the common ground; dpkg also treats a
//! missing revision as `0` while this crate sorts any present revision
//! after an absent one, so generated revisions never reduce to zero.

use std::cmp::Ordering;
use std::process::Command;

use rand::prelude::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ccdep::model::{compare_versions, Version};

fn dpkg_available() -> bool {
    Command::new("dpkg")
        .args(["--compare-versions", "1.0", "lt", "2.0"])
        .status()
        .map(|s| s.success())
        .unwrap_or(false)
}

fn dpkg_cmp(a: &str, b: &str) -> Ordering {
    let relation = |op: &str| {
        Command::new("dpkg")
            .args(["--compare-versions", a, op, b])
            .status()
            .expect("running dpkg")
            .success()
    };
    // strict relations first: random pairs are rarely equal
    if relation("lt") {
        Ordering::Less
    } else if relation("gt") {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

fn sample_versions(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    const SEGMENTS: &[&str] = &["0", "1", "2", "9", "10", "36", "37", "99", "100", "12", "6"];
    const SUFFIXES: &[&str] = &["", "~rc1", "~beta2", "a", "b1", "~~", "p3"];
    const EPOCHS: &[&str] = &["", "", "", "1:", "2:"];
    const REVISIONS: &[&str] = &["", "1", "4", "0ubuntu1", "1+deb12", "2~bpo1"];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v = EPOCHS.choose(rng).unwrap().to_string();
        let body = (0..3)
            .map(|_| *SEGMENTS.choose(rng).unwrap())
            .collect::<Vec<_>>()
            .join(".");
        v.push_str(&body);
        v.push_str(SUFFIXES.choose(rng).unwrap());
        let rev = REVISIONS.choose(rng).unwrap();
        if !rev.is_empty() {
            v.push('-');
            v.push_str(rev);
        }
        out.push(v);
    }
    out
}

#[test]
fn ordering_matches_dpkg_on_common_ground() {
    if !dpkg_available() {
        eprintln!("dpkg not available; skipping oracle comparison");
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1414);
    let versions = sample_versions(&mut rng, 40);
    let mut checked = 0;
    for a in &versions {
        for b in versions.iter().take(10) {
            let (va, vb) = (Version::parse(a).unwrap(), Version::parse(b).unwrap());
            let ours = compare_versions(&va, &vb);
            let theirs = dpkg_cmp(a, b);
            assert_eq!(ours, theirs, "{a} vs {b}: ours {ours:?}, dpkg {theirs:?}");
            checked += 1;
        }
    }
    assert!(checked >= 400, "oracle comparison ran {checked} pairs");
}
