//! Fixtures shared by the acceptance suite.

use std::sync::Arc;

use skorokhod_core::rational::Q;
use skorokhod_core::{std_simplex, FinSSet, SimplexInstance};

/// Prints the one-line verdict for criterion `n`, plus the failure count and
/// up to five sample failures. Returns whether it passed.
pub fn report(n: usize, failures: &[String], detail: &str) -> bool {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} — {detail}");
    if !failures.is_empty() {
        println!("  {} failures, e.g.", failures.len());
    }
    for f in failures.iter().take(5) {
        println!("  {f}");
    }
    failures.is_empty()
}

/// The standard simplex with `n` vertices.
pub fn delta(n: usize) -> Arc<FinSSet> {
    Arc::new(std_simplex(n).unwrap())
}

/// A triangle whose first and last vertices are identified: the long edge
/// becomes a loop.
pub fn pinched_triangle() -> Arc<FinSSet> {
    let v = |s: &str| SimplexInstance::nondegenerate(s, 1);
    let e = |s: &str| SimplexInstance::nondegenerate(s, 2);
    let mut x = FinSSet::new(2);
    x.add_vertex("a").unwrap();
    x.add_vertex("b").unwrap();
    x.add_simplex("e12", 1, vec![v("b"), v("a")]).unwrap();
    x.add_simplex("e23", 1, vec![v("a"), v("b")]).unwrap();
    x.add_simplex("e13", 1, vec![v("a"), v("a")]).unwrap();
    x.add_simplex("t", 2, vec![e("e23"), e("e13"), e("e12")]).unwrap();
    assert!(x.validate().is_empty());
    Arc::new(x)
}

/// All nondecreasing sequences of length `len` drawn from `choices`
/// (assumed sorted).
pub fn nondecreasing(len: usize, choices: &[Q]) -> Vec<Vec<Q>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, c) in choices.iter().enumerate() {
        for mut rest in nondecreasing(len - 1, &choices[i..]) {
            rest.insert(0, c.clone());
            out.push(rest);
        }
    }
    out
}
