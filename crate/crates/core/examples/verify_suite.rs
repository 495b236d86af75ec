//! Running an equivalence suite as a library call and reading its report.

use ovc::verify::{run_suite, Suite, VerifyOptions};

pub fn run() -> Vec<String> {
    let mut lines = Vec::new();
    for suite in [Suite::Sat1c, Suite::Taut, Suite::HsScores] {
        lines.push(run_suite(suite, &VerifyOptions::default()).summary());
    }
    let sample = VerifyOptions { seed: 1, limit: Some(500) };
    lines.push(run_suite(Suite::PluralityFastVsExact, &sample).summary());
    lines
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
