//! A zero-budget deletion game whose value is whether a formula is a
//! tautology.

use ovc::formula::Formula;
use ovc::oracle::taut;
use ovc::reductions::reduce_taut;
use ovc::solver::{solve, SolverConfig};

pub fn run() -> Vec<String> {
    ["(x1|!x1)", "x1", "((x1&x2)|(!x1|!x2))", "((x1|x2)|x3)"]
        .into_iter()
        .map(|text| {
            let f = Formula::parse(text).unwrap();
            let inst = reduce_taut(&f);
            let v = solve(&inst, &SolverConfig::default()).unwrap();
            assert_eq!(v.chair_wins(), taut(&f));
            format!("{text}: tautology={} game={}", taut(&f), v.answer)
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
