//! With a single candidate the chair can still matter: partitioning voters
//! online under the one-candidate system decides satisfiability.

use ovc::formula::Formula;
use ovc::oracle::sat_satisfiable;
use ovc::reductions::reduce_sat_1cand;
use ovc::solver::{solve, SolverConfig};

pub fn run() -> Vec<String> {
    ["x1", "(x1&!x1)", "((x1|x2)&(!x1|x3))", "((x1&!x2)&(x2|!x1))"]
        .into_iter()
        .map(|text| {
            let f = Formula::parse(text).unwrap();
            let inst = reduce_sat_1cand(&f).unwrap();
            let v = solve(&inst, &SolverConfig::default()).unwrap();
            assert_eq!(v.chair_wins(), sat_satisfiable(&f));
            format!("{text}: satisfiable={} game={} voters={}", sat_satisfiable(&f), v.answer, inst.future.len() + 1)
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
