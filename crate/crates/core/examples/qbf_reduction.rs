//! Quantified formulas turned into control instances for all six families.
//! The brute-force quantifier evaluation must match the game's value.

use ovc::formula::Formula;
use ovc::oracle::eval_qbf_prime;
use ovc::reductions::{reduce_qbf, QbfFamily, QbfPrimeInstance};
use ovc::solver::{solve, SolverConfig};

pub fn run() -> Vec<String> {
    let mut lines = Vec::new();
    for text in ["(x1|x2)", "(x1&x2)", "((x1|x2)&(!x1|!x2))", "(x3|(x1&x4))"] {
        let q = QbfPrimeInstance::new(Formula::parse(text).unwrap()).unwrap();
        let truth = eval_qbf_prime(&q);
        let mut row = format!("{text:<22} true={truth:<5}");
        for family in QbfFamily::ALL {
            let inst = reduce_qbf(&q, family);
            let v = solve(&inst, &SolverConfig::default()).unwrap();
            assert_eq!(v.chair_wins(), truth, "{family} on {text}");
            row.push_str(&format!(" {family}:{}v/{}", inst.future.len() + 1, v.answer));
        }
        lines.push(row);
    }
    lines
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
