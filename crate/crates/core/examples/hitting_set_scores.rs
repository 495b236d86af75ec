//! Score bookkeeping for the hitting-set partition construction. For each
//! small instance the intended chair and adversary strategies are played
//! and the runoff scores are printed.

use ovc::reductions::{hs_identities_hold, simulate_hs_proof_strategies, HittingSetInstance};

pub fn run() -> Vec<String> {
    let cases = [
        (2, vec![vec![1, 2], vec![2]], 1),
        (2, vec![vec![1], vec![2]], 1),
        (2, vec![vec![1], vec![2]], 2),
    ];
    let mut lines = Vec::new();
    for (m, sets, k) in cases {
        let h = HittingSetInstance::new(m, sets, k).unwrap();
        let r = simulate_hs_proof_strategies(&h);
        hs_identities_hold(&h, &r).expect("identities");
        let s = &r.scenarios[0];
        lines.push(format!(
            "m={m} n={} k={k} hitting set {:?}: c={} w={} sum(B')={} winners {:?}",
            h.n(),
            r.hitting_set,
            s.score_c,
            s.score_w,
            s.score_b_sum.map_or("-".to_string(), |x| x.to_string()),
            s.winners.iter().map(|c| c.as_str()).collect::<Vec<_>>()
        ));
    }
    lines
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
