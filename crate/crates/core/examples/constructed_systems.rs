//! The name-reading election systems used by the hardness constructions.
//! Candidate names carry a formula and voter names carry variable indices.

use ovc::model::{Ballot, CandidateSet, ElectionSystem, PreferenceOrder};
use ovc::systems::SystemId;

fn show(system: SystemId, c: &[&str], ballots: &[(&str, &str)]) -> String {
    let cs: CandidateSet = c.iter().map(|&x| x.into()).collect();
    let v: Vec<Ballot> = ballots
        .iter()
        .map(|(name, chain)| Ballot::new(*name, PreferenceOrder::parse_chain(chain)))
        .collect();
    let winners = system.winners(&cs, &v);
    let w: Vec<&str> = winners.iter().map(|x| x.as_str()).collect();
    let d = system.descriptor();
    format!(
        "{system} (anonymous {}, top-only {}): {:?} -> {{{}}}",
        d.anonymous,
        d.top_only,
        ballots,
        w.join(",")
    )
}

pub fn run() -> Vec<String> {
    vec![
        // voter 0101 fixes x1 = 1; voter 1010 sets x2 by ranking the padded
        // name above the formula
        show(SystemId::QbfDv, &["(x1&x2)", "(x1&x2)0"], &[("0101", "(x1&x2)>(x1&x2)0"), ("1010", "(x1&x2)0>(x1&x2)")]),
        show(SystemId::QbfDv, &["(x1&x2)", "(x1&x2)0"], &[("0101", "(x1&x2)>(x1&x2)0"), ("1010", "(x1&x2)>(x1&x2)0")]),
        show(SystemId::QbfDvFlip, &["(x1&x2)", "(x1&x2)0"], &[("0100", "(x1&x2)>(x1&x2)0"), ("1010", "(x1&x2)>(x1&x2)0")]),
        show(SystemId::Taut, &["(x1|!x1)", "(x1|!x1)0"], &[("0", "(x1|!x1)>(x1|!x1)0")]),
        show(SystemId::Taut, &["x1", "x10"], &[("0", "x1>x10")]),
        show(SystemId::RoundOne, &["RoundOne", "x2"], &[("Marker", "x2>RoundOne"), ("v01yes", "x2>RoundOne"), ("v10", "RoundOne>x2")]),
        // the last name characters give an assignment; satisfying it (or its
        // complement) makes everyone lose
        show(SystemId::Sat1c, &["x1"], &[("1", "x1")]),
        show(SystemId::Sat1c, &["(x1&!x1)"], &[("1", "(x1&!x1)")]),
    ]
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
