//! Plurality winner sets, including ties and the empty electorate.

use ovc::model::{plurality_scores, plurality_winners, Ballot, CandidateSet, PreferenceOrder};

pub fn run() -> Vec<String> {
    let c: CandidateSet = ["a", "b", "c"].into_iter().map(Into::into).collect();
    let ballots = [
        Ballot::new("v1", PreferenceOrder::parse_chain("a>b>c")),
        Ballot::new("v2", PreferenceOrder::parse_chain("b>a>c")),
        Ballot::new("v3", PreferenceOrder::parse_chain("a>c>b")),
        Ballot::new("v4", PreferenceOrder::parse_chain("b>c>a")),
    ];
    let mut lines = Vec::new();
    for (label, v) in [("all four", &ballots[..]), ("first three", &ballots[..3]), ("nobody", &ballots[..0])] {
        let scores = plurality_scores(&c, v);
        let winners = plurality_winners(&c, v).expect("ballots are total orders over c");
        let names: Vec<&str> = winners.iter().map(|w| w.as_str()).collect();
        let score_text: Vec<String> = scores.iter().map(|(k, s)| format!("{k}:{s}")).collect();
        lines.push(format!("{label}: scores {} winners {{{}}}", score_text.join(" "), names.join(",")));
    }
    lines
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
