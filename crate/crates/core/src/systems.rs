//! Election systems with polynomial-time winner problems whose online
//! control problems are hard: each one reads a boolean formula out of a
//! candidate name and an assignment out of voter names and ballots.
//!
//! All rules are total. Malformed inputs fall into a designated case of
//! the rule instead of producing an error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::formula::{Assignment, Formula};
use crate::model::{plurality_winners_unchecked, Ballot, CandidateName, CandidateSet, ElectionSystem, VoterName};

/// Reserved candidate name of the partition system.
pub const ROUND_ONE: &str = "RoundOne";
/// Reserved voter name of the partition system.
pub const MARKER: &str = "Marker";

/// Selects the destructive twin of a system.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SystemVariant {
    pub flip: bool,
}

impl SystemVariant {
    pub const PLAIN: SystemVariant = SystemVariant { flip: false };
    pub const FLIP: SystemVariant = SystemVariant { flip: true };
}

/// Every election system known by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SystemId {
    #[serde(rename = "plurality")]
    Plurality,
    /// Formula-by-voter-names system for deleting/adding voters.
    #[serde(rename = "qbf-dv")]
    QbfDv,
    #[serde(rename = "qbf-dv-flip")]
    QbfDvFlip,
    /// Tautology-testing system for bounded deletion budgets.
    #[serde(rename = "taut")]
    Taut,
    /// Two-candidate partition system with the reserved `RoundOne` candidate.
    #[serde(rename = "roundone")]
    RoundOne,
    #[serde(rename = "roundone-flip")]
    RoundOneFlip,
    /// One-candidate partition system (satisfiability by twin assignments).
    #[serde(rename = "sat-1c")]
    Sat1c,
}

impl SystemId {
    pub const ALL: [SystemId; 7] = [
        SystemId::Plurality,
        SystemId::QbfDv,
        SystemId::QbfDvFlip,
        SystemId::Taut,
        SystemId::RoundOne,
        SystemId::RoundOneFlip,
        SystemId::Sat1c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Plurality => "plurality",
            SystemId::QbfDv => "qbf-dv",
            SystemId::QbfDvFlip => "qbf-dv-flip",
            SystemId::Taut => "taut",
            SystemId::RoundOne => "roundone",
            SystemId::RoundOneFlip => "roundone-flip",
            SystemId::Sat1c => "sat-1c",
        }
    }

    pub fn descriptor(self) -> ElectionSystemDescriptor {
        let plurality = self == SystemId::Plurality;
        ElectionSystemDescriptor {
            id: self,
            anonymous: plurality,
            top_only: plurality,
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown election system {s:?}"))
    }
}

/// Name plus declared structural properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElectionSystemDescriptor {
    pub id: SystemId,
    pub anonymous: bool,
    pub top_only: bool,
}

impl ElectionSystem for SystemId {
    fn id(&self) -> &str {
        self.name()
    }

    fn anonymous(&self) -> bool {
        self.descriptor().anonymous
    }

    fn top_only(&self) -> bool {
        self.descriptor().top_only
    }

    fn winners(&self, candidates: &CandidateSet, ballots: &[Ballot]) -> CandidateSet {
        match self {
            SystemId::Plurality => plurality_winners_unchecked(candidates, ballots),
            SystemId::QbfDv => winners_qbf_dv(candidates, ballots, SystemVariant::PLAIN),
            SystemId::QbfDvFlip => winners_qbf_dv(candidates, ballots, SystemVariant::FLIP),
            SystemId::Taut => winners_taut(candidates, ballots),
            SystemId::RoundOne => winners_roundone(candidates, ballots, SystemVariant::PLAIN),
            SystemId::RoundOneFlip => winners_roundone(candidates, ballots, SystemVariant::FLIP),
            SystemId::Sat1c => winners_sat_1c(candidates, ballots),
        }
    }
}

/// Number of binary digits of `n` (at least 1).
pub fn bit_length(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()).max(1) as usize
}

/// `i` in binary, zero-padded to `width` digits.
pub fn pad_binary(i: usize, width: usize) -> String {
    format!("{i:0width$b}")
}

/// The role a voter plays in the partition system's roster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RosterSlot {
    Yes,
    No,
    Even,
}

/// Roster name for variable `i` of a formula with `2ℓ = two_ell`
/// variables. Subscripts are binary, padded to the width of `two_ell`.
pub fn roundone_voter_name(i: usize, two_ell: usize, slot: RosterSlot) -> String {
    let suffix = match slot {
        RosterSlot::Yes => "yes",
        RosterSlot::No => "no",
        RosterSlot::Even => "",
    };
    format!("v{}{}", pad_binary(i, bit_length(two_ell)), suffix)
}

fn everyone(candidates: &CandidateSet, wins: bool) -> CandidateSet {
    if wins {
        candidates.clone()
    } else {
        CandidateSet::new()
    }
}

/// Parses `name` as a formula over `x1..x2ℓ` with `x2ℓ` present; returns
/// the formula and `2ℓ`.
fn even_prefix_formula(name: &str) -> Option<(Formula, usize)> {
    let f = Formula::parse(name).ok()?;
    let m = f.max_var() as usize;
    (m >= 2 && m.is_multiple_of(2)).then_some((f, m))
}

fn distinct_sorted_voters(ballots: &[Ballot]) -> Option<Vec<&Ballot>> {
    let mut sorted: Vec<&Ballot> = ballots.iter().collect();
    sorted.sort_by(|a, b| a.voter.cmp(&b.voter));
    if sorted.windows(2).any(|w| w[0].voter == w[1].voter) {
        return None;
    }
    Some(sorted)
}

/// The even-variable ballot rule: true iff the least preferred candidate's
/// name is lexicographically less than the next-to-least preferred one's.
fn bottom_pair_ascending(b: &Ballot) -> Option<bool> {
    let o = b.order.as_slice();
    if o.len() < 2 {
        return None;
    }
    Some(o[o.len() - 1] < o[o.len() - 2])
}

fn last_two(name: &VoterName) -> Option<&[u8]> {
    let bytes = name.as_str().as_bytes();
    (bytes.len() >= 2).then(|| &bytes[bytes.len() - 2..])
}

fn qbf_dv_everyone_wins(candidates: &CandidateSet, ballots: &[Ballot]) -> bool {
    let Some(least) = candidates.first() else {
        return false;
    };
    let Some((phi, two_ell)) = even_prefix_formula(least.as_str()) else {
        return false;
    };
    let Some(sorted) = distinct_sorted_voters(ballots) else {
        return false;
    };
    if sorted.len() < two_ell || candidates.len() < 2 {
        return false;
    }
    let mut bits = Vec::with_capacity(two_ell);
    for (idx, b) in sorted.iter().take(two_ell).enumerate() {
        let i = idx + 1;
        let Some(suffix) = last_two(&b.voter) else {
            return false;
        };
        if i % 2 == 1 {
            match suffix {
                b"00" => bits.push(false),
                b"01" => bits.push(true),
                _ => return false,
            }
        } else {
            if suffix != b"10" && suffix != b"11" {
                return false;
            }
            match bottom_pair_ascending(b) {
                Some(v) => bits.push(v),
                None => return false,
            }
        }
    }
    phi.eval(&Assignment::new(bits)).unwrap_or(false)
}

/// Formula-by-voter-names system: odd variables are read from the last two
/// characters of the lexicographically sorted voter names, even variables
/// from the bottom two positions of the corresponding ballots. Voters past
/// position `2ℓ` are ignored. With `flip`, win and lose are exchanged.
pub fn winners_qbf_dv(candidates: &CandidateSet, ballots: &[Ballot], variant: SystemVariant) -> CandidateSet {
    everyone(candidates, qbf_dv_everyone_wins(candidates, ballots) ^ variant.flip)
}

fn taut_everyone_wins(candidates: &CandidateSet, ballots: &[Ballot]) -> bool {
    let Some(least) = candidates.first() else {
        return false;
    };
    let Ok(phi) = Formula::parse(least.as_str()) else {
        return false;
    };
    let n = phi.max_var() as usize;
    if candidates.len() < 2 {
        return false;
    }
    let Some(sorted) = distinct_sorted_voters(ballots) else {
        return false;
    };
    if sorted.len() < n {
        return false;
    }
    // The testers are the last n voters in name order; anyone sorting
    // before them (such as a current voter who cannot be deleted) is inert.
    let mut bits = Vec::with_capacity(n);
    for b in &sorted[sorted.len() - n..] {
        match bottom_pair_ascending(b) {
            Some(v) => bits.push(v),
            None => return false,
        }
    }
    phi.eval(&Assignment::new(bits)).unwrap_or(false)
}

/// Tautology-testing system: the least candidate name is a formula over
/// `x1..xn`; the last `n` voters in name order each set one variable by
/// the even-variable ballot rule. Everyone wins iff the formula holds.
pub fn winners_taut(candidates: &CandidateSet, ballots: &[Ballot]) -> CandidateSet {
    everyone(candidates, taut_everyone_wins(candidates, ballots))
}

enum RoundOneCase {
    NoMarker,
    Satisfied(CandidateName),
    Unsatisfied,
    Malformed,
    NoRoundOne,
}

fn roundone_case(candidates: &CandidateSet, ballots: &[Ballot]) -> RoundOneCase {
    let round_one = CandidateName::from(ROUND_ONE);
    if !candidates.contains(&round_one) {
        return RoundOneCase::NoRoundOne;
    }
    if !ballots.iter().any(|b| b.voter.as_str() == MARKER) {
        return RoundOneCase::NoMarker;
    }
    let Some(phi_cand) = candidates.iter().find(|c| **c != round_one) else {
        return RoundOneCase::Malformed;
    };
    let Some((phi, two_ell)) = even_prefix_formula(phi_cand.as_str()) else {
        return RoundOneCase::Malformed;
    };
    if candidates.len() != 2 {
        return RoundOneCase::Malformed;
    }
    if ballots.len() != two_ell + 1 {
        return RoundOneCase::Malformed;
    }

    let mut expected: BTreeMap<String, (usize, RosterSlot)> = BTreeMap::new();
    for i in 1..=two_ell {
        if i % 2 == 1 {
            expected.insert(roundone_voter_name(i, two_ell, RosterSlot::Yes), (i, RosterSlot::Yes));
            expected.insert(roundone_voter_name(i, two_ell, RosterSlot::No), (i, RosterSlot::No));
        } else {
            expected.insert(roundone_voter_name(i, two_ell, RosterSlot::Even), (i, RosterSlot::Even));
        }
    }

    let mut bits: Vec<Option<bool>> = vec![None; two_ell];
    let mut markers = 0;
    let mut seen = BTreeSet::new();
    for b in ballots {
        let name = b.voter.as_str();
        if !seen.insert(name) {
            return RoundOneCase::Malformed;
        }
        if name == MARKER {
            markers += 1;
            continue;
        }
        let Some(&(i, slot)) = expected.get(name) else {
            return RoundOneCase::Malformed;
        };
        let value = match slot {
            RosterSlot::Yes => true,
            RosterSlot::No => false,
            RosterSlot::Even => b.order.top() == Some(&round_one),
        };
        if bits[i - 1].replace(value).is_some() {
            // both the yes and the no voter of one odd variable
            return RoundOneCase::Malformed;
        }
    }
    if markers != 1 || bits.iter().any(Option::is_none) {
        return RoundOneCase::Malformed;
    }
    let assignment = Assignment::new(bits.into_iter().map(Option::unwrap).collect());
    if phi.eval(&assignment).unwrap_or(false) {
        RoundOneCase::Satisfied(phi_cand.clone())
    } else {
        RoundOneCase::Unsatisfied
    }
}

/// Partition system with the reserved candidate `RoundOne` and voter
/// `Marker`.
///
/// Plain: no `RoundOne` means everyone wins; `RoundOne` without `Marker`
/// means everyone loses; otherwise the roster names assign the formula's
/// variables and the formula candidate alone wins on satisfaction, with
/// `RoundOne` alone winning on falsity or any syntactic failure.
///
/// Flipped: satisfaction makes everyone lose, falsity or any syntactic
/// failure makes everyone win, no `RoundOne` makes everyone lose, and the
/// no-`Marker` case is unchanged.
pub fn winners_roundone(candidates: &CandidateSet, ballots: &[Ballot], variant: SystemVariant) -> CandidateSet {
    let round_one = CandidateName::from(ROUND_ONE);
    match (roundone_case(candidates, ballots), variant.flip) {
        (RoundOneCase::NoRoundOne, false) => candidates.clone(),
        (RoundOneCase::NoRoundOne, true) => CandidateSet::new(),
        (RoundOneCase::NoMarker, _) => CandidateSet::new(),
        (RoundOneCase::Satisfied(phi), false) => CandidateSet::from([phi]),
        (RoundOneCase::Satisfied(_), true) => CandidateSet::new(),
        (RoundOneCase::Unsatisfied | RoundOneCase::Malformed, false) => CandidateSet::from([round_one]),
        (RoundOneCase::Unsatisfied | RoundOneCase::Malformed, true) => candidates.clone(),
    }
}

fn sat_1c_everyone_loses(candidates: &CandidateSet, ballots: &[Ballot]) -> bool {
    if candidates.len() != 1 {
        return false;
    }
    let Ok(phi) = Formula::parse(candidates.first().unwrap().as_str()) else {
        return false;
    };
    let k = phi.max_var() as usize;
    if ballots.len() != k {
        return false;
    }
    let Some(sorted) = distinct_sorted_voters(ballots) else {
        return false;
    };
    let mut bits = Vec::with_capacity(k);
    for b in sorted {
        match b.voter.as_str().as_bytes().last() {
            Some(b'1') => bits.push(true),
            Some(b'0') => bits.push(false),
            _ => return false,
        }
    }
    let a = Assignment::new(bits);
    phi.eval(&a).unwrap_or(false) || phi.eval(&a.complement()).unwrap_or(false)
}

/// One-candidate partition system: with two or more candidates everyone
/// wins. With one candidate whose name is a formula over `k` variables and
/// exactly `k` distinct voters, the last characters of the sorted voter
/// names form an assignment; if it or its complement satisfies the formula
/// everyone loses. Everything else: everyone wins.
pub fn winners_sat_1c(candidates: &CandidateSet, ballots: &[Ballot]) -> CandidateSet {
    everyone(candidates, !sat_1c_everyone_loses(candidates, ballots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{set, PreferenceOrder};
    use proptest::prelude::*;

    fn b(voter: &str, order: &[&str]) -> Ballot {
        Ballot::new(voter, PreferenceOrder::new(order.iter().map(|c| CandidateName::from(*c)).collect()))
    }

    // Straight-line re-statement of the six-step formula-by-names rule,
    // used to re-check the hand traces below.
    fn qbf_dv_oracle(c: &[&str], voters: &[(&str, &[&str])]) -> bool {
        let mut names: Vec<&str> = c.to_vec();
        names.sort();
        let Ok(phi) = Formula::parse(names[0]) else { return false };
        let m = phi.max_var() as usize;
        if !m.is_multiple_of(2) {
            return false;
        }
        let mut vs: Vec<(&str, &[&str])> = voters.to_vec();
        vs.sort_by(|a, b| a.0.cmp(b.0));
        for w in vs.windows(2) {
            if w[0].0 == w[1].0 {
                return false;
            }
        }
        if vs.len() < m || c.len() < 2 {
            return false;
        }
        let mut bits = vec![];
        for i in 1..=m {
            let (name, order) = vs[i - 1];
            let tail = &name[name.len() - 2..];
            if i % 2 == 1 {
                if tail != "00" && tail != "01" {
                    return false;
                }
                bits.push(tail == "01");
            } else {
                if tail != "10" && tail != "11" {
                    return false;
                }
                let n = order.len();
                bits.push(order[n - 1] < order[n - 2]);
            }
        }
        phi.eval(&Assignment::new(bits)).unwrap()
    }

    #[test]
    fn qbf_dv_examples() {
        let c = set(&["(x1&x2)", "(x1&x2)0"]);
        let ab: &[&str] = &["(x1&x2)", "(x1&x2)0"];
        let ba: &[&str] = &["(x1&x2)0", "(x1&x2)"];
        let v = vec![b("0100", ab), b("1010", ab)];
        assert!(!qbf_dv_oracle(&["(x1&x2)", "(x1&x2)0"], &[("0100", ab), ("1010", ab)]));
        assert!(winners_qbf_dv(&c, &v, SystemVariant::PLAIN).is_empty());
        assert_eq!(winners_qbf_dv(&c, &v, SystemVariant::FLIP), c);

        let v = vec![b("0101", ab), b("1010", ba)];
        assert!(qbf_dv_oracle(&["(x1&x2)", "(x1&x2)0"], &[("0101", ab), ("1010", ba)]));
        assert_eq!(winners_qbf_dv(&c, &v, SystemVariant::PLAIN), c);

        let single = set(&["x2"]);
        assert!(winners_qbf_dv(&single, &[b("0101", &["x2"]), b("1010", &["x2"])], SystemVariant::PLAIN).is_empty());
    }

    #[test]
    fn qbf_dv_syntax_failures() {
        let ab: &[&str] = &["x2", "x20"];
        let good = vec![b("0101", ab), b("1010", ab)];
        // odd maximum index
        let c = set(&["x1", "x10"]);
        assert!(winners_qbf_dv(&c, &good, SystemVariant::PLAIN).is_empty());
        // duplicate voter names
        let c = set(&["x2", "x20"]);
        let dup = vec![b("0101", ab), b("0101", ab)];
        assert!(winners_qbf_dv(&c, &dup, SystemVariant::PLAIN).is_empty());
        assert_eq!(winners_qbf_dv(&c, &dup, SystemVariant::FLIP), c);
        // bad suffix at an even position
        let bad = vec![b("0101", ab), b("1001", ab)];
        assert!(winners_qbf_dv(&c, &bad, SystemVariant::PLAIN).is_empty());
        // too short name
        let short = vec![b("1", ab), b("1010", ab)];
        assert!(winners_qbf_dv(&c, &short, SystemVariant::PLAIN).is_empty());
        // too few voters
        assert!(winners_qbf_dv(&c, &good[..1], SystemVariant::PLAIN).is_empty());
        // Φ = x2 with x2 := (x20 < x2) = false
        assert!(winners_qbf_dv(&c, &good, SystemVariant::PLAIN).is_empty());
        let ba: &[&str] = &["x20", "x2"];
        assert_eq!(winners_qbf_dv(&c, &[b("0101", ab), b("1010", ba)], SystemVariant::PLAIN), c);
        // extra voters beyond 2ℓ are ignored
        let extra = vec![b("0101", ab), b("1010", ba), b("1111", ab)];
        assert_eq!(winners_qbf_dv(&c, &extra, SystemVariant::PLAIN), c);
    }

    #[test]
    fn taut_examples() {
        let c = set(&["(x1|!x1)", "(x1|!x1)0"]);
        for order in [["(x1|!x1)", "(x1|!x1)0"], ["(x1|!x1)0", "(x1|!x1)"]] {
            assert_eq!(winners_taut(&c, &[b("0", &order)]), c);
        }
        let c = set(&["x1", "x10"]);
        assert!(winners_taut(&c, &[b("0", &["x1", "x10"])]).is_empty());
        assert_eq!(winners_taut(&c, &[b("0", &["x10", "x1"])]), c);
        let c = set(&["a", "b"]);
        assert!(winners_taut(&c, &[b("0", &["a", "b"])]).is_empty());
    }

    #[test]
    fn taut_reads_last_voters() {
        let c = set(&["x1", "x10"]);
        // voter "0" sorts first and is ignored; "1" sets x1 = true
        let v = vec![b("0", &["x1", "x10"]), b("1", &["x10", "x1"])];
        assert_eq!(winners_taut(&c, &v), c);
        let v = vec![b("0", &["x10", "x1"]), b("1", &["x1", "x10"])];
        assert!(winners_taut(&c, &v).is_empty());
    }

    #[test]
    fn roundone_examples() {
        let c = set(&["RoundOne", "x2"]);
        let v = vec![
            b("Marker", &["x2", "RoundOne"]),
            b("v01yes", &["x2", "RoundOne"]),
            b("v10", &["RoundOne", "x2"]),
        ];
        assert_eq!(winners_roundone(&c, &v, SystemVariant::PLAIN), set(&["x2"]));
        assert!(winners_roundone(&c, &v, SystemVariant::FLIP).is_empty());

        let no_marker = vec![b("v01yes", &["x2", "RoundOne"]), b("v10", &["RoundOne", "x2"])];
        assert!(winners_roundone(&c, &no_marker, SystemVariant::PLAIN).is_empty());
        assert!(winners_roundone(&c, &no_marker, SystemVariant::FLIP).is_empty());

        let c3 = set(&["x2"]);
        assert_eq!(winners_roundone(&c3, &v, SystemVariant::PLAIN), c3);
        assert!(winners_roundone(&c3, &v, SystemVariant::FLIP).is_empty());
    }

    #[test]
    fn roundone_roster_failures() {
        let c = set(&["RoundOne", "x2"]);
        let r1 = set(&["RoundOne"]);
        let cases: Vec<Vec<Ballot>> = vec![
            // both yes and no
            vec![
                b("Marker", &["x2", "RoundOne"]),
                b("v01yes", &["x2", "RoundOne"]),
                b("v01no", &["x2", "RoundOne"]),
            ],
            // missing even voter
            vec![b("Marker", &["x2", "RoundOne"]), b("v01yes", &["x2", "RoundOne"])],
            // extra voter
            vec![
                b("Marker", &["x2", "RoundOne"]),
                b("v01yes", &["x2", "RoundOne"]),
                b("v10", &["RoundOne", "x2"]),
                b("zed", &["RoundOne", "x2"]),
            ],
            // unknown name in place of the even voter
            vec![
                b("Marker", &["x2", "RoundOne"]),
                b("v01yes", &["x2", "RoundOne"]),
                b("v2", &["RoundOne", "x2"]),
            ],
        ];
        for v in cases {
            assert_eq!(winners_roundone(&c, &v, SystemVariant::PLAIN), r1);
            assert_eq!(winners_roundone(&c, &v, SystemVariant::FLIP), c);
        }
        // Φ false: x2 := RoundOne not top
        let v = vec![
            b("Marker", &["x2", "RoundOne"]),
            b("v01no", &["x2", "RoundOne"]),
            b("v10", &["x2", "RoundOne"]),
        ];
        assert_eq!(winners_roundone(&c, &v, SystemVariant::PLAIN), r1);
        assert_eq!(winners_roundone(&c, &v, SystemVariant::FLIP), c);
        // only RoundOne
        let v = vec![b("Marker", &["RoundOne"])];
        assert_eq!(winners_roundone(&r1, &v, SystemVariant::PLAIN), r1);
        // three candidates
        let c3 = set(&["RoundOne", "x2", "zz"]);
        let v = vec![
            b("Marker", &["x2", "RoundOne", "zz"]),
            b("v01yes", &["x2", "RoundOne", "zz"]),
            b("v10", &["RoundOne", "x2", "zz"]),
        ];
        assert_eq!(winners_roundone(&c3, &v, SystemVariant::PLAIN), r1);
    }

    #[test]
    fn sat_1c_examples() {
        let c = set(&["(x1&!x2)"]);
        let v = vec![b("01", &["(x1&!x2)"]), b("10", &["(x1&!x2)"])];
        assert!(winners_sat_1c(&c, &v).is_empty());
        let c = set(&["(x1&x2)"]);
        let v = vec![b("01", &["(x1&x2)"]), b("10", &["(x1&x2)"])];
        assert_eq!(winners_sat_1c(&c, &v), c);
        let c2 = set(&["x1", "y"]);
        assert_eq!(winners_sat_1c(&c2, &[]), c2);
        // wrong voter count
        let c = set(&["x1"]);
        assert_eq!(winners_sat_1c(&c, &[]), c);
        assert!(winners_sat_1c(&c, &[b("1", &["x1"])]).is_empty());
        // complement twin satisfies
        assert!(winners_sat_1c(&c, &[b("0", &["x1"])]).is_empty());
        // non-binary last character
        assert_eq!(winners_sat_1c(&c, &[b("a", &["x1"])]), c);
    }

    #[test]
    fn empty_candidate_set_has_no_winners() {
        let v = vec![b("Marker", &[])];
        for id in SystemId::ALL {
            assert!(id.winners(&CandidateSet::new(), &v).is_empty(), "{id}");
        }
    }

    #[test]
    fn descriptors_and_names() {
        for id in SystemId::ALL {
            assert_eq!(id.name().parse::<SystemId>().unwrap(), id);
            let d = id.descriptor();
            assert_eq!(d.anonymous, id == SystemId::Plurality);
            assert_eq!(d.top_only, id == SystemId::Plurality);
        }
        assert!("nope".parse::<SystemId>().is_err());
    }

    #[test]
    fn naming_helpers() {
        assert_eq!(bit_length(0), 1);
        assert_eq!(bit_length(3), 2);
        assert_eq!(bit_length(4), 3);
        assert_eq!(pad_binary(1, 2), "01");
        assert_eq!(roundone_voter_name(1, 2, RosterSlot::Yes), "v01yes");
        assert_eq!(roundone_voter_name(2, 2, RosterSlot::Even), "v10");
        assert_eq!(roundone_voter_name(3, 4, RosterSlot::No), "v011no");
    }

    fn arb_small_election() -> impl Strategy<Value = (CandidateSet, Vec<Ballot>)> {
        let names = prop_oneof![
            Just("RoundOne".to_string()),
            Just("x2".to_string()),
            Just("(x1|x2)".to_string()),
            Just("x20".to_string()),
            "[a-z]{1,2}",
        ];
        let voters = prop_oneof![
            Just("Marker".to_string()),
            Just("v01yes".to_string()),
            Just("v01no".to_string()),
            Just("v10".to_string()),
            "[01]{1,4}",
        ];
        (proptest::collection::btree_set(names, 0..4), proptest::collection::vec((voters, any::<u64>()), 0..5))
            .prop_map(|(cands, vs)| {
                let c: CandidateSet = cands.into_iter().map(CandidateName::from).collect();
                let orders = crate::model::all_orders(&c);
                let ballots = vs
                    .into_iter()
                    .map(|(name, r)| Ballot::new(name.as_str(), orders[(r % orders.len() as u64) as usize].clone()))
                    .collect();
                (c, ballots)
            })
    }

    proptest! {
        #[test]
        fn results_are_subsets((c, v) in arb_small_election()) {
            for id in SystemId::ALL {
                let w = id.winners(&c, &v);
                prop_assert!(w.is_subset(&c));
                prop_assert_eq!(&w, &id.winners(&c, &v));
            }
        }

        #[test]
        fn qbf_dv_flip_duality((c, v) in arb_small_election()) {
            let plain = winners_qbf_dv(&c, &v, SystemVariant::PLAIN);
            let flip = winners_qbf_dv(&c, &v, SystemVariant::FLIP);
            prop_assert!(plain.is_empty() || plain == c);
            prop_assume!(!c.is_empty());
            prop_assert_eq!(flip.is_empty(), plain == c);
            prop_assert_eq!(flip == c, plain.is_empty());
        }

        #[test]
        fn roundone_stays_within_reserved_pair((c, v) in arb_small_election()) {
            let r1 = CandidateName::from(ROUND_ONE);
            if c.contains(&r1) {
                let least = c.iter().find(|x| **x != r1).cloned();
                let w = winners_roundone(&c, &v, SystemVariant::PLAIN);
                for x in w {
                    prop_assert!(x == r1 || Some(&x) == least.as_ref());
                }
            }
        }
    }
}
