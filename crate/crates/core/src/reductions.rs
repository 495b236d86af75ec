//! Instance generators for the hardness reductions, and a simulator for
//! the score bookkeeping of the hitting-set construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::Formula;
use crate::game::{
    ChairAction, ControlInstance, ControlType, CurrentVoter, FutureVoter, GameState, GoalMode, PastFlag, PastRecord,
};
use crate::model::{plurality_scores, Ballot, CandidateName, CandidateSet, PreferenceOrder};
use crate::oracle::find_hitting_set;
use crate::systems::{bit_length, pad_binary, roundone_voter_name, RosterSlot, SystemId, MARKER, ROUND_ONE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the largest variable index must be even and at least 2, got {0}")]
    NotQbfPrime(u32),
    #[error("variable x{0} does not occur; variables must be x1..x{1} without gaps")]
    VariableGap(u32, u32),
    #[error("hitting set instance: {0}")]
    HittingSet(String),
}

/// `∃x1 ∀x2 ... ∃x(2ℓ-1) ∀x(2ℓ) F` with `x2ℓ` occurring in `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfPrimeInstance {
    pub formula: Formula,
    pub ell: u32,
}

impl QbfPrimeInstance {
    pub fn new(formula: Formula) -> Result<Self, ReductionError> {
        let m = formula.max_var();
        if m < 2 || m % 2 == 1 {
            return Err(ReductionError::NotQbfPrime(m));
        }
        Ok(QbfPrimeInstance { formula, ell: m / 2 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QbfFamily {
    Ccdv,
    Ccav,
    Dcdv,
    Dcav,
    Ccpv,
    Dcpv,
}

impl QbfFamily {
    pub const ALL: [QbfFamily; 6] = [
        QbfFamily::Ccdv,
        QbfFamily::Ccav,
        QbfFamily::Dcdv,
        QbfFamily::Dcav,
        QbfFamily::Ccpv,
        QbfFamily::Dcpv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QbfFamily::Ccdv => "ccdv",
            QbfFamily::Ccav => "ccav",
            QbfFamily::Dcdv => "dcdv",
            QbfFamily::Dcav => "dcav",
            QbfFamily::Ccpv => "ccpv",
            QbfFamily::Dcpv => "dcpv",
        }
    }

    pub fn control(self) -> ControlType {
        match self {
            QbfFamily::Ccdv | QbfFamily::Dcdv => ControlType::DV,
            QbfFamily::Ccav | QbfFamily::Dcav => ControlType::AV,
            QbfFamily::Ccpv | QbfFamily::Dcpv => ControlType::PV,
        }
    }

    pub fn mode(self) -> GoalMode {
        match self {
            QbfFamily::Ccdv | QbfFamily::Ccav | QbfFamily::Ccpv => GoalMode::Constructive,
            _ => GoalMode::Destructive,
        }
    }
}

impl fmt::Display for QbfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QbfFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QbfFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

fn chain(names: &[&CandidateName]) -> PreferenceOrder {
    PreferenceOrder::new(names.iter().map(|c| (*c).clone()).collect())
}

/// Builds the control instance whose chair wins iff the quantified
/// formula is true.
pub fn reduce_qbf(q: &QbfPrimeInstance, family: QbfFamily) -> ControlInstance {
    let a = CandidateName::new(q.formula.render());
    let ell = q.ell as usize;
    match family.control() {
        ControlType::DV | ControlType::AV => {
            let b = CandidateName::new(format!("{a}0"));
            let av = family.control() == ControlType::AV;
            let n = 3 * ell;
            let width = bit_length(n);
            let name = |i: usize| {
                let suffix = match i % 3 {
                    1 => "00",
                    2 => "01",
                    _ => "10",
                };
                format!("{}{}", pad_binary(i, width), suffix)
            };
            let flip = family.mode() == GoalMode::Destructive;
            ControlInstance {
                control: family.control(),
                mode: family.mode(),
                system: if flip { SystemId::QbfDvFlip } else { SystemId::QbfDv },
                candidates: vec![a.clone(), b.clone()],
                sigma: chain(&[&a, &b]),
                distinguished: if flip { b.clone() } else { a.clone() },
                budget: Some(ell),
                past: Vec::new(),
                current: CurrentVoter {
                    voter: name(1).into(),
                    ballot: chain(&[&a, &b]),
                    registered: false,
                },
                future: (2..=n)
                    .map(|i| FutureVoter {
                        voter: name(i).into(),
                        registered: av.then_some(i % 3 == 0),
                    })
                    .collect(),
            }
        }
        ControlType::PV => {
            let r1 = CandidateName::from(ROUND_ONE);
            let two_ell = 2 * ell;
            let mut future = Vec::with_capacity(3 * ell);
            for i in 1..=two_ell {
                let slots: &[RosterSlot] = if i % 2 == 1 {
                    &[RosterSlot::Yes, RosterSlot::No]
                } else {
                    &[RosterSlot::Even]
                };
                for &slot in slots {
                    future.push(FutureVoter {
                        voter: roundone_voter_name(i, two_ell, slot).into(),
                        registered: None,
                    });
                }
            }
            let constructive = family.mode() == GoalMode::Constructive;
            ControlInstance {
                control: ControlType::PV,
                mode: family.mode(),
                system: if constructive { SystemId::RoundOne } else { SystemId::RoundOneFlip },
                candidates: vec![r1.clone(), a.clone()],
                sigma: if constructive { chain(&[&a, &r1]) } else { chain(&[&r1, &a]) },
                distinguished: a.clone(),
                budget: None,
                past: Vec::new(),
                current: CurrentVoter {
                    voter: MARKER.into(),
                    ballot: chain(&[&a, &r1]),
                    registered: false,
                },
                future,
            }
        }
    }
}

fn check_no_gap(f: &Formula) -> Result<(), ReductionError> {
    let vars = f.variables();
    let k = f.max_var();
    match (1..=k).find(|i| !vars.contains(i)) {
        Some(missing) => Err(ReductionError::VariableGap(missing, k)),
        None => Ok(()),
    }
}

/// One candidate encoding `f`, `2k` voters: the chair can keep the
/// candidate from winning iff `f` is satisfiable.
pub fn reduce_sat_1cand(f: &Formula) -> Result<ControlInstance, ReductionError> {
    check_no_gap(f)?;
    let n = 2 * f.max_var() as usize;
    let width = bit_length(n);
    let c = CandidateName::new(f.render());
    let only = PreferenceOrder::new(vec![c.clone()]);
    Ok(ControlInstance {
        control: ControlType::PV,
        mode: GoalMode::Destructive,
        system: SystemId::Sat1c,
        candidates: vec![c.clone()],
        sigma: only.clone(),
        distinguished: c,
        budget: None,
        past: Vec::new(),
        current: CurrentVoter {
            voter: pad_binary(1, width).into(),
            ballot: only,
            registered: false,
        },
        future: (2..=n)
            .map(|i| FutureVoter {
                voter: pad_binary(i, width).into(),
                registered: None,
            })
            .collect(),
    })
}

/// Budget-0 deletion instance whose chair's top choice wins against every
/// future iff `f` is a tautology. The current voter is named `0…0` so that
/// it sorts before the `n` testing voters.
pub fn reduce_taut(f: &Formula) -> ControlInstance {
    let n = f.max_var() as usize;
    let width = bit_length(n);
    let a = CandidateName::new(f.render());
    let a0 = CandidateName::new(format!("{a}0"));
    ControlInstance {
        control: ControlType::DV,
        mode: GoalMode::Constructive,
        system: SystemId::Taut,
        candidates: vec![a.clone(), a0.clone()],
        sigma: chain(&[&a, &a0]),
        distinguished: a.clone(),
        budget: Some(0),
        past: Vec::new(),
        current: CurrentVoter {
            voter: pad_binary(0, width).into(),
            ballot: chain(&[&a, &a0]),
            registered: false,
        },
        future: (1..=n)
            .map(|i| FutureVoter {
                voter: pad_binary(i, width).into(),
                registered: None,
            })
            .collect(),
    }
}

/// A collection of nonempty subsets of `{1..m}` and a size bound `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub m: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl HittingSetInstance {
    /// Sorts and deduplicates each set.
    pub fn new(m: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self, ReductionError> {
        let bad = |msg: String| Err(ReductionError::HittingSet(msg));
        if m == 0 {
            return bad("m must be positive".into());
        }
        if sets.is_empty() {
            return bad("the collection must be nonempty".into());
        }
        if k == 0 || k > m {
            return bad(format!("k must satisfy 1 <= k <= m = {m}, got {k}"));
        }
        let mut out = Vec::with_capacity(sets.len());
        for (i, s) in sets.into_iter().enumerate() {
            let set: BTreeSet<usize> = s.into_iter().collect();
            if set.is_empty() {
                return bad(format!("set {} is empty", i + 1));
            }
            if let Some(e) = set.iter().find(|&&e| e == 0 || e > m) {
                return bad(format!("set {} has element {e} outside 1..={m}", i + 1));
            }
            out.push(set.into_iter().collect());
        }
        Ok(HittingSetInstance { m, sets: out, k })
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    /// First line `m n k` (or `m n` when `k` comes from elsewhere), then
    /// one line of element indices per set. `k_override` wins over the file.
    pub fn parse_sets_file(text: &str, k_override: Option<usize>) -> Result<Self, ReductionError> {
        let bad = |msg: String| ReductionError::HittingSet(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty sets file".into()))?;
        let nums = |line: &str| -> Result<Vec<usize>, ReductionError> {
            line.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad(format!("not a number: {t:?}"))))
                .collect()
        };
        let head = nums(header)?;
        let (m, n, k_file) = match head.as_slice() {
            [m, n] => (*m, *n, None),
            [m, n, k] => (*m, *n, Some(*k)),
            _ => return Err(bad("header must be \"m n k\"".into())),
        };
        let k = k_override
            .or(k_file)
            .ok_or_else(|| bad("no k given in the file or on the command line".into()))?;
        let sets = lines.map(nums).collect::<Result<Vec<_>, _>>()?;
        if sets.len() != n {
            return Err(bad(format!("header announces {n} sets, found {}", sets.len())));
        }
        HittingSetInstance::new(m, sets, k)
    }

    pub fn to_sets_file(&self) -> String {
        let mut out = format!("{} {} {}\n", self.m, self.n(), self.k);
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Constructive (`c` must win) or destructive (`w` must not win).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsVariant {
    Cc,
    Dc,
}

impl FromStr for HsVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cc" => Ok(HsVariant::Cc),
            "dc" => Ok(HsVariant::Dc),
            _ => Err(format!("unknown variant {s:?}, expected cc or dc")),
        }
    }
}

/// Candidate names of the hitting-set construction.
#[derive(Debug, Clone)]
pub struct HsNames {
    pub c: CandidateName,
    pub w: CandidateName,
    /// `b[j - 1]` is element `j`.
    pub b: Vec<CandidateName>,
    /// `a[i - 1]` is `a_i`; the last one is the current voter's top choice.
    pub a: Vec<CandidateName>,
}

impl HsNames {
    pub fn new(h: &HittingSetInstance) -> Self {
        let (m, n, k) = (h.m, h.n(), h.k);
        let count_a = 4 * m * n * k + 1;
        let wb = m.to_string().len();
        let wa = count_a.to_string().len();
        HsNames {
            c: "c".into(),
            w: "w".into(),
            b: (1..=m).map(|j| CandidateName::new(format!("b{j:0wb$}"))).collect(),
            a: (1..=count_a).map(|i| CandidateName::new(format!("a{i:0wa$}"))).collect(),
        }
    }

    pub fn all(&self) -> CandidateSet {
        let mut s: CandidateSet = self.a.iter().chain(&self.b).cloned().collect();
        s.insert(self.c.clone());
        s.insert(self.w.clone());
        s
    }
}

/// `head` followed by every other candidate in ascending name order.
fn ballot_with_head(all: &CandidateSet, head: &[&CandidateName]) -> PreferenceOrder {
    let mut v: Vec<CandidateName> = head.iter().map(|c| (*c).clone()).collect();
    v.extend(all.iter().filter(|c| !head.contains(c)).cloned());
    PreferenceOrder::new(v)
}

/// One side's ballots, before voter names are attached.
fn side_ballots(h: &HittingSetInstance, names: &HsNames) -> Vec<PreferenceOrder> {
    let all = names.all();
    let (n, k) = (h.n(), h.k);
    let mut out = Vec::new();
    for _ in 0..4 * n * k {
        out.push(ballot_with_head(&all, &[&names.c, &names.w]));
    }
    for _ in 0..4 * n * k {
        out.push(ballot_with_head(&all, &[&names.w, &names.c]));
    }
    for s in &h.sets {
        let mut head: Vec<&CandidateName> = s.iter().map(|&e| &names.b[e - 1]).collect();
        head.push(&names.c);
        for _ in 0..2 * k {
            out.push(ballot_with_head(&all, &head));
        }
    }
    for j in 1..=h.m {
        let leaders = h.sets.iter().filter(|s| s[0] == j).count();
        let padding = 4 * n * k - 1 - 2 * k * leaders;
        let mut head = vec![&names.b[j - 1]];
        head.extend(names.b.iter().filter(|b| **b != names.b[j - 1]));
        head.push(&names.c);
        head.push(&names.w);
        for _ in 0..padding {
            out.push(ballot_with_head(&all, &head));
        }
    }
    for a in &names.a[..names.a.len() - 1] {
        out.push(ballot_with_head(&all, &[a, &names.c]));
        out.push(ballot_with_head(&all, &[a, &names.w]));
    }
    out
}

/// Partition instance over plurality in which the chair can get `c` to
/// win (cc) or keep `w` from winning (dc) iff no hitting set of size at
/// most `k` exists.
pub fn reduce_hitting_set(h: &HittingSetInstance, variant: HsVariant) -> ControlInstance {
    let names = HsNames::new(h);
    let all = names.all();
    let side = side_ballots(h, &names);
    let total_voters = 2 * side.len() + 1 + h.k;
    let width = total_voters.to_string().len();
    let voter = |i: usize| format!("v{i:0width$}");
    let mut counter = 0;
    let mut past = Vec::with_capacity(2 * side.len());
    for flag in [PastFlag::Left, PastFlag::Right] {
        for order in &side {
            counter += 1;
            past.push(PastRecord {
                voter: voter(counter).into(),
                flag,
                ballot: Some(order.clone()),
            });
        }
    }
    counter += 1;
    let current = CurrentVoter {
        voter: voter(counter).into(),
        ballot: ballot_with_head(&all, &[names.a.last().unwrap(), &names.w]),
        registered: false,
    };
    let future = (1..=h.k)
        .map(|i| FutureVoter {
            voter: voter(counter + i).into(),
            registered: None,
        })
        .collect();
    let sigma = ballot_with_head(&all, &[&names.c]);
    let mut sigma_v: Vec<CandidateName> = sigma.iter().filter(|x| **x != names.w).cloned().collect();
    sigma_v.push(names.w.clone());
    ControlInstance {
        control: ControlType::PV,
        mode: match variant {
            HsVariant::Cc => GoalMode::Constructive,
            HsVariant::Dc => GoalMode::Destructive,
        },
        system: SystemId::Plurality,
        candidates: all.iter().cloned().collect(),
        sigma: PreferenceOrder::new(sigma_v),
        distinguished: match variant {
            HsVariant::Cc => names.c.clone(),
            HsVariant::Dc => names.w.clone(),
        },
        budget: None,
        past,
        current,
        future,
    }
}

/// One simulated play: how `u` and the future voters were split, what
/// the future voters cast, and the resulting runoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsScenario {
    /// `u` first, then the future voters.
    pub partition: Vec<ChairAction>,
    pub adversary: Vec<PreferenceOrder>,
    pub finalists: CandidateSet,
    pub score_c: usize,
    pub score_w: usize,
    /// Runoff score summed over the chosen hitting set (yes branch only).
    pub score_b_sum: Option<usize>,
    pub winners: CandidateSet,
    /// Highest first-round score of any `a` candidate on either side.
    pub max_a_side_score: usize,
    /// Lowest first-round score of `c` over the two sides.
    pub min_c_side_score: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsReport {
    pub exists: bool,
    /// The hitting set, padded with further elements to exactly `k`.
    pub hitting_set: Option<Vec<usize>>,
    pub scenarios: Vec<HsScenario>,
}

fn play_scenario(
    inst: &ControlInstance,
    names: &HsNames,
    partition: &[ChairAction],
    adversary: &[PreferenceOrder],
    chosen: Option<&[usize]>,
) -> HsScenario {
    let mut state = GameState::new(inst).expect("generated instance is valid");
    state.apply(partition[0]).unwrap();
    for (order, &action) in adversary.iter().zip(&partition[1..]) {
        state.reveal(order.clone()).unwrap();
        state.apply(action).unwrap();
    }
    let out = state.partition_outcome().unwrap();
    let finalists: CandidateSet = out.w1.union(&out.w2).cloned().collect();
    let (left, right) = state.lists();
    let masked: Vec<Ballot> = left
        .iter()
        .chain(right)
        .map(|b| Ballot::new(b.voter.clone(), b.order.mask(&finalists).unwrap()))
        .collect();
    let scores: BTreeMap<CandidateName, usize> = plurality_scores(&finalists, &masked);
    let score = |c: &CandidateName| scores.get(c).copied().unwrap_or(0);
    let all = names.all();
    let side_scores = [plurality_scores(&all, left), plurality_scores(&all, right)];
    let max_a_side_score = side_scores
        .iter()
        .flat_map(|s| names.a.iter().map(move |a| s[a]))
        .max()
        .unwrap_or(0);
    let min_c_side_score = side_scores.iter().map(|s| s[&names.c]).min().unwrap();
    HsScenario {
        partition: partition.to_vec(),
        adversary: adversary.to_vec(),
        score_c: score(&names.c),
        score_w: score(&names.w),
        score_b_sum: chosen.map(|set| set.iter().map(|&j| score(&names.b[j - 1])).sum()),
        finalists,
        winners: out.runoff,
        max_a_side_score,
        min_c_side_score,
    }
}

/// Replays the two proof strategies on the constructed instance.
///
/// With a hitting set `B′` (padded to `k` elements), future voter `i`
/// votes for the `i`-th element of `B′` first, and every partition of `u`
/// and the future voters is simulated. Without one, the chair puts `u` and
/// every future voter on the left, and every adversary ballot with a top
/// choice in `B` and `w` or `c` second is simulated.
pub fn simulate_hs_proof_strategies(h: &HittingSetInstance) -> HsReport {
    let inst = reduce_hitting_set(h, HsVariant::Cc);
    let names = HsNames::new(h);
    let all = names.all();
    let k = h.k;
    let mut scenarios = Vec::new();
    let found = find_hitting_set(h);
    let hitting_set = found.map(|mut set| {
        let mut extra = 1;
        while set.len() < k {
            if !set.contains(&extra) {
                set.push(extra);
            }
            extra += 1;
        }
        set.sort_unstable();
        set
    });
    match &hitting_set {
        Some(set) => {
            let adversary: Vec<PreferenceOrder> =
                set.iter().map(|&j| ballot_with_head(&all, &[&names.b[j - 1]])).collect();
            for mask in 0..1u32 << (k + 1) {
                let partition: Vec<ChairAction> = (0..=k)
                    .map(|i| if mask >> i & 1 == 1 { ChairAction::Right } else { ChairAction::Left })
                    .collect();
                scenarios.push(play_scenario(&inst, &names, &partition, &adversary, Some(set)));
            }
        }
        None => {
            let partition = vec![ChairAction::Left; k + 1];
            let choices: Vec<PreferenceOrder> = names
                .b
                .iter()
                .flat_map(|b| [&names.w, &names.c].map(|second| ballot_with_head(&all, &[b, second])))
                .collect();
            let mut idx = vec![0usize; k];
            loop {
                let adversary: Vec<PreferenceOrder> = idx.iter().map(|&i| choices[i].clone()).collect();
                scenarios.push(play_scenario(&inst, &names, &partition, &adversary, None));
                let mut pos = 0;
                while pos < k && idx[pos] + 1 == choices.len() {
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
                idx[pos] += 1;
            }
        }
    }
    HsReport {
        exists: hitting_set.is_some(),
        hitting_set,
        scenarios,
    }
}

/// The score identities the construction promises, for the given report.
pub fn hs_identities_hold(h: &HittingSetInstance, report: &HsReport) -> Result<(), String> {
    let (m, n, k) = (h.m, h.n(), h.k);
    let base = 8 * n * k + 8 * m * n * k;
    let c = CandidateName::from("c");
    if report.scenarios.is_empty() {
        return Err("no scenarios simulated".into());
    }
    for s in &report.scenarios {
        if s.max_a_side_score > 2 + k {
            return Err(format!("an a-candidate reached {} > 2 + k in a first round", s.max_a_side_score));
        }
        if s.max_a_side_score >= s.min_c_side_score {
            return Err("an a-candidate kept up with c in a first round".into());
        }
        if report.exists {
            let sum = 8 * m * n * k + k - 2 * m;
            if s.score_c != base || s.score_w != base + 1 || s.score_b_sum != Some(sum) {
                return Err(format!(
                    "partition {:?}: scores (c, w, ΣB′) = ({}, {}, {:?}), expected ({base}, {}, {sum})",
                    s.partition,
                    s.score_c,
                    s.score_w,
                    s.score_b_sum,
                    base + 1
                ));
            }
        } else {
            if s.score_c < base + 4 * k || s.score_w > base + 1 + k {
                return Err(format!(
                    "adversary {:?}: scores (c, w) = ({}, {}), expected c >= {} and w <= {}",
                    s.adversary.iter().map(|o| o.top().unwrap().to_string()).collect::<Vec<_>>(),
                    s.score_c,
                    s.score_w,
                    base + 4 * k,
                    base + 1 + k
                ));
            }
            if s.winners != CandidateSet::from([c.clone()]) {
                return Err(format!("c is not the unique runoff winner: {:?}", s.winners));
            }
        }
    }
    Ok(())
}
