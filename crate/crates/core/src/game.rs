//! The online control game: instances, goals, chair actions, transitions
//! and final-election evaluation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    validate_election, Ballot, CandidateName, CandidateSet, ElectionSystem, ModelError, PreferenceOrder, VoterName,
};
use crate::systems::SystemId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ControlType {
    /// Deleting voters.
    DV,
    /// Adding voters.
    AV,
    /// Partitioning voters into two first-round elections.
    PV,
}

impl fmt::Display for ControlType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ControlType::DV => "DV",
            ControlType::AV => "AV",
            ControlType::PV => "PV",
        })
    }
}

impl std::str::FromStr for ControlType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "DV" | "dv" => Ok(ControlType::DV),
            "AV" | "av" => Ok(ControlType::AV),
            "PV" | "pv" => Ok(ControlType::PV),
            _ => Err(format!("unknown control type {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalMode {
    Constructive,
    Destructive,
}

impl fmt::Display for GoalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GoalMode::Constructive => "constructive",
            GoalMode::Destructive => "destructive",
        })
    }
}

impl std::str::FromStr for GoalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "constructive" | "cc" => Ok(GoalMode::Constructive),
            "destructive" | "dc" => Ok(GoalMode::Destructive),
            _ => Err(format!("unknown goal mode {s:?}")),
        }
    }
}

/// What happened to a voter who came before the current one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PastFlag {
    Kept,
    Deleted,
    Registered,
    Added,
    Skipped,
    Left,
    Right,
}

impl PastFlag {
    pub fn allowed_for(self, control: ControlType) -> bool {
        use PastFlag::*;
        match control {
            ControlType::DV => matches!(self, Kept | Deleted),
            ControlType::AV => matches!(self, Registered | Added | Skipped),
            ControlType::PV => matches!(self, Left | Right),
        }
    }

    /// Deleted (DV) and skipped (AV) voters have no recorded ballot.
    pub fn carries_ballot(self) -> bool {
        !matches!(self, PastFlag::Deleted | PastFlag::Skipped)
    }

    /// Whether the flag consumed one unit of the chair's budget.
    pub fn spends_budget(self) -> bool {
        matches!(self, PastFlag::Deleted | PastFlag::Added)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PastRecord {
    pub voter: VoterName,
    pub flag: PastFlag,
    pub ballot: Option<PreferenceOrder>,
}

/// The voter whose ballot is known and on whom the chair acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurrentVoter {
    pub voter: VoterName,
    pub ballot: PreferenceOrder,
    /// Only meaningful under AV, where it must be false.
    pub registered: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FutureVoter {
    pub voter: VoterName,
    /// Present exactly under AV.
    pub registered: Option<bool>,
}

/// A snapshot of an online control problem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlInstance {
    pub control: ControlType,
    pub mode: GoalMode,
    pub system: SystemId,
    pub candidates: Vec<CandidateName>,
    pub sigma: PreferenceOrder,
    pub distinguished: CandidateName,
    /// Present exactly under DV and AV.
    pub budget: Option<usize>,
    pub past: Vec<PastRecord>,
    pub current: CurrentVoter,
    pub future: Vec<FutureVoter>,
}

impl ControlInstance {
    pub fn candidate_set(&self) -> CandidateSet {
        self.candidates.iter().cloned().collect()
    }

    pub fn goal(&self) -> Goal {
        Goal::new(self.mode, &self.sigma, &self.distinguished)
    }

    pub fn budget_or_zero(&self) -> usize {
        self.budget.unwrap_or(0)
    }

    /// Budget already consumed by past flags.
    pub fn past_spent(&self) -> usize {
        self.past.iter().filter(|r| r.flag.spends_budget()).count()
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        validate_instance(self)
    }
}

/// The chair's goal: the σ-segments above and below `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub mode: GoalMode,
    pub up: CandidateSet,
    pub down: CandidateSet,
}

impl Goal {
    /// `sigma` must contain `d`.
    pub fn new(mode: GoalMode, sigma: &PreferenceOrder, d: &CandidateName) -> Self {
        let pos = sigma.iter().position(|c| c == d).expect("distinguished candidate must be ranked by sigma");
        let order = sigma.as_slice();
        Goal {
            mode,
            up: order[..=pos].iter().cloned().collect(),
            down: order[pos..].iter().cloned().collect(),
        }
    }

    pub fn holds(&self, winners: &CandidateSet) -> bool {
        goal_holds(self, winners)
    }
}

/// Constructive: some winner is at least as good as `d` for the chair.
/// Destructive: no winner is `d` or worse.
pub fn goal_holds(g: &Goal, winners: &CandidateSet) -> bool {
    match g.mode {
        GoalMode::Constructive => winners.iter().any(|w| g.up.contains(w)),
        GoalMode::Destructive => !winners.iter().any(|w| g.down.contains(w)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChairAction {
    Keep,
    Delete,
    Skip,
    Add,
    Left,
    Right,
}

impl ChairAction {
    pub fn name(self) -> &'static str {
        match self {
            ChairAction::Keep => "keep",
            ChairAction::Delete => "delete",
            ChairAction::Skip => "skip",
            ChairAction::Add => "add",
            ChairAction::Left => "left",
            ChairAction::Right => "right",
        }
    }
}

impl fmt::Display for ChairAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ChairAction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            ChairAction::Keep,
            ChairAction::Delete,
            ChairAction::Skip,
            ChairAction::Add,
            ChairAction::Left,
            ChairAction::Right,
        ]
        .into_iter()
        .find(|a| a.name() == s)
        .ok_or_else(|| format!("unknown action {s:?}"))
    }
}

/// Actions open to the chair at one voter, in tie-break order. Empty for a
/// registered voter under AV, whose vote always counts.
pub fn legal_chair_actions(control: ControlType, budget: usize, used: usize, registered: bool) -> Vec<ChairAction> {
    match control {
        ControlType::DV if used < budget => vec![ChairAction::Keep, ChairAction::Delete],
        ControlType::DV => vec![ChairAction::Keep],
        ControlType::AV if registered => Vec::new(),
        ControlType::AV if used < budget => vec![ChairAction::Skip, ChairAction::Add],
        ControlType::AV => vec![ChairAction::Skip],
        ControlType::PV => vec![ChairAction::Left, ChairAction::Right],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Election(#[from] ModelError),
    #[error("no candidates")]
    NoCandidates,
    #[error("sigma is not a total order over the candidates: {0}")]
    Sigma(ModelError),
    #[error("distinguished candidate {0} is not a candidate")]
    UnknownDistinguished(CandidateName),
    #[error("voter name {0} appears more than once")]
    DuplicateVoter(VoterName),
    #[error("empty voter name")]
    EmptyVoterName,
    #[error("{control} instances need a budget")]
    MissingBudget { control: ControlType },
    #[error("PV instances take no budget")]
    UnexpectedBudget,
    #[error("flag {flag:?} of past voter {voter} is not a {control} flag")]
    WrongFlag {
        voter: VoterName,
        flag: PastFlag,
        control: ControlType,
    },
    #[error("past voter {voter} flagged {flag:?} must have a ballot")]
    MissingBallot { voter: VoterName, flag: PastFlag },
    #[error("past voter {voter} flagged {flag:?} must not have a ballot")]
    UnexpectedBallot { voter: VoterName, flag: PastFlag },
    #[error("{spent} past voters flagged {flag:?} exceed the budget {budget}")]
    OverBudget {
        spent: usize,
        budget: usize,
        flag: PastFlag,
    },
    #[error("u must be unregistered")]
    RegisteredCurrent,
    #[error("current voter may be marked registered only under AV")]
    RegisteredOutsideAv,
    #[error("future voter {0} needs a registered flag under AV")]
    MissingRegistration(VoterName),
    #[error("future voter {0} carries a registered flag outside AV")]
    UnexpectedRegistration(VoterName),
}

/// Checks every structural invariant of a control instance.
pub fn validate_instance(inst: &ControlInstance) -> Result<(), InstanceError> {
    if inst.candidates.is_empty() {
        return Err(InstanceError::NoCandidates);
    }
    validate_election(&inst.candidates, &[])?;
    let cands = inst.candidate_set();
    inst.sigma
        .check_total(&VoterName::from("sigma"), &cands)
        .map_err(InstanceError::Sigma)?;
    if !cands.contains(&inst.distinguished) {
        return Err(InstanceError::UnknownDistinguished(inst.distinguished.clone()));
    }

    let mut names = BTreeSet::new();
    let all_names = inst
        .past
        .iter()
        .map(|r| &r.voter)
        .chain(std::iter::once(&inst.current.voter))
        .chain(inst.future.iter().map(|f| &f.voter));
    for name in all_names {
        if name.as_str().is_empty() {
            return Err(InstanceError::EmptyVoterName);
        }
        if !names.insert(name) {
            return Err(InstanceError::DuplicateVoter(name.clone()));
        }
    }

    match (inst.control, inst.budget) {
        (ControlType::PV, Some(_)) => return Err(InstanceError::UnexpectedBudget),
        (ControlType::DV | ControlType::AV, None) => {
            return Err(InstanceError::MissingBudget { control: inst.control })
        }
        _ => {}
    }

    for r in &inst.past {
        if !r.flag.allowed_for(inst.control) {
            return Err(InstanceError::WrongFlag {
                voter: r.voter.clone(),
                flag: r.flag,
                control: inst.control,
            });
        }
        match (&r.ballot, r.flag.carries_ballot()) {
            (None, true) => {
                return Err(InstanceError::MissingBallot {
                    voter: r.voter.clone(),
                    flag: r.flag,
                })
            }
            (Some(_), false) => {
                return Err(InstanceError::UnexpectedBallot {
                    voter: r.voter.clone(),
                    flag: r.flag,
                })
            }
            (Some(order), true) => order.check_total(&r.voter, &cands)?,
            (None, false) => {}
        }
    }
    let spent = inst.past_spent();
    if spent > inst.budget_or_zero() {
        return Err(InstanceError::OverBudget {
            spent,
            budget: inst.budget_or_zero(),
            flag: if inst.control == ControlType::DV {
                PastFlag::Deleted
            } else {
                PastFlag::Added
            },
        });
    }

    inst.current.ballot.check_total(&inst.current.voter, &cands)?;
    if inst.current.registered {
        return Err(if inst.control == ControlType::AV {
            InstanceError::RegisteredCurrent
        } else {
            InstanceError::RegisteredOutsideAv
        });
    }
    for f in &inst.future {
        match (inst.control, f.registered) {
            (ControlType::AV, None) => return Err(InstanceError::MissingRegistration(f.voter.clone())),
            (ControlType::DV | ControlType::PV, Some(_)) => {
                return Err(InstanceError::UnexpectedRegistration(f.voter.clone()))
            }
            _ => {}
        }
    }
    Ok(())
}

/// First-round winner sets and the runoff result of a partition election.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionOutcome {
    pub w1: CandidateSet,
    pub w2: CandidateSet,
    pub runoff: CandidateSet,
}

/// Two first rounds with all winners promoted, then a runoff over the
/// promoted candidates with every ballot masked to them (left ballots
/// first, then right). No promoted candidates means no runoff winners.
pub fn run_two_round_tp(
    system: &dyn ElectionSystem,
    candidates: &CandidateSet,
    left: &[Ballot],
    right: &[Ballot],
) -> PartitionOutcome {
    let w1 = system.winners(candidates, left);
    let w2 = system.winners(candidates, right);
    let finalists: CandidateSet = w1.union(&w2).cloned().collect();
    let runoff = if finalists.is_empty() {
        CandidateSet::new()
    } else {
        let masked: Vec<Ballot> = left
            .iter()
            .chain(right)
            .map(|b| Ballot::new(b.voter.clone(), b.order.mask_unchecked(&finalists)))
            .collect();
        system.winners(&finalists, &masked)
    };
    PartitionOutcome { w1, w2, runoff }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("action {action} is not legal here (legal: {legal:?})")]
    IllegalAction {
        action: ChairAction,
        legal: Vec<ChairAction>,
    },
    #[error("expected a chair decision, not a revealed vote")]
    NotRevealing,
    #[error("expected a revealed vote, not a chair decision")]
    NotDeciding,
    #[error("the game is over")]
    Finished,
    #[error("the game is not over yet")]
    NotFinished,
    #[error(transparent)]
    Ballot(#[from] ModelError),
    #[error("exactly one candidate required, got {0}")]
    NotOneCandidate(usize),
}

/// One step of a play, in the order it happened.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Move {
    Chair { voter: VoterName, action: ChairAction },
    Reveal { voter: VoterName, order: PreferenceOrder },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Chair { voter, action } => write!(f, "chair {action} {voter}"),
            Move::Reveal { voter, order } => write!(f, "reveal {voter} {order}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phase {
    /// The chair must act on this voter, whose ballot is known.
    Decide { voter: VoterName, order: PreferenceOrder },
    /// The next future voter's ballot is about to be revealed.
    Reveal { voter: VoterName },
    Done,
}

/// A position in the game. Transitions are checked and never touch the
/// instance; the state clones cheaply enough for exhaustive exploration.
#[derive(Clone)]
pub struct GameState<'a> {
    inst: &'a ControlInstance,
    system: &'a dyn ElectionSystem,
    candidates: CandidateSet,
    lists: [Vec<Ballot>; 2],
    used: usize,
    next: usize,
    phase: Phase,
    history: Vec<Move>,
}

impl<'a> GameState<'a> {
    /// Starts at the chair's decision on the current voter.
    pub fn new(inst: &'a ControlInstance) -> Result<Self, GameError> {
        Self::with_system(inst, &inst.system)
    }

    /// Like [`GameState::new`] but evaluates with a caller-supplied system.
    pub fn with_system(inst: &'a ControlInstance, system: &'a dyn ElectionSystem) -> Result<Self, GameError> {
        validate_instance(inst)?;
        let mut lists: [Vec<Ballot>; 2] = [Vec::new(), Vec::new()];
        for r in &inst.past {
            if let Some(order) = &r.ballot {
                let side = usize::from(r.flag == PastFlag::Right);
                lists[side].push(Ballot::new(r.voter.clone(), order.clone()));
            }
        }
        Ok(GameState {
            inst,
            system,
            candidates: inst.candidate_set(),
            lists,
            used: inst.past_spent(),
            next: 0,
            phase: Phase::Decide {
                voter: inst.current.voter.clone(),
                order: inst.current.ballot.clone(),
            },
            history: Vec::new(),
        })
    }

    pub fn instance(&self) -> &'a ControlInstance {
        self.inst
    }

    pub fn phase(&self) -> &Phase {
        &self.phase
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    /// Number of future voters whose ballots are already known.
    pub fn revealed(&self) -> usize {
        self.next
    }

    pub fn budget_used(&self) -> usize {
        self.used
    }

    /// Ballots currently in the final election (DV/AV) or in the left and
    /// right first rounds (PV).
    pub fn lists(&self) -> (&[Ballot], &[Ballot]) {
        (&self.lists[0], &self.lists[1])
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    pub fn is_done(&self) -> bool {
        self.phase == Phase::Done
    }

    pub fn legal_actions(&self) -> Vec<ChairAction> {
        match self.phase {
            Phase::Decide { .. } => {
                legal_chair_actions(self.inst.control, self.inst.budget_or_zero(), self.used, false)
            }
            _ => Vec::new(),
        }
    }

    pub fn apply(&mut self, action: ChairAction) -> Result<(), GameError> {
        let (voter, order) = match &self.phase {
            Phase::Decide { voter, order } => (voter.clone(), order.clone()),
            Phase::Reveal { .. } => return Err(GameError::NotRevealing),
            Phase::Done => return Err(GameError::Finished),
        };
        let legal = self.legal_actions();
        if !legal.contains(&action) {
            return Err(GameError::IllegalAction { action, legal });
        }
        match action {
            ChairAction::Keep | ChairAction::Add | ChairAction::Left => {
                self.lists[0].push(Ballot::new(voter.clone(), order))
            }
            ChairAction::Right => self.lists[1].push(Ballot::new(voter.clone(), order)),
            ChairAction::Delete | ChairAction::Skip => {}
        }
        if matches!(action, ChairAction::Delete | ChairAction::Add) {
            self.used += 1;
        }
        self.history.push(Move::Chair { voter, action });
        self.advance();
        Ok(())
    }

    /// Reveals the next future voter's ballot. Registered AV voters are
    /// counted at once; everyone else becomes a chair decision.
    pub fn reveal(&mut self, order: PreferenceOrder) -> Result<(), GameError> {
        let voter = match &self.phase {
            Phase::Reveal { voter } => voter.clone(),
            Phase::Decide { .. } => return Err(GameError::NotDeciding),
            Phase::Done => return Err(GameError::Finished),
        };
        order.check_total(&voter, &self.candidates)?;
        let registered = self.inst.future[self.next].registered == Some(true);
        self.next += 1;
        self.history.push(Move::Reveal {
            voter: voter.clone(),
            order: order.clone(),
        });
        if registered {
            self.lists[0].push(Ballot::new(voter, order));
            self.advance();
        } else {
            self.phase = Phase::Decide { voter, order };
        }
        Ok(())
    }

    fn advance(&mut self) {
        self.phase = match self.inst.future.get(self.next) {
            Some(f) => Phase::Reveal { voter: f.voter.clone() },
            None => Phase::Done,
        };
    }

    /// Winner set of the final election; for PV, the runoff winners.
    pub fn finalize_and_evaluate(&self) -> Result<CandidateSet, GameError> {
        if !self.is_done() {
            return Err(GameError::NotFinished);
        }
        Ok(self.final_winners())
    }

    pub fn partition_outcome(&self) -> Option<PartitionOutcome> {
        (self.inst.control == ControlType::PV)
            .then(|| run_two_round_tp(self.system, &self.candidates, &self.lists[0], &self.lists[1]))
    }

    fn final_winners(&self) -> CandidateSet {
        match self.inst.control {
            ControlType::PV => run_two_round_tp(self.system, &self.candidates, &self.lists[0], &self.lists[1]).runoff,
            _ => self.system.winners(&self.candidates, &self.lists[0]),
        }
    }

    /// True iff the chair's goal is met by the finished game.
    pub fn goal_met(&self) -> Result<bool, GameError> {
        Ok(goal_holds(&self.inst.goal(), &self.finalize_and_evaluate()?))
    }
}

/// The non-online partition question for a single candidate: the chair can
/// make the candidate win iff it wins the whole electorate in one round.
pub fn nononline_ccpv_one_candidate(
    system: &dyn ElectionSystem,
    candidates: &CandidateSet,
    ballots: &[Ballot],
) -> Result<bool, GameError> {
    if candidates.len() != 1 {
        return Err(GameError::NotOneCandidate(candidates.len()));
    }
    let c = candidates.first().unwrap();
    Ok(system.winners(candidates, ballots).contains(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{set, Plurality};
    use crate::systems::SystemId;

    fn order(s: &str) -> PreferenceOrder {
        PreferenceOrder::parse_chain(s)
    }

    fn names(v: &[&str]) -> Vec<CandidateName> {
        v.iter().map(|c| CandidateName::from(*c)).collect()
    }

    pub(crate) fn dv_instance() -> ControlInstance {
        ControlInstance {
            control: ControlType::DV,
            mode: GoalMode::Constructive,
            system: SystemId::Plurality,
            candidates: names(&["a", "b"]),
            sigma: order("a>b"),
            distinguished: "a".into(),
            budget: Some(1),
            past: vec![PastRecord {
                voter: "p1".into(),
                flag: PastFlag::Kept,
                ballot: Some(order("a>b")),
            }],
            current: CurrentVoter {
                voter: "u".into(),
                ballot: order("b>a"),
                registered: false,
            },
            future: vec![FutureVoter {
                voter: "f1".into(),
                registered: None,
            }],
        }
    }

    #[test]
    fn goal_examples() {
        let g = Goal::new(GoalMode::Constructive, &order("a>b>c"), &"b".into());
        assert!(goal_holds(&g, &set(&["c", "b"])));
        assert_eq!(g.up, set(&["a", "b"]));
        assert_eq!(g.down, set(&["b", "c"]));
        let g = Goal::new(GoalMode::Destructive, &order("a>b>c"), &"b".into());
        assert!(!goal_holds(&g, &set(&["c"])));
        assert!(goal_holds(&g, &set(&[])));
        assert!(goal_holds(&g, &set(&["a"])));
    }

    #[test]
    fn legal_action_examples() {
        assert_eq!(legal_chair_actions(ControlType::DV, 1, 1, false), vec![ChairAction::Keep]);
        assert_eq!(
            legal_chair_actions(ControlType::DV, 2, 1, false),
            vec![ChairAction::Keep, ChairAction::Delete]
        );
        assert_eq!(
            legal_chair_actions(ControlType::PV, 0, 5, false),
            vec![ChairAction::Left, ChairAction::Right]
        );
        assert!(legal_chair_actions(ControlType::AV, 3, 0, true).is_empty());
        assert_eq!(legal_chair_actions(ControlType::AV, 0, 0, false), vec![ChairAction::Skip]);
    }

    #[test]
    fn transitions() {
        let inst = dv_instance();
        let mut s = GameState::new(&inst).unwrap();
        assert_eq!(s.legal_actions(), vec![ChairAction::Keep, ChairAction::Delete]);
        assert_eq!(s.reveal(order("a>b")), Err(GameError::NotDeciding));
        s.apply(ChairAction::Delete).unwrap();
        assert_eq!(s.budget_used(), 1);
        assert_eq!(s.lists().0.len(), 1);
        assert_eq!(s.apply(ChairAction::Keep), Err(GameError::NotRevealing));
        assert!(s.reveal(order("a")).is_err());
        s.reveal(order("b>a")).unwrap();
        assert_eq!(s.legal_actions(), vec![ChairAction::Keep]);
        assert!(matches!(s.apply(ChairAction::Delete), Err(GameError::IllegalAction { .. })));
        assert_eq!(s.finalize_and_evaluate(), Err(GameError::NotFinished));
        s.apply(ChairAction::Keep).unwrap();
        assert_eq!(s.finalize_and_evaluate().unwrap(), set(&["a", "b"]));
        assert!(s.goal_met().unwrap());
        assert_eq!(s.history().len(), 3);
        assert_eq!(s.history()[0].to_string(), "chair delete u");
    }

    #[test]
    fn av_registered_future_votes_count_automatically() {
        let mut inst = dv_instance();
        inst.control = ControlType::AV;
        inst.past = vec![PastRecord {
            voter: "p1".into(),
            flag: PastFlag::Registered,
            ballot: Some(order("b>a")),
        }];
        inst.current.ballot = order("a>b");
        inst.future = vec![FutureVoter {
            voter: "f1".into(),
            registered: Some(true),
        }];
        let mut s = GameState::new(&inst).unwrap();
        s.apply(ChairAction::Add).unwrap();
        s.reveal(order("b>a")).unwrap();
        assert!(s.is_done());
        let voters: Vec<_> = s.lists().0.iter().map(|b| b.voter.as_str()).collect();
        assert_eq!(voters, ["p1", "u", "f1"]);
        assert_eq!(s.finalize_and_evaluate().unwrap(), set(&["b"]));
    }

    #[test]
    fn finalize_examples() {
        let c = set(&["a", "b"]);
        let kept = vec![Ballot::new("1", order("a>b"))];
        assert_eq!(Plurality.winners(&c, &kept), set(&["a"]));
        let av = vec![
            Ballot::new("r", order("b>a")),
            Ballot::new("x", order("a>b")),
            Ballot::new("y", order("a>b")),
        ];
        assert_eq!(Plurality.winners(&c, &av), set(&["a"]));
    }

    #[test]
    fn two_round_examples() {
        let c = set(&["a", "b", "c"]);
        let left = vec![Ballot::new("1", order("a>b>c"))];
        let right = vec![Ballot::new("2", order("b>a>c"))];
        let out = run_two_round_tp(&Plurality, &c, &left, &right);
        assert_eq!(out.w1, set(&["a"]));
        assert_eq!(out.w2, set(&["b"]));
        assert_eq!(out.runoff, set(&["a", "b"]));
        let swapped = run_two_round_tp(&Plurality, &c, &right, &left);
        assert_eq!(swapped.runoff, out.runoff);

        let out = run_two_round_tp(&Plurality, &c, &[], &right);
        assert_eq!(out.w1, c);
        assert!(out.runoff.is_subset(&out.w1.union(&out.w2).cloned().collect()));

        // a system with no winners on either side
        let r = set(&["RoundOne", "x2"]);
        let out = run_two_round_tp(&SystemId::RoundOne, &r, &[], &[]);
        assert!(out.w1.is_empty() && out.w2.is_empty() && out.runoff.is_empty());
    }

    #[test]
    fn validation_errors() {
        let mut inst = dv_instance();
        inst.past.push(PastRecord {
            voter: "p2".into(),
            flag: PastFlag::Deleted,
            ballot: None,
        });
        inst.past.push(PastRecord {
            voter: "p3".into(),
            flag: PastFlag::Deleted,
            ballot: None,
        });
        assert!(matches!(validate_instance(&inst), Err(InstanceError::OverBudget { spent: 2, .. })));

        let mut inst = dv_instance();
        inst.control = ControlType::AV;
        inst.past.clear();
        inst.future[0].registered = Some(false);
        inst.current.registered = true;
        let err = validate_instance(&inst).unwrap_err();
        assert_eq!(err.to_string(), "u must be unregistered");

        let mut inst = dv_instance();
        inst.past[0].ballot = None;
        assert!(matches!(validate_instance(&inst), Err(InstanceError::MissingBallot { .. })));

        let mut inst = dv_instance();
        inst.future[0].voter = "u".into();
        assert!(matches!(validate_instance(&inst), Err(InstanceError::DuplicateVoter(_))));

        let mut inst = dv_instance();
        inst.distinguished = "z".into();
        assert!(matches!(validate_instance(&inst), Err(InstanceError::UnknownDistinguished(_))));

        let mut inst = dv_instance();
        inst.sigma = order("a");
        assert!(matches!(validate_instance(&inst), Err(InstanceError::Sigma(_))));

        let mut inst = dv_instance();
        inst.past[0].flag = PastFlag::Left;
        assert!(matches!(validate_instance(&inst), Err(InstanceError::WrongFlag { .. })));

        let mut inst = dv_instance();
        inst.budget = None;
        assert!(matches!(validate_instance(&inst), Err(InstanceError::MissingBudget { .. })));
    }

    #[test]
    fn valid_pv_instance() {
        let mut inst = dv_instance();
        inst.control = ControlType::PV;
        inst.budget = None;
        inst.past[0].flag = PastFlag::Right;
        assert_eq!(validate_instance(&inst), Ok(()));
        let mut s = GameState::new(&inst).unwrap();
        s.apply(ChairAction::Left).unwrap();
        s.reveal(order("a>b")).unwrap();
        s.apply(ChairAction::Left).unwrap();
        let out = s.partition_outcome().unwrap();
        assert_eq!(out.w1, set(&["a", "b"]));
        assert_eq!(out.w2, set(&["a"]));
        assert_eq!(s.finalize_and_evaluate().unwrap(), set(&["a"]));
    }

    #[test]
    fn replay_is_deterministic() {
        let inst = dv_instance();
        let play = || {
            let mut s = GameState::new(&inst).unwrap();
            s.apply(ChairAction::Keep).unwrap();
            s.reveal(order("b>a")).unwrap();
            s.apply(ChairAction::Delete).unwrap();
            s.finalize_and_evaluate().unwrap()
        };
        assert_eq!(play(), play());
        assert_eq!(inst, dv_instance());
    }

    #[test]
    fn one_candidate_nononline_examples() {
        let c = set(&["c"]);
        assert!(nononline_ccpv_one_candidate(&Plurality, &c, &[Ballot::new("1", order("c"))]).unwrap());
        assert!(nononline_ccpv_one_candidate(&Plurality, &c, &[]).unwrap());
        let x = set(&["x1"]);
        assert!(!nononline_ccpv_one_candidate(&SystemId::Sat1c, &x, &[Ballot::new("1", order("x1"))]).unwrap());
        assert_eq!(
            nononline_ccpv_one_candidate(&Plurality, &set(&["a", "b"]), &[]),
            Err(GameError::NotOneCandidate(2))
        );
    }
}
