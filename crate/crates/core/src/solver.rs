//! Exact solving by alternating search: the chair's decisions are
//! existential, revealed votes are universal over every preference order.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{
    goal_holds, legal_chair_actions, run_two_round_tp, ChairAction, ControlInstance, ControlType, GameError,
    GameState, Goal, InstanceError, Phase,
};
use crate::model::{all_orders, top_representatives, Ballot, CandidateSet, ElectionSystem, PreferenceOrder, VoterName};

pub const DEFAULT_MAX_CANDIDATES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest candidate count for which future votes are enumerated.
    pub max_candidates: usize,
    /// Branch only on one representative order per top choice.
    pub top_only_reduction: bool,
    /// Share results between positions with the same anonymous state.
    pub memoize: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            top_only_reduction: false,
            memoize: false,
        }
    }
}

impl SolverConfig {
    /// Default cap with every shortcut the system and control type permit.
    pub fn auto_for(control: ControlType, system: &dyn ElectionSystem) -> Self {
        SolverConfig {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            top_only_reduction: top_only_permitted(control, system),
            memoize: system.anonymous(),
        }
    }

    pub fn with_max_candidates(mut self, cap: usize) -> Self {
        self.max_candidates = cap;
        self
    }

    pub fn check(&self, control: ControlType, system: &dyn ElectionSystem) -> Result<(), SolveError> {
        if self.top_only_reduction && !top_only_permitted(control, system) {
            return Err(SolveError::ReductionNotPermitted {
                system: system.id().to_string(),
                control,
            });
        }
        if self.memoize && !system.anonymous() {
            return Err(SolveError::MemoNotPermitted {
                system: system.id().to_string(),
            });
        }
        Ok(())
    }
}

fn top_only_permitted(control: ControlType, system: &dyn ElectionSystem) -> bool {
    system.top_only() && matches!(control, ControlType::DV | ControlType::AV)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Answer {
    ChairWins,
    ChairLoses,
}

impl Answer {
    pub fn from_bool(wins: bool) -> Self {
        if wins {
            Answer::ChairWins
        } else {
            Answer::ChairLoses
        }
    }

    pub fn chair_wins(self) -> bool {
        self == Answer::ChairWins
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::ChairWins => "chair-wins",
            Answer::ChairLoses => "chair-loses",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    /// A first chair action that keeps the win, when there is one.
    pub witness: Option<ChairAction>,
    pub stats: SolveStats,
}

impl Verdict {
    pub fn chair_wins(&self) -> bool {
        self.answer.chair_wins()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("{candidates} candidates exceed the cap of {cap} for enumerating future votes")]
    CapExceeded { candidates: usize, cap: usize },
    #[error("top-only reduction is not sound for system {system} under {control}")]
    ReductionNotPermitted { system: String, control: ControlType },
    #[error("memoization is not sound for the name-sensitive system {system}")]
    MemoNotPermitted { system: String },
    #[error("the chair cannot guarantee the goal from here")]
    ChairLoses,
    #[error("no chair decision is pending")]
    NoDecision,
    #[error("no vote is about to be revealed")]
    NoReveal,
}

impl From<InstanceError> for SolveError {
    fn from(e: InstanceError) -> Self {
        SolveError::Game(GameError::Instance(e))
    }
}

/// Decides the instance with its own election system.
pub fn solve(inst: &ControlInstance, cfg: &SolverConfig) -> Result<Verdict, SolveError> {
    solve_with(inst, &inst.system, cfg)
}

/// Decides the instance, evaluating final elections with `system`.
pub fn solve_with(inst: &ControlInstance, system: &dyn ElectionSystem, cfg: &SolverConfig) -> Result<Verdict, SolveError> {
    let state = GameState::with_system(inst, system)?;
    solve_from(&state, system, cfg)
}

/// Value of an arbitrary position for the chair.
pub fn solve_state(state: &GameState<'_>, cfg: &SolverConfig) -> Result<Verdict, SolveError> {
    solve_from(state, &state.instance().system, cfg)
}

fn solve_from(state: &GameState<'_>, system: &dyn ElectionSystem, cfg: &SolverConfig) -> Result<Verdict, SolveError> {
    let inst = state.instance();
    cfg.check(inst.control, system)?;
    let mut engine = Engine::new(state, system, cfg)?;
    let (wins, witness) = match state.phase().clone() {
        Phase::Decide { voter, order } => {
            let mut witness = None;
            for action in engine.actions(false) {
                if engine.decide_with(&voter, &order, action, 1) {
                    witness = Some(action);
                    break;
                }
            }
            (witness.is_some(), witness)
        }
        Phase::Reveal { .. } | Phase::Done => (engine.reveal_point(0), None),
    };
    Ok(Verdict {
        answer: Answer::from_bool(wins),
        witness,
        stats: SolveStats {
            nodes: engine.nodes,
            max_depth: engine.max_depth,
        },
    })
}

/// A first action that keeps the chair winning; ties go to the earlier
/// action in keep, delete, skip, add, left, right order.
pub fn best_action(inst: &ControlInstance, cfg: &SolverConfig) -> Result<ChairAction, SolveError> {
    let v = solve(inst, cfg)?;
    v.witness.ok_or(SolveError::ChairLoses)
}

/// Same as [`best_action`] from any decision point.
pub fn best_action_at(state: &GameState<'_>, cfg: &SolverConfig) -> Result<ChairAction, SolveError> {
    if !matches!(state.phase(), Phase::Decide { .. }) {
        return Err(SolveError::NoDecision);
    }
    solve_state(state, cfg)?.witness.ok_or(SolveError::ChairLoses)
}

/// A ballot for the next revealed voter that leaves the chair losing, or
/// the first order in enumeration if none does.
pub fn adversary_best_reply(state: &GameState<'_>, cfg: &SolverConfig) -> Result<PreferenceOrder, SolveError> {
    if !matches!(state.phase(), Phase::Reveal { .. }) {
        return Err(SolveError::NoReveal);
    }
    let orders = all_orders(state.candidates());
    for order in &orders {
        let mut next = state.clone();
        next.reveal(order.clone())?;
        if !solve_state(&next, cfg)?.chair_wins() {
            return Ok(order.clone());
        }
    }
    Ok(orders[0].clone())
}

/// Search state with push/pop updates on the ballot lists.
struct Engine<'s> {
    system: &'s dyn ElectionSystem,
    control: ControlType,
    budget: usize,
    candidates: CandidateSet,
    goal: Goal,
    future: Vec<(VoterName, bool)>,
    /// Orders the adversary may reveal, with their memo class.
    branch: Vec<(PreferenceOrder, u16)>,
    lists: [Vec<Ballot>; 2],
    used: usize,
    next: usize,
    memo: Option<Memo>,
    nodes: u64,
    max_depth: usize,
}

struct Memo {
    classes: usize,
    top_only: bool,
    order_ids: HashMap<PreferenceOrder, u16>,
    counts: [Vec<u16>; 2],
    table: HashMap<Box<[u16]>, bool>,
    key: Vec<u16>,
}

impl Memo {
    fn class_of(&self, candidates: &CandidateSet, order: &PreferenceOrder) -> u16 {
        if self.top_only {
            let top = order.top().expect("nonempty ballot");
            candidates.iter().position(|c| c == top).unwrap() as u16
        } else {
            self.order_ids[order]
        }
    }
}

impl<'s> Engine<'s> {
    fn new(state: &GameState<'_>, system: &'s dyn ElectionSystem, cfg: &SolverConfig) -> Result<Self, SolveError> {
        let inst = state.instance();
        let candidates = state.candidates().clone();
        let next = state.revealed();
        let future_left = next < inst.future.len();
        if future_left && candidates.len() > cfg.max_candidates && candidates.len() > 1 {
            return Err(SolveError::CapExceeded {
                candidates: candidates.len(),
                cap: cfg.max_candidates,
            });
        }
        let (left, right) = state.lists();
        let mut engine = Engine {
            system,
            control: inst.control,
            budget: inst.budget_or_zero(),
            goal: inst.goal(),
            future: inst
                .future
                .iter()
                .map(|f| (f.voter.clone(), f.registered == Some(true)))
                .collect(),
            branch: Vec::new(),
            lists: [left.to_vec(), right.to_vec()],
            used: state.budget_used(),
            next,
            memo: None,
            nodes: 0,
            max_depth: 0,
            candidates,
        };
        if !future_left {
            return Ok(engine);
        }
        let orders = if cfg.top_only_reduction {
            top_representatives(&engine.candidates)
        } else {
            all_orders(&engine.candidates)
        };
        if cfg.memoize {
            let order_ids = if cfg.top_only_reduction {
                HashMap::new()
            } else {
                orders.iter().enumerate().map(|(i, o)| (o.clone(), i as u16)).collect()
            };
            let mut memo = Memo {
                classes: if cfg.top_only_reduction {
                    engine.candidates.len()
                } else {
                    orders.len()
                },
                top_only: cfg.top_only_reduction,
                order_ids,
                counts: [Vec::new(), Vec::new()],
                table: HashMap::new(),
                key: Vec::new(),
            };
            for side in 0..2 {
                let mut counts = vec![0u16; memo.classes];
                for b in &engine.lists[side] {
                    counts[memo.class_of(&engine.candidates, &b.order) as usize] += 1;
                }
                memo.counts[side] = counts;
            }
            engine.branch = orders
                .into_iter()
                .map(|o| {
                    let class = memo.class_of(&engine.candidates, &o);
                    (o, class)
                })
                .collect();
            engine.memo = Some(memo);
        } else {
            engine.branch = orders.into_iter().map(|o| (o, 0)).collect();
        }
        Ok(engine)
    }

    fn actions(&self, registered: bool) -> Vec<ChairAction> {
        legal_chair_actions(self.control, self.budget, self.used, registered)
    }

    fn push(&mut self, side: usize, ballot: Ballot, class: u16) {
        self.lists[side].push(ballot);
        if let Some(m) = &mut self.memo {
            m.counts[side][class as usize] += 1;
        }
    }

    fn pop(&mut self, side: usize, class: u16) {
        self.lists[side].pop();
        if let Some(m) = &mut self.memo {
            m.counts[side][class as usize] -= 1;
        }
    }

    fn class_of(&self, order: &PreferenceOrder) -> u16 {
        match &self.memo {
            Some(m) => m.class_of(&self.candidates, order),
            None => 0,
        }
    }

    /// Applies `action` to the voter with `order`, evaluates the rest of
    /// the game, and undoes the action.
    fn decide_with(&mut self, voter: &VoterName, order: &PreferenceOrder, action: ChairAction, depth: usize) -> bool {
        let class = self.class_of(order);
        self.decide_class(voter, order, class, action, depth)
    }

    fn decide_class(&mut self, voter: &VoterName, order: &PreferenceOrder, class: u16, action: ChairAction, depth: usize) -> bool {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        let side = match action {
            ChairAction::Keep | ChairAction::Add | ChairAction::Left => Some(0),
            ChairAction::Right => Some(1),
            ChairAction::Delete | ChairAction::Skip => None,
        };
        let spends = matches!(action, ChairAction::Delete | ChairAction::Add);
        if let Some(side) = side {
            self.push(side, Ballot::new(voter.clone(), order.clone()), class);
        }
        if spends {
            self.used += 1;
        }
        let value = self.reveal_point(depth + 1);
        if spends {
            self.used -= 1;
        }
        if let Some(side) = side {
            self.pop(side, class);
        }
        value
    }

    /// Value at a point where the next future voter (if any) is revealed.
    fn reveal_point(&mut self, depth: usize) -> bool {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if let Some(m) = &mut self.memo {
            m.key.clear();
            m.key.push(self.next as u16);
            m.key.push(self.used as u16);
            m.key.extend_from_slice(&m.counts[0]);
            m.key.extend_from_slice(&m.counts[1]);
            if let Some(&v) = m.table.get(m.key.as_slice()) {
                return v;
            }
        }
        let value = if self.next == self.future.len() {
            self.leaf()
        } else {
            self.reveal_all(depth)
        };
        if let Some(m) = &mut self.memo {
            m.key.clear();
            m.key.push(self.next as u16);
            m.key.push(self.used as u16);
            m.key.extend_from_slice(&m.counts[0]);
            m.key.extend_from_slice(&m.counts[1]);
            m.table.insert(m.key.clone().into_boxed_slice(), value);
        }
        value
    }

    fn reveal_all(&mut self, depth: usize) -> bool {
        let (voter, registered) = self.future[self.next].clone();
        let automatic = registered && self.control == ControlType::AV;
        self.next += 1;
        let mut all = true;
        for i in 0..self.branch.len() {
            let (order, class) = self.branch[i].clone();
            let value = if automatic {
                self.push(0, Ballot::new(voter.clone(), order), class);
                let v = self.reveal_point(depth + 1);
                self.pop(0, class);
                v
            } else {
                self.actions(false)
                    .into_iter()
                    .any(|a| self.decide_class(&voter, &order, class, a, depth + 1))
            };
            if !value {
                all = false;
                break;
            }
        }
        self.next -= 1;
        all
    }

    fn leaf(&self) -> bool {
        let winners = match self.control {
            ControlType::PV => run_two_round_tp(self.system, &self.candidates, &self.lists[0], &self.lists[1]).runoff,
            _ => self.system.winners(&self.candidates, &self.lists[0]),
        };
        goal_holds(&self.goal, &winners)
    }
}
