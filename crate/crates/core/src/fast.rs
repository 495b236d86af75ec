//! Closed-form decisions for online plurality control by deleting or
//! adding voters. Linear in the instance size.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::game::{validate_instance, ChairAction, ControlInstance, ControlType, GoalMode, Goal, InstanceError};
use crate::model::{CandidateName, CandidateSet};
use crate::systems::SystemId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FastError {
    #[error("the fast algorithms need control {expected}, got {got}")]
    WrongControl { expected: &'static str, got: ControlType },
    #[error("the fast algorithms need the plurality system, got {0}")]
    WrongSystem(SystemId),
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

/// Top-choice counts over the ballots that currently count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable(BTreeMap<CandidateName, usize>);

impl ScoreTable {
    /// Kept (DV) or registered and added (AV) past ballots.
    pub fn from_past(inst: &ControlInstance) -> Self {
        let mut scores: BTreeMap<CandidateName, usize> = inst.candidates.iter().map(|c| (c.clone(), 0)).collect();
        for r in &inst.past {
            if let Some(top) = r.ballot.as_ref().and_then(|o| o.top()) {
                *scores.get_mut(top).expect("validated ballot") += 1;
            }
        }
        ScoreTable(scores)
    }

    pub fn get(&self, c: &CandidateName) -> usize {
        self.0.get(c).copied().unwrap_or(0)
    }

    pub fn bump(&mut self, c: &CandidateName) {
        *self.0.get_mut(c).expect("known candidate") += 1;
    }

    /// Highest score within `group`; 0 for an empty group.
    pub fn max_over(&self, group: &CandidateSet) -> usize {
        group.iter().map(|c| self.get(c)).max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

/// The chair's decision on `u` and whether she can guarantee the goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FastDecision {
    pub action: ChairAction,
    pub chair_wins: bool,
}

fn check(inst: &ControlInstance, control: ControlType, expected: &'static str) -> Result<(), FastError> {
    if inst.control != control {
        return Err(FastError::WrongControl {
            expected,
            got: inst.control,
        });
    }
    if inst.system != SystemId::Plurality {
        return Err(FastError::WrongSystem(inst.system));
    }
    validate_instance(inst)?;
    Ok(())
}

/// The chair's two candidate groups: the ones she must keep up with and
/// the ones that must not come out ahead.
fn groups(goal: &Goal, candidates: &CandidateSet) -> (CandidateSet, CandidateSet) {
    match goal.mode {
        // (Up, Λ)
        GoalMode::Constructive => (goal.up.clone(), candidates.difference(&goal.up).cloned().collect()),
        // (G, L)
        GoalMode::Destructive => (candidates.difference(&goal.down).cloned().collect(), goal.down.clone()),
    }
}

fn beats(mode: GoalMode, good: usize, threat: usize) -> bool {
    match mode {
        GoalMode::Constructive => good >= threat,
        GoalMode::Destructive => good > threat,
    }
}

/// Online plurality control by deleting voters.
pub fn fast_dv_decision(inst: &ControlInstance) -> Result<FastDecision, FastError> {
    check(inst, ControlType::DV, "DV")?;
    let candidates = inst.candidate_set();
    let goal = inst.goal();
    let (good, threat) = groups(&goal, &candidates);
    match goal.mode {
        GoalMode::Constructive if threat.is_empty() => {
            return Ok(FastDecision {
                action: ChairAction::Keep,
                chair_wins: true,
            })
        }
        GoalMode::Destructive if good.is_empty() => {
            return Ok(FastDecision {
                action: ChairAction::Keep,
                chair_wins: false,
            })
        }
        _ => {}
    }
    let mut scores = ScoreTable::from_past(inst);
    let r = inst.budget_or_zero() - inst.past_spent();
    let top = inst.current.ballot.top().expect("validated ballot");
    let delete = r > 0 && threat.contains(top) && scores.get(top) == scores.max_over(&threat);
    let r_after = r - usize::from(delete);
    if !delete {
        scores.bump(top);
    }
    // Every future voter backs the strongest threat; the chair deletes as
    // many of them as the remaining budget allows.
    let threat_final = scores.max_over(&threat) + inst.future.len().saturating_sub(r_after);
    Ok(FastDecision {
        action: if delete { ChairAction::Delete } else { ChairAction::Keep },
        chair_wins: beats(goal.mode, scores.max_over(&good), threat_final),
    })
}

/// Online plurality control by adding voters.
pub fn fast_av_decision(inst: &ControlInstance) -> Result<FastDecision, FastError> {
    check(inst, ControlType::AV, "AV")?;
    let candidates = inst.candidate_set();
    let goal = inst.goal();
    let (good, threat) = groups(&goal, &candidates);
    match goal.mode {
        GoalMode::Constructive if threat.is_empty() => {
            return Ok(FastDecision {
                action: ChairAction::Skip,
                chair_wins: true,
            })
        }
        GoalMode::Destructive if good.is_empty() => {
            return Ok(FastDecision {
                action: ChairAction::Skip,
                chair_wins: false,
            })
        }
        _ => {}
    }
    let mut scores = ScoreTable::from_past(inst);
    let r = inst.budget_or_zero() - inst.past_spent();
    let top = inst.current.ballot.top().expect("validated ballot");
    let add = r > 0 && good.contains(top);
    if add {
        scores.bump(top);
    }
    // Registered future voters all back the strongest threat; unregistered
    // ones are simply never added.
    let registered_future = inst.future.iter().filter(|f| f.registered == Some(true)).count();
    let threat_final = scores.max_over(&threat) + registered_future;
    Ok(FastDecision {
        action: if add { ChairAction::Add } else { ChairAction::Skip },
        chair_wins: beats(goal.mode, scores.max_over(&good), threat_final),
    })
}

pub fn fast_dv(inst: &ControlInstance) -> Result<bool, FastError> {
    fast_dv_decision(inst).map(|d| d.chair_wins)
}

pub fn fast_av(inst: &ControlInstance) -> Result<bool, FastError> {
    fast_av_decision(inst).map(|d| d.chair_wins)
}

/// Dispatches on the control type; PV has no fast algorithm.
pub fn fast_decide(inst: &ControlInstance) -> Result<FastDecision, FastError> {
    match inst.control {
        ControlType::DV => fast_dv_decision(inst),
        ControlType::AV => fast_av_decision(inst),
        ControlType::PV => Err(FastError::WrongControl {
            expected: "DV or AV",
            got: ControlType::PV,
        }),
    }
}
