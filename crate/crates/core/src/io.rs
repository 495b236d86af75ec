//! JSON files for control instances and plain elections.
//!
//! Instance document:
//!
//! ```json
//! {
//!   "control": "DV",
//!   "mode": "constructive",
//!   "system": "plurality",
//!   "candidates": ["a", "b"],
//!   "sigma": ["a", "b"],
//!   "distinguished": "a",
//!   "budget": 1,
//!   "past": [{"voter": "p1", "flag": "kept", "ballot": ["a", "b"]}],
//!   "current": {"voter": "u", "ballot": ["b", "a"]},
//!   "future": [{"voter": "f1"}]
//! }
//! ```
//!
//! `budget` appears for DV and AV only, `ballot` on a past record exactly
//! when its flag keeps a ballot, and `registered` on future voters exactly
//! under AV. Unknown keys are rejected.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{
    validate_instance, ControlInstance, ControlType, CurrentVoter, FutureVoter, GoalMode, InstanceError, PastFlag,
    PastRecord,
};
use crate::model::{validate_election, Ballot, CandidateName, ModelError, PreferenceOrder, VoterName};
use crate::systems::SystemId;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    Invalid(#[from] InstanceError),
    #[error("invalid election: {0}")]
    Election(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PastDto {
    voter: VoterName,
    flag: PastFlag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ballot: Option<PreferenceOrder>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurrentDto {
    voter: VoterName,
    ballot: PreferenceOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    registered: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FutureDto {
    voter: VoterName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    registered: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDto {
    control: ControlType,
    mode: GoalMode,
    system: SystemId,
    candidates: Vec<CandidateName>,
    sigma: PreferenceOrder,
    distinguished: CandidateName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget: Option<usize>,
    #[serde(default)]
    past: Vec<PastDto>,
    current: CurrentDto,
    #[serde(default)]
    future: Vec<FutureDto>,
}

impl From<&ControlInstance> for InstanceDto {
    fn from(inst: &ControlInstance) -> Self {
        InstanceDto {
            control: inst.control,
            mode: inst.mode,
            system: inst.system,
            candidates: inst.candidates.clone(),
            sigma: inst.sigma.clone(),
            distinguished: inst.distinguished.clone(),
            budget: inst.budget,
            past: inst
                .past
                .iter()
                .map(|r| PastDto {
                    voter: r.voter.clone(),
                    flag: r.flag,
                    ballot: r.ballot.clone(),
                })
                .collect(),
            current: CurrentDto {
                voter: inst.current.voter.clone(),
                ballot: inst.current.ballot.clone(),
                registered: (inst.control == ControlType::AV || inst.current.registered)
                    .then_some(inst.current.registered),
            },
            future: inst
                .future
                .iter()
                .map(|f| FutureDto {
                    voter: f.voter.clone(),
                    registered: f.registered,
                })
                .collect(),
        }
    }
}

impl TryFrom<InstanceDto> for ControlInstance {
    type Error = IoError;

    fn try_from(dto: InstanceDto) -> Result<Self, IoError> {
        let parse = |msg: String| Err(IoError::Parse(msg));
        match (dto.control, dto.budget) {
            (ControlType::PV, Some(_)) => return parse("\"budget\" is not allowed for PV".into()),
            (ControlType::DV | ControlType::AV, None) => {
                return parse(format!("\"budget\" is required for {}", dto.control))
            }
            _ => {}
        }
        for r in &dto.past {
            match (r.flag.carries_ballot(), &r.ballot) {
                (true, None) => return parse(format!("past voter {} flagged {:?} needs a \"ballot\"", r.voter, r.flag)),
                (false, Some(_)) => {
                    return parse(format!("past voter {} flagged {:?} must not have a \"ballot\"", r.voter, r.flag))
                }
                _ => {}
            }
        }
        let av = dto.control == ControlType::AV;
        for f in &dto.future {
            if av != f.registered.is_some() {
                return parse(format!(
                    "future voter {}: \"registered\" must be given exactly for AV instances",
                    f.voter
                ));
            }
        }
        Ok(ControlInstance {
            control: dto.control,
            mode: dto.mode,
            system: dto.system,
            candidates: dto.candidates,
            sigma: dto.sigma,
            distinguished: dto.distinguished,
            budget: dto.budget,
            past: dto
                .past
                .into_iter()
                .map(|r| PastRecord {
                    voter: r.voter,
                    flag: r.flag,
                    ballot: r.ballot,
                })
                .collect(),
            current: CurrentVoter {
                voter: dto.current.voter,
                ballot: dto.current.ballot,
                registered: dto.current.registered.unwrap_or(false),
            },
            future: dto
                .future
                .into_iter()
                .map(|f| FutureVoter {
                    voter: f.voter,
                    registered: f.registered,
                })
                .collect(),
        })
    }
}

pub fn instance_to_json(inst: &ControlInstance) -> String {
    serde_json::to_string_pretty(&InstanceDto::from(inst)).expect("instance serializes")
}

/// Parses and validates an instance document.
pub fn instance_from_json(text: &str) -> Result<ControlInstance, IoError> {
    let dto: InstanceDto = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let inst = ControlInstance::try_from(dto)?;
    validate_instance(&inst)?;
    Ok(inst)
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<ControlInstance, IoError> {
    instance_from_json(&read(path.as_ref())?)
}

pub fn store_instance(inst: &ControlInstance, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    let mut text = instance_to_json(inst);
    text.push('\n');
    fs::write(path, text).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BallotDto {
    voter: VoterName,
    order: PreferenceOrder,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElectionDto {
    candidates: Vec<CandidateName>,
    #[serde(default)]
    ballots: Vec<BallotDto>,
}

/// A plain election: `{"candidates": [...], "ballots": [{"voter", "order"}]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionFile {
    pub candidates: Vec<CandidateName>,
    pub ballots: Vec<Ballot>,
}

impl ElectionFile {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let dto: ElectionDto = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
        let ballots: Vec<Ballot> = dto.ballots.into_iter().map(|b| Ballot::new(b.voter, b.order)).collect();
        validate_election(&dto.candidates, &ballots)?;
        Ok(ElectionFile {
            candidates: dto.candidates,
            ballots,
        })
    }

    pub fn to_json(&self) -> String {
        let dto = ElectionDto {
            candidates: self.candidates.clone(),
            ballots: self
                .ballots
                .iter()
                .map(|b| BallotDto {
                    voter: b.voter.clone(),
                    order: b.order.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("election serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IoError> {
        Self::from_json(&read(path.as_ref())?)
    }
}
