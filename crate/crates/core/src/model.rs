//! Candidates, ballots, preference masking and the plurality rule.
//!
//! Names are compared byte-wise, which is the order every "lexicographically
//! least" clause of the constructed election systems relies on. `str`'s
//! `Ord` is exactly that order, so the newtypes below derive it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A candidate name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CandidateName(Arc<str>);

/// A voter name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VoterName(Arc<str>);

macro_rules! name_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn new(name: impl AsRef<str>) -> Self {
                Self(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                Self(Arc::from(s))
            }
        }

        impl AsRef<str> for $ty {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", &*self.0)
            }
        }
    };
}

name_impls!(CandidateName);
name_impls!(VoterName);

/// A set of candidates, iterated in byte-wise name order.
pub type CandidateSet = BTreeSet<CandidateName>;

/// True iff `a` precedes `b` in byte-wise lexicographic order.
pub fn lex_less(a: &str, b: &str) -> bool {
    a.as_bytes() < b.as_bytes()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("empty candidate or voter name")]
    EmptyName,
    #[error("duplicate candidate {0}")]
    DuplicateCandidate(CandidateName),
    #[error("duplicate voter {0}")]
    DuplicateVoter(VoterName),
    #[error("ballot of {voter} ranks unknown candidate {candidate}")]
    UnknownCandidate {
        voter: VoterName,
        candidate: CandidateName,
    },
    #[error("ballot of {voter} ranks {candidate} twice")]
    RepeatedCandidate {
        voter: VoterName,
        candidate: CandidateName,
    },
    #[error("ballot of {voter} is incomplete: {missing} unranked")]
    IncompleteBallot {
        voter: VoterName,
        missing: CandidateName,
    },
    #[error("cannot mask to {0}: not ranked by the order")]
    MaskUnknown(CandidateName),
}

/// A total order over candidates, most preferred first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<CandidateName>", into = "Vec<CandidateName>")]
pub struct PreferenceOrder(Arc<[CandidateName]>);

impl PreferenceOrder {
    pub fn new(ranking: Vec<CandidateName>) -> Self {
        Self(ranking.into())
    }

    /// Parses `a>b>c`. Names are taken verbatim between separators.
    pub fn parse_chain(s: &str) -> Self {
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        Self::new(s.split('>').map(CandidateName::from).collect())
    }

    pub fn as_slice(&self) -> &[CandidateName] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Option<&CandidateName> {
        self.0.first()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CandidateName> {
        self.0.iter()
    }

    /// Restricts the order to `keep`, preserving relative order.
    pub fn mask(&self, keep: &CandidateSet) -> Result<PreferenceOrder, ModelError> {
        for c in keep {
            if !self.0.contains(c) {
                return Err(ModelError::MaskUnknown(c.clone()));
            }
        }
        Ok(self.mask_unchecked(keep))
    }

    pub(crate) fn mask_unchecked(&self, keep: &CandidateSet) -> PreferenceOrder {
        if keep.len() == self.0.len() {
            return self.clone();
        }
        Self::new(self.0.iter().filter(|c| keep.contains(*c)).cloned().collect())
    }

    /// Checks that the order ranks exactly the members of `candidates`.
    pub fn check_total(&self, voter: &VoterName, candidates: &CandidateSet) -> Result<(), ModelError> {
        let mut seen = CandidateSet::new();
        for c in self.0.iter() {
            if !candidates.contains(c) {
                return Err(ModelError::UnknownCandidate {
                    voter: voter.clone(),
                    candidate: c.clone(),
                });
            }
            if !seen.insert(c.clone()) {
                return Err(ModelError::RepeatedCandidate {
                    voter: voter.clone(),
                    candidate: c.clone(),
                });
            }
        }
        if let Some(missing) = candidates.difference(&seen).next() {
            return Err(ModelError::IncompleteBallot {
                voter: voter.clone(),
                missing: missing.clone(),
            });
        }
        Ok(())
    }
}

impl From<Vec<CandidateName>> for PreferenceOrder {
    fn from(v: Vec<CandidateName>) -> Self {
        Self::new(v)
    }
}

impl From<PreferenceOrder> for Vec<CandidateName> {
    fn from(o: PreferenceOrder) -> Self {
        o.0.to_vec()
    }
}

impl fmt::Display for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            f.write_str(c.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PreferenceOrder({self})")
    }
}

/// A named vote.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ballot {
    pub voter: VoterName,
    pub order: PreferenceOrder,
}

impl Ballot {
    pub fn new(voter: impl Into<VoterName>, order: PreferenceOrder) -> Self {
        Self {
            voter: voter.into(),
            order,
        }
    }
}

/// Every permutation of `candidates`, in lexicographic order of the
/// ascending candidate list.
pub fn all_orders(candidates: &CandidateSet) -> Vec<PreferenceOrder> {
    fn go(rest: &mut Vec<CandidateName>, prefix: &mut Vec<CandidateName>, out: &mut Vec<PreferenceOrder>) {
        if rest.is_empty() {
            out.push(PreferenceOrder::new(prefix.clone()));
            return;
        }
        for i in 0..rest.len() {
            let c = rest.remove(i);
            prefix.push(c);
            go(rest, prefix, out);
            let c = prefix.pop().unwrap();
            rest.insert(i, c);
        }
    }
    let mut rest: Vec<_> = candidates.iter().cloned().collect();
    let mut out = Vec::new();
    go(&mut rest, &mut Vec::new(), &mut out);
    out
}

/// One order per candidate: that candidate first, the rest ascending.
pub fn top_representatives(candidates: &CandidateSet) -> Vec<PreferenceOrder> {
    candidates
        .iter()
        .map(|top| {
            let mut v = vec![top.clone()];
            v.extend(candidates.iter().filter(|c| *c != top).cloned());
            PreferenceOrder::new(v)
        })
        .collect()
}

/// Checks names are non-empty and distinct and every ballot is a total
/// order over exactly the candidates.
pub fn validate_election(candidates: &[CandidateName], ballots: &[Ballot]) -> Result<(), ModelError> {
    let mut set = CandidateSet::new();
    for c in candidates {
        if c.as_str().is_empty() {
            return Err(ModelError::EmptyName);
        }
        if !set.insert(c.clone()) {
            return Err(ModelError::DuplicateCandidate(c.clone()));
        }
    }
    let mut voters = BTreeSet::new();
    for b in ballots {
        if b.voter.as_str().is_empty() {
            return Err(ModelError::EmptyName);
        }
        if !voters.insert(&b.voter) {
            return Err(ModelError::DuplicateVoter(b.voter.clone()));
        }
        b.order.check_total(&b.voter, &set)?;
    }
    Ok(())
}

/// Top-choice counts for every member of `candidates`.
pub fn plurality_scores(candidates: &CandidateSet, ballots: &[Ballot]) -> BTreeMap<CandidateName, usize> {
    let mut scores: BTreeMap<CandidateName, usize> = candidates.iter().map(|c| (c.clone(), 0)).collect();
    for b in ballots {
        if let Some(s) = b.order.top().and_then(|t| scores.get_mut(t)) {
            *s += 1;
        }
    }
    scores
}

/// All candidates attaining the maximum number of top choices.
pub fn plurality_winners(candidates: &CandidateSet, ballots: &[Ballot]) -> Result<CandidateSet, ModelError> {
    for b in ballots {
        b.order.check_total(&b.voter, candidates)?;
    }
    Ok(plurality_winners_unchecked(candidates, ballots))
}

pub(crate) fn plurality_winners_unchecked(candidates: &CandidateSet, ballots: &[Ballot]) -> CandidateSet {
    let scores = plurality_scores(candidates, ballots);
    let best = scores.values().copied().max().unwrap_or(0);
    scores
        .into_iter()
        .filter(|&(_, s)| s == best)
        .map(|(c, _)| c)
        .collect()
}

/// A winner rule together with the structural properties the solver may
/// exploit.
pub trait ElectionSystem: Sync {
    fn id(&self) -> &str;

    /// Winner set does not depend on voter names or list order.
    fn anonymous(&self) -> bool;

    /// Winner set depends only on each ballot's top choice.
    fn top_only(&self) -> bool;

    /// Must return a subset of `candidates`, and the empty set when
    /// `candidates` is empty. Ballots are assumed to be total orders over
    /// `candidates`.
    fn winners(&self, candidates: &CandidateSet, ballots: &[Ballot]) -> CandidateSet;
}

/// Nonunique-winner plurality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Plurality;

impl ElectionSystem for Plurality {
    fn id(&self) -> &str {
        "plurality"
    }

    fn anonymous(&self) -> bool {
        true
    }

    fn top_only(&self) -> bool {
        true
    }

    fn winners(&self, candidates: &CandidateSet, ballots: &[Ballot]) -> CandidateSet {
        plurality_winners_unchecked(candidates, ballots)
    }
}

#[cfg(test)]
pub(crate) fn set(names: &[&str]) -> CandidateSet {
    names.iter().map(|n| CandidateName::from(*n)).collect()
}
