//! Fixed and seeded test corpora: the exhaustive small plurality space,
//! formula lists for the reduction suites, and random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::game::{ControlInstance, ControlType, CurrentVoter, FutureVoter, GoalMode, PastFlag, PastRecord};
use crate::model::{all_orders, CandidateName, CandidateSet, PreferenceOrder};
use crate::systems::SystemId;

/// Bounds of the exhaustively enumerated plurality space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceBounds {
    pub max_candidates: usize,
    pub max_past: usize,
    pub max_future: usize,
    pub max_budget: usize,
}

impl Default for SpaceBounds {
    fn default() -> Self {
        SpaceBounds {
            max_candidates: 3,
            max_past: 2,
            max_future: 3,
            max_budget: 2,
        }
    }
}

/// `a`, `b`, `c`, ...
pub fn canonical_candidates(n: usize) -> Vec<CandidateName> {
    (0..n).map(|i| CandidateName::new(((b'a' + i as u8) as char).to_string())).collect()
}

fn past_options(control: ControlType, orders: &[PreferenceOrder]) -> Vec<(PastFlag, Option<PreferenceOrder>)> {
    let flags: &[PastFlag] = match control {
        ControlType::DV => &[PastFlag::Kept, PastFlag::Deleted],
        ControlType::AV => &[PastFlag::Registered, PastFlag::Added, PastFlag::Skipped],
        ControlType::PV => &[PastFlag::Left, PastFlag::Right],
    };
    let mut out = Vec::new();
    for &flag in flags {
        if flag.carries_ballot() {
            out.extend(orders.iter().map(|o| (flag, Some(o.clone()))));
        } else {
            out.push((flag, None));
        }
    }
    out
}

fn past_sequences(options: &[(PastFlag, Option<PreferenceOrder>)], max_len: usize) -> Vec<Vec<PastRecord>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<PastRecord>> = vec![Vec::new()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for (flag, ballot) in options {
                let mut s = seq.clone();
                s.push(PastRecord {
                    voter: format!("p{len}").into(),
                    flag: *flag,
                    ballot: ballot.clone(),
                });
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn future_patterns(control: ControlType, max_len: usize) -> Vec<Vec<FutureVoter>> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        let name = |i: usize| format!("f{}", i + 1).into();
        if control == ControlType::AV {
            for mask in 0..1u32 << len {
                out.push(
                    (0..len)
                        .map(|i| FutureVoter {
                            voter: name(i),
                            registered: Some(mask >> i & 1 == 1),
                        })
                        .collect(),
                );
            }
        } else {
            out.push((0..len).map(|i| FutureVoter { voter: name(i), registered: None }).collect());
        }
    }
    out
}

/// Visits every plurality DV/AV instance of the space with its budget set
/// to the smallest legal value; callers vary the budget from there up to
/// `bounds.max_budget`. Bases whose past already overspends the largest
/// budget are skipped.
pub fn for_each_plurality_base(bounds: SpaceBounds, mut visit: impl FnMut(&mut ControlInstance)) {
    for control in [ControlType::DV, ControlType::AV] {
        for mode in [GoalMode::Constructive, GoalMode::Destructive] {
            for n in 1..=bounds.max_candidates {
                let candidates = canonical_candidates(n);
                let cset: CandidateSet = candidates.iter().cloned().collect();
                let orders = all_orders(&cset);
                let pasts = past_sequences(&past_options(control, &orders), bounds.max_past);
                let futures = future_patterns(control, bounds.max_future);
                for sigma in &orders {
                    for d in sigma.iter() {
                        for past in &pasts {
                            let spent = past.iter().filter(|r| r.flag.spends_budget()).count();
                            if spent > bounds.max_budget {
                                continue;
                            }
                            for u in &orders {
                                for future in &futures {
                                    let mut inst = ControlInstance {
                                        control,
                                        mode,
                                        system: SystemId::Plurality,
                                        candidates: candidates.clone(),
                                        sigma: sigma.clone(),
                                        distinguished: d.clone(),
                                        budget: Some(spent),
                                        past: past.clone(),
                                        current: CurrentVoter {
                                            voter: "u".into(),
                                            ballot: u.clone(),
                                            registered: false,
                                        },
                                        future: future.clone(),
                                    };
                                    visit(&mut inst);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Every instance of the space, budgets included.
pub fn for_each_plurality_instance(bounds: SpaceBounds, mut visit: impl FnMut(&ControlInstance)) {
    for_each_plurality_base(bounds, |inst| {
        let lowest = inst.budget.unwrap_or(0);
        for k in lowest..=bounds.max_budget {
            inst.budget = Some(k);
            visit(inst);
        }
    });
}

fn literals(var: u32) -> [Formula; 2] {
    [Formula::var(var), Formula::not(Formula::var(var))]
}

fn binaries(l: &[Formula], r: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::new();
    for a in l {
        for b in r {
            out.push(Formula::and(a.clone(), b.clone()));
            out.push(Formula::or(a.clone(), b.clone()));
        }
    }
    out
}

/// Formulas over `x1..xk` (k ≤ 3, every variable occurring) for the
/// satisfiability and tautology suites.
pub fn small_formula_corpus() -> Vec<Formula> {
    let [x1, nx1] = literals(1);
    let mut out = vec![
        x1.clone(),
        nx1.clone(),
        Formula::and(x1.clone(), nx1.clone()),
        Formula::or(x1.clone(), nx1.clone()),
    ];
    let two = binaries(&literals(1), &literals(2));
    out.extend(two.iter().cloned());
    out.extend(two.iter().map(|f| Formula::not(f.clone())));
    for f in binaries(&[Formula::and(Formula::var(1), Formula::var(2)), Formula::or(Formula::var(1), Formula::var(2))], &literals(3)) {
        out.push(f);
    }
    for s in [
        "((x1|x2)&(!x1|x3))",
        "((x1&!x2)|(x2&x3))",
        "(!x1&(x2|!x3))",
        "((x1|!x1)&(x2|x3))",
        "(((x1|x2)|x3)|!x3)",
        "((x1&x2)&(x3&!x1))",
        "(x1|(x2|x3))",
        "!((x1|x2)|x3)",
    ] {
        out.push(Formula::parse(s).expect("corpus formula"));
    }
    out
}

/// Formulas over `x1, x2` with `x2` occurring: the one-round quantifier
/// prefix `∃x1 ∀x2`.
pub fn qbf_corpus_l1() -> Vec<Formula> {
    let mut out = literals(2).to_vec();
    let l1 = literals(1);
    let l2 = literals(2);
    let forward = binaries(&l1, &l2);
    out.extend(forward.iter().cloned());
    out.extend(binaries(&l2, &l1));
    out.extend(forward.iter().map(|f| Formula::not(f.clone())));
    out.push(Formula::and(Formula::var(2), Formula::not(Formula::var(2))));
    out.push(Formula::or(Formula::var(2), Formula::not(Formula::var(2))));
    out
}

fn random_formula(rng: &mut ChaCha8Rng, vars: u32, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let v = Formula::var(rng.gen_range(1..=vars));
        return if rng.gen_bool(0.5) { Formula::not(v) } else { v };
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, vars, depth - 1)),
        1 | 2 => Formula::and(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)),
        _ => Formula::or(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)),
    }
}

/// `count` seeded random formulas over `x1..x2ℓ` with `x2ℓ` occurring.
pub fn qbf_corpus_random(ell: u32, count: usize, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 2 * ell;
    (0..count)
        .map(|_| {
            let f = random_formula(&mut rng, top, 3);
            if f.variables().contains(&top) {
                f
            } else {
                let last = if rng.gen_bool(0.5) {
                    Formula::var(top)
                } else {
                    Formula::not(Formula::var(top))
                };
                if rng.gen_bool(0.5) {
                    Formula::and(f, last)
                } else {
                    Formula::or(f, last)
                }
            }
        })
        .collect()
}

/// Shape of a random plurality instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub control: ControlType,
    pub mode: GoalMode,
    pub candidates: usize,
    pub past: usize,
    pub future: usize,
    /// Ignored for PV.
    pub budget: usize,
}

/// A valid plurality instance drawn from `seed`: ballots uniform over all
/// orders, flags uniform among those the budget still allows.
pub fn random_instance(p: RandomParams, seed: u64) -> ControlInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = canonical_candidates(p.candidates.max(1));
    let cset: CandidateSet = candidates.iter().cloned().collect();
    let orders = all_orders(&cset);
    let pick = |rng: &mut ChaCha8Rng| orders.choose(rng).unwrap().clone();
    let sigma = pick(&mut rng);
    let distinguished = sigma.as_slice().choose(&mut rng).unwrap().clone();
    let flags: &[PastFlag] = match p.control {
        ControlType::DV => &[PastFlag::Kept, PastFlag::Deleted],
        ControlType::AV => &[PastFlag::Registered, PastFlag::Added, PastFlag::Skipped],
        ControlType::PV => &[PastFlag::Left, PastFlag::Right],
    };
    let budget = (p.control != ControlType::PV).then_some(p.budget);
    let mut spent = 0;
    let width = p.past.to_string().len();
    let mut past = Vec::with_capacity(p.past);
    for i in 1..=p.past {
        let allowed: Vec<PastFlag> = flags
            .iter()
            .copied()
            .filter(|f| !f.spends_budget() || spent < p.budget)
            .collect();
        let flag = *allowed.choose(&mut rng).unwrap();
        if flag.spends_budget() {
            spent += 1;
        }
        past.push(PastRecord {
            voter: format!("p{i:0width$}").into(),
            flag,
            ballot: flag.carries_ballot().then(|| pick(&mut rng)),
        });
    }
    let current = CurrentVoter {
        voter: "u".into(),
        ballot: pick(&mut rng),
        registered: false,
    };
    let width = p.future.to_string().len();
    let future = (1..=p.future)
        .map(|i| FutureVoter {
            voter: format!("v{i:0width$}").into(),
            registered: (p.control == ControlType::AV).then(|| rng.gen_bool(0.5)),
        })
        .collect();
    ControlInstance {
        control: p.control,
        mode: p.mode,
        system: SystemId::Plurality,
        candidates,
        sigma,
        distinguished,
        budget,
        past,
        current,
        future,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::validate_instance;
    use std::collections::BTreeSet;

    #[test]
    fn small_space_counts() {
        let bounds = SpaceBounds {
            max_candidates: 2,
            max_past: 1,
            max_future: 1,
            max_budget: 1,
        };
        let mut n = 0;
        for_each_plurality_instance(bounds, |inst| {
            validate_instance(inst).unwrap();
            n += 1;
        });
        // DV: per mode, |C|=1: σ·d 1, past {[], kept, deleted} with budgets
        // {0,1},{0,1},{1} = 5 pairs, u 1, future 2 → 10; |C|=2: σ·d 4, past
        // [] 2, kept×2 4, deleted 1 → 7 pairs, u 2, future 2 → 112.
        // AV: |C|=1: past [] 2, reg 2, added 1, skipped 2 → 7, future 3 → 21;
        // |C|=2: σ·d 4, past [] 2, reg 4, added 2, skipped 2 → 10, u 2,
        // future 3 → 240.
        assert_eq!(n, 2 * (10 + 112 + 21 + 240));
    }

    #[test]
    fn formula_corpora() {
        let small = small_formula_corpus();
        assert!(small.len() >= 30);
        assert!(small.iter().all(|f| f.has_contiguous_vars() && f.max_var() <= 3));
        let distinct: BTreeSet<String> = small.iter().map(|f| f.render()).collect();
        assert_eq!(distinct.len(), small.len());

        let l1 = qbf_corpus_l1();
        assert!(l1.iter().all(|f| f.max_var() == 2));
        let distinct: BTreeSet<String> = l1.iter().map(|f| f.render()).collect();
        assert_eq!(distinct.len(), l1.len());

        let l2 = qbf_corpus_random(2, 24, 7);
        assert_eq!(l2.len(), 24);
        assert!(l2.iter().all(|f| f.max_var() == 4));
        assert_eq!(l2, qbf_corpus_random(2, 24, 7));
    }

    #[test]
    fn random_instances_are_valid_and_seeded() {
        for seed in 0..200 {
            for control in [ControlType::DV, ControlType::AV, ControlType::PV] {
                let p = RandomParams {
                    control,
                    mode: GoalMode::Destructive,
                    candidates: 3,
                    past: 4,
                    future: 2,
                    budget: 1,
                };
                let inst = random_instance(p, seed);
                validate_instance(&inst).unwrap();
                assert_eq!(inst, random_instance(p, seed));
            }
        }
    }
}
