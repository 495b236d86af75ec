//! Equivalence suites: each runs an engine against an independent oracle
//! over a corpus and records every case.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corpus::{
    canonical_candidates, for_each_plurality_base, for_each_plurality_instance, qbf_corpus_l1, qbf_corpus_random,
    random_instance, small_formula_corpus, RandomParams, SpaceBounds,
};
use crate::fast::fast_decide;
use crate::formula::Formula;
use crate::game::{nononline_ccpv_one_candidate, ControlInstance, ControlType, GoalMode};
use crate::io::{instance_from_json, instance_to_json};
use crate::model::{Ballot, CandidateSet, Plurality, PreferenceOrder};
use crate::oracle::{eval_qbf_prime, sat_satisfiable, taut};
use crate::reductions::{
    hs_identities_hold, reduce_hitting_set, reduce_qbf, reduce_sat_1cand, reduce_taut,
    simulate_hs_proof_strategies, HittingSetInstance, HsVariant, QbfFamily, QbfPrimeInstance,
};
use crate::solver::{solve, SolveError, SolverConfig, Verdict};

/// Number of seeded formulas over four variables in the QBF suite.
pub const QBF_RANDOM_FORMULAS: usize = 24;
/// Number of cases in the random plurality suite.
pub const RANDOM_PLURALITY_CASES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Closed-form plurality algorithms against the exact solver on the
    /// exhaustive small space.
    PluralityFastVsExact,
    /// The same comparison on seeded random instances beyond that space.
    PluralityRandom,
    Qbf,
    Sat1c,
    Taut,
    HsScores,
    /// Raising the budget by one never turns a win into a loss.
    BudgetMonotone,
    /// Branching on one order per top choice gives the same verdicts.
    TopOnly,
    /// Every generated instance survives store and load unchanged.
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::PluralityFastVsExact,
        Suite::PluralityRandom,
        Suite::Qbf,
        Suite::Sat1c,
        Suite::Taut,
        Suite::HsScores,
        Suite::BudgetMonotone,
        Suite::TopOnly,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PluralityFastVsExact => "plurality-fast-vs-exact",
            Suite::PluralityRandom => "plurality-random",
            Suite::Qbf => "qbf",
            Suite::Sat1c => "sat1c",
            Suite::Taut => "taut",
            Suite::HsScores => "hs-scores",
            Suite::BudgetMonotone => "budget-monotone",
            Suite::TopOnly => "top-only",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    ChairWins,
    ChairLoses,
    Holds,
    Fails,
    Error,
}

impl Outcome {
    pub fn answer(wins: bool) -> Self {
        if wins {
            Outcome::ChairWins
        } else {
            Outcome::ChairLoses
        }
    }

    pub fn holds(ok: bool) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    fn of_verdict(v: &Result<Verdict, SolveError>) -> Self {
        match v {
            Ok(v) => Outcome::answer(v.chair_wins()),
            Err(_) => Outcome::Error,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::ChairWins => "chair-wins",
            Outcome::ChairLoses => "chair-loses",
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyCase {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Box<str>>,
    pub expected: Outcome,
    pub got: Outcome,
    pub agree: bool,
    /// Error text or violated property, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Box<str>>,
    /// The offending instance, verbatim, on disagreement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Box<serde_json::Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub total: usize,
    pub agreed: usize,
    pub disagreed: usize,
    pub errors: usize,
    pub cases: Vec<VerifyCase>,
}

impl VerifyReport {
    fn new(suite: Suite, seed: u64) -> Self {
        VerifyReport {
            suite: suite.name().to_string(),
            seed,
            total: 0,
            agreed: 0,
            disagreed: 0,
            errors: 0,
            cases: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.disagreed == 0 && self.errors == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "suite {}: {} cases, {} agree, {} disagree, {} errors",
            self.suite, self.total, self.agreed, self.disagreed, self.errors
        )
    }

    /// Line-oriented text: every case for small suites, otherwise only the
    /// disagreeing ones, then the summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verbose = self.cases.len() <= 500;
        for c in &self.cases {
            if verbose || !c.agree {
                out.push_str(&format!(
                    "{} case {}{}: expected {} got {}{}\n",
                    if c.agree { "ok  " } else { "FAIL" },
                    c.id,
                    c.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default(),
                    c.expected,
                    c.got,
                    c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default(),
                ));
                if let Some(ce) = &c.counterexample {
                    out.push_str(&format!("     counterexample: {ce}\n"));
                }
            }
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Stop after this many cases.
    pub limit: Option<usize>,
}

struct Recorder {
    report: VerifyReport,
    limit: usize,
}

impl Recorder {
    fn new(suite: Suite, opts: &VerifyOptions) -> Self {
        Recorder {
            report: VerifyReport::new(suite, opts.seed),
            limit: opts.limit.unwrap_or(usize::MAX),
        }
    }

    fn full(&self) -> bool {
        self.report.total >= self.limit
    }

    fn record(
        &mut self,
        label: Option<String>,
        expected: Outcome,
        got: Outcome,
        detail: Option<String>,
        instance: Option<&ControlInstance>,
    ) {
        if self.full() {
            return;
        }
        let agree = expected == got && expected != Outcome::Error;
        let r = &mut self.report;
        r.total += 1;
        if expected == Outcome::Error || got == Outcome::Error {
            r.errors += 1;
        } else if agree {
            r.agreed += 1;
        } else {
            r.disagreed += 1;
        }
        let counterexample = (!agree)
            .then(|| instance.map(|i| Box::new(serde_json::from_str(&instance_to_json(i)).expect("valid json"))))
            .flatten();
        r.cases.push(VerifyCase {
            id: r.total - 1,
            label: label.map(String::into_boxed_str),
            expected,
            got,
            agree,
            detail: detail.map(String::into_boxed_str),
            counterexample,
        });
    }

    fn record_verdicts(
        &mut self,
        label: Option<String>,
        expected: Outcome,
        got: &Result<Verdict, SolveError>,
        inst: &ControlInstance,
    ) {
        let detail = got.as_ref().err().map(|e| e.to_string());
        self.record(label, expected, Outcome::of_verdict(got), detail, Some(inst));
    }
}

/// Runs one suite to completion (or to `opts.limit` cases).
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let mut rec = Recorder::new(suite, opts);
    match suite {
        Suite::PluralityFastVsExact => plurality_exhaustive(&mut rec),
        Suite::PluralityRandom => plurality_random(&mut rec, opts.seed),
        Suite::Qbf => qbf(&mut rec, opts.seed),
        Suite::Sat1c => sat1c(&mut rec),
        Suite::Taut => taut_suite(&mut rec),
        Suite::HsScores => hs_scores(&mut rec),
        Suite::BudgetMonotone => budget_monotone(&mut rec),
        Suite::TopOnly => top_only(&mut rec),
        Suite::Roundtrip => roundtrip(&mut rec, opts.seed),
    }
    rec.report
}

fn compare_fast(rec: &mut Recorder, inst: &ControlInstance, label: Option<String>) {
    let exact = solve(inst, &SolverConfig::auto_for(inst.control, &inst.system));
    let (got, detail) = match fast_decide(inst) {
        Ok(d) => (Outcome::answer(d.chair_wins), None),
        Err(e) => (Outcome::Error, Some(e.to_string())),
    };
    let expected = Outcome::of_verdict(&exact);
    let detail = detail.or_else(|| exact.as_ref().err().map(|e| e.to_string()));
    rec.record(label, expected, got, detail, Some(inst));
}

fn plurality_exhaustive(rec: &mut Recorder) {
    for_each_plurality_instance(SpaceBounds::default(), |inst| {
        if !rec.full() {
            compare_fast(rec, inst, None);
        }
    });
}

fn plurality_random(rec: &mut Recorder, seed: u64) {
    for i in 0..RANDOM_PLURALITY_CASES as u64 {
        if rec.full() {
            break;
        }
        let case_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i);
        let shape = case_seed % 97;
        let p = RandomParams {
            control: if shape % 2 == 0 { ControlType::DV } else { ControlType::AV },
            mode: if shape % 3 == 0 { GoalMode::Destructive } else { GoalMode::Constructive },
            candidates: 1 + (shape % 4) as usize,
            past: (shape % 7) as usize,
            future: (shape % 5) as usize,
            budget: (shape % 4) as usize,
        };
        let inst = random_instance(p, case_seed);
        compare_fast(rec, &inst, Some(format!("seed {case_seed}")));
    }
}

fn qbf_formulas(seed: u64) -> Vec<Formula> {
    let mut fs = qbf_corpus_l1();
    fs.extend(qbf_corpus_random(2, QBF_RANDOM_FORMULAS, seed));
    fs
}

fn qbf(rec: &mut Recorder, seed: u64) {
    let cfg = SolverConfig::default();
    for f in qbf_formulas(seed) {
        let q = QbfPrimeInstance::new(f).expect("corpus formulas end on an even variable");
        let expected = Outcome::answer(eval_qbf_prime(&q));
        for family in QbfFamily::ALL {
            let inst = reduce_qbf(&q, family);
            rec.record_verdicts(Some(format!("{family} {}", q.formula)), expected, &solve(&inst, &cfg), &inst);
        }
    }
}

fn sat1c(rec: &mut Recorder) {
    let cfg = SolverConfig::default();
    for f in small_formula_corpus() {
        let inst = reduce_sat_1cand(&f).expect("corpus formulas have no gaps");
        let expected = Outcome::answer(sat_satisfiable(&f));
        rec.record_verdicts(Some(format!("sat {f}")), expected, &solve(&inst, &cfg), &inst);
    }
    // The non-online one-candidate question under plurality: the lone
    // candidate always wins.
    let c: CandidateSet = canonical_candidates(1).into_iter().collect();
    let only = PreferenceOrder::new(c.iter().cloned().collect());
    for n in 0..=6 {
        let ballots: Vec<Ballot> = (0..n).map(|i| Ballot::new(format!("v{i}"), only.clone())).collect();
        let (got, detail) = match nononline_ccpv_one_candidate(&Plurality, &c, &ballots) {
            Ok(b) => (Outcome::holds(b), None),
            Err(e) => (Outcome::Error, Some(e.to_string())),
        };
        rec.record(Some(format!("one-candidate plurality, {n} voters")), Outcome::Holds, got, detail, None);
    }
}

fn taut_suite(rec: &mut Recorder) {
    let cfg = SolverConfig::default();
    for f in small_formula_corpus() {
        let inst = reduce_taut(&f);
        let expected = Outcome::answer(taut(&f));
        rec.record_verdicts(Some(format!("taut {f}")), expected, &solve(&inst, &cfg), &inst);
    }
}

/// Every collection of `n` nonempty subsets of `{1..m}`, for m, n, k ≤ 2.
pub fn hs_grid() -> Vec<HittingSetInstance> {
    let mut out = Vec::new();
    for m in 1..=2usize {
        let subsets: Vec<Vec<usize>> = (1..1u32 << m)
            .map(|mask| (1..=m).filter(|e| mask >> (e - 1) & 1 == 1).collect())
            .collect();
        for n in 1..=2usize {
            for k in 1..=m.min(2) {
                let mut idx = vec![0usize; n];
                loop {
                    let sets = idx.iter().map(|&i| subsets[i].clone()).collect();
                    out.push(HittingSetInstance::new(m, sets, k).expect("grid instance"));
                    let mut pos = 0;
                    while pos < n && idx[pos] + 1 == subsets.len() {
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == n {
                        break;
                    }
                    idx[pos] += 1;
                }
            }
        }
    }
    out
}

fn hs_label(h: &HittingSetInstance) -> String {
    let sets: Vec<String> = h
        .sets
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("m={} n={} k={} S={}", h.m, h.n(), h.k, sets.join(","))
}

fn hs_scores(rec: &mut Recorder) {
    for h in hs_grid() {
        let report = simulate_hs_proof_strategies(&h);
        let branch = if report.exists { "yes" } else { "no" };
        let result = hs_identities_hold(&h, &report);
        let inst = reduce_hitting_set(&h, HsVariant::Cc);
        rec.record(
            Some(format!("{} {branch}-branch", hs_label(&h))),
            Outcome::Holds,
            Outcome::holds(result.is_ok()),
            result.err(),
            Some(&inst),
        );
    }
}

fn budget_monotone(rec: &mut Recorder) {
    let bounds = SpaceBounds::default();
    for_each_plurality_base(bounds, |inst| {
        if rec.full() {
            return;
        }
        let cfg = SolverConfig::auto_for(inst.control, &inst.system);
        let lowest = inst.budget.unwrap_or(0);
        let mut previous: Option<bool> = None;
        for k in lowest..=bounds.max_budget {
            inst.budget = Some(k);
            let v = solve(inst, &cfg);
            let now = match &v {
                Ok(v) => v.chair_wins(),
                Err(e) => {
                    rec.record(None, Outcome::Holds, Outcome::Error, Some(e.to_string()), Some(inst));
                    return;
                }
            };
            if let Some(before) = previous {
                let ok = !before || now;
                rec.record(
                    None,
                    Outcome::Holds,
                    Outcome::holds(ok),
                    (!ok).then(|| format!("wins with budget {} but loses with {k}", k - 1)),
                    Some(inst),
                );
            }
            previous = Some(now);
        }
    });
}

fn top_only(rec: &mut Recorder) {
    for_each_plurality_instance(SpaceBounds::default(), |inst| {
        if rec.full() {
            return;
        }
        let full = SolverConfig {
            top_only_reduction: false,
            ..SolverConfig::auto_for(inst.control, &inst.system)
        };
        let reduced = SolverConfig {
            top_only_reduction: true,
            ..full
        };
        let expected = solve(inst, &full);
        let got = solve(inst, &reduced);
        let detail = expected.as_ref().err().map(|e| e.to_string());
        if detail.is_some() {
            rec.record(None, Outcome::Error, Outcome::of_verdict(&got), detail, Some(inst));
        } else {
            rec.record_verdicts(None, Outcome::of_verdict(&expected), &got, inst);
        }
    });
}

/// Every instance the generators produce for the suites above.
pub fn generated_instances(seed: u64, mut visit: impl FnMut(String, &ControlInstance)) {
    for f in qbf_formulas(seed) {
        let q = QbfPrimeInstance::new(f).unwrap();
        for family in QbfFamily::ALL {
            visit(format!("{family} {}", q.formula), &reduce_qbf(&q, family));
        }
    }
    for f in small_formula_corpus() {
        visit(format!("sat {f}"), &reduce_sat_1cand(&f).unwrap());
        visit(format!("taut {f}"), &reduce_taut(&f));
    }
    for h in hs_grid() {
        for (v, name) in [(HsVariant::Cc, "cc"), (HsVariant::Dc, "dc")] {
            visit(format!("hs {name} {}", hs_label(&h)), &reduce_hitting_set(&h, v));
        }
    }
    for i in 0..200u64 {
        for control in [ControlType::DV, ControlType::AV, ControlType::PV] {
            let p = RandomParams {
                control,
                mode: if i % 2 == 0 { GoalMode::Constructive } else { GoalMode::Destructive },
                candidates: 1 + (i % 4) as usize,
                past: (i % 6) as usize,
                future: (i % 4) as usize,
                budget: (i % 3) as usize,
            };
            let s = seed.wrapping_add(i);
            visit(format!("random {control} seed {s}"), &random_instance(p, s));
        }
    }
}

fn check_roundtrip(inst: &ControlInstance) -> Result<(), String> {
    let text = instance_to_json(inst);
    match instance_from_json(&text) {
        Ok(back) if back == *inst => Ok(()),
        Ok(_) => Err("loaded instance differs".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn roundtrip(rec: &mut Recorder, seed: u64) {
    generated_instances(seed, |label, inst| {
        let r = check_roundtrip(inst);
        rec.record(Some(label), Outcome::Holds, Outcome::holds(r.is_ok()), r.err(), Some(inst));
    });
    for_each_plurality_instance(SpaceBounds::default(), |inst| {
        if rec.full() {
            return;
        }
        let r = check_roundtrip(inst);
        rec.record(None, Outcome::Holds, Outcome::holds(r.is_ok()), r.err(), Some(inst));
    });
}
