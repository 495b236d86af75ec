// The solver against a direct recursion over cloned game states, with no
// memo, no reduction and no shared code beyond the transition rules.

use ovc::corpus::{random_instance, small_formula_corpus, RandomParams};
use ovc::formula::Formula;
use ovc::game::{ControlInstance, ControlType, GameState, GoalMode, Phase};
use ovc::model::all_orders;
use ovc::reductions::{reduce_qbf, reduce_sat_1cand, reduce_taut, QbfFamily, QbfPrimeInstance};
use ovc::solver::{adversary_best_reply, best_action, solve, SolveError, SolverConfig};
use proptest::prelude::*;

fn value(state: &GameState<'_>) -> bool {
    match state.phase() {
        Phase::Done => state.goal_met().unwrap(),
        Phase::Decide { .. } => state.legal_actions().into_iter().any(|a| {
            let mut next = state.clone();
            next.apply(a).unwrap();
            value(&next)
        }),
        Phase::Reveal { .. } => all_orders(state.candidates()).into_iter().all(|o| {
            let mut next = state.clone();
            next.reveal(o).unwrap();
            value(&next)
        }),
    }
}

fn naive(inst: &ControlInstance) -> bool {
    value(&GameState::new(inst).unwrap())
}

fn params() -> impl Strategy<Value = (RandomParams, u64)> {
    (
        prop_oneof![Just(ControlType::DV), Just(ControlType::AV), Just(ControlType::PV)],
        prop_oneof![Just(GoalMode::Constructive), Just(GoalMode::Destructive)],
        1usize..=3,
        0usize..=4,
        0usize..=3,
        0usize..=3,
        any::<u64>(),
    )
        .prop_map(|(control, mode, candidates, past, future, budget, seed)| {
            (
                RandomParams {
                    control,
                    mode,
                    candidates,
                    past,
                    future,
                    budget,
                },
                seed,
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn every_config_matches_naive((p, seed) in params()) {
        let inst = random_instance(p, seed);
        let expected = naive(&inst);
        let auto = SolverConfig::auto_for(inst.control, &inst.system);
        for cfg in [SolverConfig::default(), auto, SolverConfig { memoize: true, ..SolverConfig::default() }] {
            prop_assert_eq!(solve(&inst, &cfg).unwrap().chair_wins(), expected);
        }
    }

    #[test]
    fn witness_keeps_the_win((p, seed) in params()) {
        let inst = random_instance(p, seed);
        let cfg = SolverConfig::auto_for(inst.control, &inst.system);
        match best_action(&inst, &cfg) {
            Ok(a) => {
                let mut s = GameState::new(&inst).unwrap();
                s.apply(a).unwrap();
                prop_assert!(value(&s));
                // no earlier action in tie-break order also wins
                for b in GameState::new(&inst).unwrap().legal_actions().into_iter().take_while(|&b| b != a) {
                    let mut t = GameState::new(&inst).unwrap();
                    t.apply(b).unwrap();
                    prop_assert!(!value(&t));
                }
            }
            Err(SolveError::ChairLoses) => prop_assert!(!naive(&inst)),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn adversary_reply_is_minimal((p, seed) in params()) {
        let inst = random_instance(p, seed);
        let cfg = SolverConfig::auto_for(inst.control, &inst.system);
        let mut s = GameState::new(&inst).unwrap();
        let first = s.legal_actions()[0];
        s.apply(first).unwrap();
        if matches!(s.phase(), Phase::Reveal { .. }) {
            let reply = adversary_best_reply(&s, &cfg).unwrap();
            let mut after = s.clone();
            after.reveal(reply.clone()).unwrap();
            let orders = all_orders(s.candidates());
            let losing = orders.iter().find(|o| {
                let mut t = s.clone();
                t.reveal((*o).clone()).unwrap();
                !value(&t)
            });
            match losing {
                Some(o) => prop_assert_eq!(&reply, o),
                None => prop_assert_eq!(&reply, &orders[0]),
            }
        }
    }
}

#[test]
fn reduction_instances_match_naive() {
    for f in small_formula_corpus() {
        let sat = reduce_sat_1cand(&f).unwrap();
        assert_eq!(solve(&sat, &SolverConfig::default()).unwrap().chair_wins(), naive(&sat), "sat {f}");
        let t = reduce_taut(&f);
        assert_eq!(solve(&t, &SolverConfig::default()).unwrap().chair_wins(), naive(&t), "taut {f}");
    }
    for text in ["(x1|x2)", "(x1&x2)", "(x2|!x2)", "((x1&x2)|(!x1&!x2))"] {
        let q = QbfPrimeInstance::new(Formula::parse(text).unwrap()).unwrap();
        for family in QbfFamily::ALL {
            let inst = reduce_qbf(&q, family);
            assert_eq!(solve(&inst, &SolverConfig::default()).unwrap().chair_wins(), naive(&inst), "{family} {text}");
        }
    }
}

#[test]
fn cap_applies_only_with_branching() {
    let p = RandomParams {
        control: ControlType::DV,
        mode: GoalMode::Constructive,
        candidates: 3,
        past: 1,
        future: 1,
        budget: 1,
    };
    let inst = random_instance(p, 5);
    let tight = SolverConfig::default().with_max_candidates(2);
    assert!(matches!(solve(&inst, &tight), Err(SolveError::CapExceeded { candidates: 3, cap: 2 })));
    let no_future = random_instance(RandomParams { future: 0, ..p }, 5);
    assert_eq!(solve(&no_future, &tight).unwrap().chair_wins(), naive(&no_future));
}
