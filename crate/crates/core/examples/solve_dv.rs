//! Deciding a deletion instance with the exact solver, then asking for the
//! chair's first move and the adversary's strongest reply.

use ovc::game::GameState;
use ovc::io::instance_from_json;
use ovc::solver::{adversary_best_reply, best_action, solve, SolverConfig};

// The chair wants a among the winners and may delete one voter, either u
// now or the future voter once its ballot is seen.
const INSTANCE: &str = r#"{
  "control": "DV",
  "mode": "constructive",
  "system": "plurality",
  "candidates": ["a", "b", "c"],
  "sigma": ["a", "b", "c"],
  "distinguished": "a",
  "budget": 1,
  "past": [
    {"voter": "p1", "flag": "kept", "ballot": ["a", "b", "c"]},
    {"voter": "p2", "flag": "kept", "ballot": ["a", "c", "b"]},
    {"voter": "p3", "flag": "kept", "ballot": ["b", "a", "c"]}
  ],
  "current": {"voter": "u", "ballot": ["b", "c", "a"]},
  "future": [{"voter": "f1"}]
}"#;

pub fn run() -> Vec<String> {
    let inst = instance_from_json(INSTANCE).expect("valid instance");
    let cfg = SolverConfig::auto_for(inst.control, &inst.system);
    let verdict = solve(&inst, &cfg).expect("within the candidate cap");
    let mut lines = vec![format!(
        "{} after {} nodes, witness {:?}",
        verdict.answer, verdict.stats.nodes, verdict.witness
    )];
    match best_action(&inst, &cfg) {
        Ok(a) => {
            lines.push(format!("best first action: {a}"));
            let mut state = GameState::new(&inst).unwrap();
            state.apply(a).unwrap();
            let reply = adversary_best_reply(&state, &cfg).unwrap();
            lines.push(format!("strongest reply for f1: {reply}"));
        }
        Err(e) => lines.push(format!("no winning action: {e}")),
    }
    lines
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
