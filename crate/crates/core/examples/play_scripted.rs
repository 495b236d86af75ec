//! The text-mode game driven by a script. The script is the sequence of
//! hinted moves, so the chair of a winning instance ends with the goal met.

use ovc::cli::play_loop;
use ovc::game::{GameState, Phase};
use ovc::io::instance_from_json;
use ovc::solver::{adversary_best_reply, best_action_at, SolverConfig};

const INSTANCE: &str = r#"{
  "control": "AV",
  "mode": "destructive",
  "system": "plurality",
  "candidates": ["a", "b", "c"],
  "sigma": ["a", "b", "c"],
  "distinguished": "b",
  "budget": 2,
  "past": [
    {"voter": "p1", "flag": "registered", "ballot": ["a", "b", "c"]},
    {"voter": "p2", "flag": "skipped"}
  ],
  "current": {"voter": "u", "ballot": ["a", "c", "b"]},
  "future": [{"voter": "f1", "registered": false}, {"voter": "f2", "registered": true}]
}"#;

pub fn run() -> (i32, String) {
    let inst = instance_from_json(INSTANCE).unwrap();
    let cfg = SolverConfig::auto_for(inst.control, &inst.system);

    // Replay the game once to learn the hinted moves.
    let mut script = String::new();
    let mut state = GameState::new(&inst).unwrap();
    loop {
        match state.phase() {
            Phase::Decide { .. } => {
                let a = best_action_at(&state, &cfg).expect("instance is chair-winning");
                script.push_str(a.name());
                script.push('\n');
                state.apply(a).unwrap();
            }
            Phase::Reveal { .. } => {
                let o = adversary_best_reply(&state, &cfg).unwrap();
                state.reveal(o).unwrap();
            }
            Phase::Done => break,
        }
    }

    let mut out = Vec::new();
    let code = play_loop(&inst, &cfg, &mut script.as_bytes(), &mut out).expect("game runs");
    (code, String::from_utf8(out).unwrap())
}

#[allow(dead_code)]
fn main() {
    let (code, transcript) = run();
    print!("{transcript}");
    println!("exit {code}");
}
