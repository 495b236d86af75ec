//! Instances as JSON files: generate, store, load, compare, and see what
//! validation rejects.

use ovc::corpus::{random_instance, RandomParams};
use ovc::game::{ControlType, GoalMode};
use ovc::io::{instance_from_json, load_instance, store_instance};

pub fn run() -> Vec<String> {
    let mut lines = Vec::new();
    let dir = std::env::temp_dir().join(format!("ovc-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, control) in [ControlType::DV, ControlType::AV, ControlType::PV].into_iter().enumerate() {
        let p = RandomParams {
            control,
            mode: GoalMode::Destructive,
            candidates: 3,
            past: 3,
            future: 2,
            budget: 2,
        };
        let inst = random_instance(p, 7 + i as u64);
        let path = dir.join(format!("{control}.json"));
        store_instance(&inst, &path).unwrap();
        let back = load_instance(&path).unwrap();
        lines.push(format!("{control}: {} past voters, identical after reload: {}", inst.past.len(), back == inst));
    }
    std::fs::remove_dir_all(&dir).ok();

    let over_budget = r#"{
      "control": "DV", "mode": "constructive", "system": "plurality",
      "candidates": ["a", "b"], "sigma": ["a", "b"], "distinguished": "a",
      "budget": 1,
      "past": [{"voter": "p1", "flag": "deleted"}, {"voter": "p2", "flag": "deleted"}],
      "current": {"voter": "u", "ballot": ["a", "b"]},
      "future": []
    }"#;
    lines.push(format!("two deletions on budget 1: {}", instance_from_json(over_budget).unwrap_err()));
    lines
}

#[allow(dead_code)]
fn main() {
    for line in run() {
        println!("{line}");
    }
}
