//! The closed-form plurality decisions next to the exact game search on
//! random instances.

use ovc::corpus::{random_instance, RandomParams};
use ovc::fast::fast_decide;
use ovc::game::{ControlType, GoalMode};
use ovc::solver::{solve, SolverConfig};

pub fn run() -> (usize, usize) {
    let mut checked = 0;
    let mut agreed = 0;
    for seed in 0..200u64 {
        let p = RandomParams {
            control: if seed % 2 == 0 { ControlType::DV } else { ControlType::AV },
            mode: if seed % 3 == 0 { GoalMode::Destructive } else { GoalMode::Constructive },
            candidates: 1 + (seed % 4) as usize,
            past: (seed % 5) as usize,
            future: (seed % 4) as usize,
            budget: (seed % 3) as usize,
        };
        let inst = random_instance(p, seed);
        let exact = solve(&inst, &SolverConfig::auto_for(inst.control, &inst.system)).unwrap();
        let fast = fast_decide(&inst).unwrap();
        checked += 1;
        if exact.chair_wins() == fast.chair_wins {
            agreed += 1;
        }
    }
    (checked, agreed)
}

#[allow(dead_code)]
fn main() {
    let (checked, agreed) = run();
    println!("{agreed} of {checked} random plurality instances agree");
}
