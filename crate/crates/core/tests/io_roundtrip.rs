use ovc::corpus::{random_instance, RandomParams};
use ovc::game::{ControlType, GoalMode};
use ovc::io::{instance_from_json, instance_to_json, load_instance, store_instance};
use proptest::prelude::*;

proptest! {
    #[test]
    fn store_then_load_is_identity(
        control in prop_oneof![Just(ControlType::DV), Just(ControlType::AV), Just(ControlType::PV)],
        destructive in any::<bool>(),
        candidates in 1usize..=5,
        past in 0usize..=8,
        future in 0usize..=5,
        budget in 0usize..=4,
        seed in any::<u64>(),
    ) {
        let mode = if destructive { GoalMode::Destructive } else { GoalMode::Constructive };
        let inst = random_instance(RandomParams { control, mode, candidates, past, future, budget }, seed);
        let text = instance_to_json(&inst);
        prop_assert_eq!(&instance_from_json(&text).unwrap(), &inst);
        // serialization is canonical
        prop_assert_eq!(instance_to_json(&instance_from_json(&text).unwrap()), text);
    }
}

#[test]
fn file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let p = RandomParams {
        control: ControlType::AV,
        mode: GoalMode::Constructive,
        candidates: 3,
        past: 4,
        future: 3,
        budget: 2,
    };
    let inst = random_instance(p, 1);
    let path = dir.path().join("i.json");
    store_instance(&inst, &path).unwrap();
    assert_eq!(load_instance(&path).unwrap(), inst);
}

#[test]
fn unknown_fields_rejected() {
    let p = RandomParams {
        control: ControlType::DV,
        mode: GoalMode::Constructive,
        candidates: 2,
        past: 1,
        future: 1,
        budget: 1,
    };
    let text = instance_to_json(&random_instance(p, 0));
    let extra = text.replacen('{', "{\n  \"comment\": \"x\",", 1);
    assert!(instance_from_json(&extra).unwrap_err().to_string().starts_with("parse error"));
}
