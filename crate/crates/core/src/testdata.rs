//! Scenarios from the worked examples, built directly for unit tests.

use crate::model::{FairnessScenario, Outcome};

pub fn outcome(s: &FairnessScenario, pairs: &[(&str, &str)]) -> Outcome {
    Outcome::from_names(s, pairs.iter().copied()).unwrap()
}

pub fn subsidy() -> FairnessScenario {
    FairnessScenario::builder()
        .agents(["A", "B", "C", "D", "E", "F"])
        .resources(["R1", "R2", "R3"])
        .agent_quantities("q", [("A", 10i64), ("B", 20), ("C", 30), ("D", 10), ("E", 20), ("F", 30)])
        .resource_quantities("u", [("R1", 10i64), ("R2", 20), ("R3", 30)])
        .build()
        .unwrap()
}

pub fn jackets() -> FairnessScenario {
    FairnessScenario::builder()
        .agents(["A", "B", "C", "D", "E"])
        .resources(["L", "S"])
        .agent_rankings(
            "v",
            [
                ("A", ["S", "L"]),
                ("B", ["S", "L"]),
                ("C", ["L", "S"]),
                ("D", ["L", "S"]),
                ("E", ["L", "S"]),
            ],
        )
        .build()
        .unwrap()
}

pub fn loan() -> FairnessScenario {
    FairnessScenario::builder()
        .agents(["A", "B", "C", "D", "E", "F"])
        .resources(["L"])
        .agent_flags("p", [("A", false), ("B", false), ("C", false), ("D", true), ("E", true), ("F", true)])
        .agent_flags("q", [("A", false), ("B", true), ("C", true), ("D", false), ("E", true), ("F", true)])
        .build()
        .unwrap()
}

pub fn bandwidth() -> FairnessScenario {
    FairnessScenario::builder()
        .agents(["A", "B", "C", "D"])
        .resources(["M0", "M10", "M20", "M50"])
        .resource_quantities("u", [("M0", 0i64), ("M10", 10), ("M20", 20), ("M50", 50)])
        .build()
        .unwrap()
}

pub fn wealth() -> FairnessScenario {
    FairnessScenario::builder()
        .agents(["A", "B", "C", "D", "E", "F"])
        .resources(["R5", "R10", "R15", "R20", "R50", "R100"])
        .resource_quantities(
            "u",
            [("R5", 5i64), ("R10", 10), ("R15", 15), ("R20", 20), ("R50", 50), ("R100", 100)],
        )
        .build()
        .unwrap()
}

pub fn compas() -> FairnessScenario {
    FairnessScenario::builder()
        .agents(["A", "B", "C", "D", "E", "F"])
        .resources(["R_low", "R_high"])
        .agent_flags("p", [("A", false), ("B", false), ("C", false), ("D", true), ("E", true), ("F", true)])
        .agent_resource_refs(
            "res",
            [
                ("A", "R_low"),
                ("B", "R_high"),
                ("C", "R_high"),
                ("D", "R_low"),
                ("E", "R_low"),
                ("F", "R_high"),
            ],
        )
        .resource_quantities("u", [("R_low", 0i64), ("R_high", 1)])
        .build()
        .unwrap()
}
