#![allow(dead_code)]

use std::path::PathBuf;

use groupknow::io::{parse_model, parse_model_unvalidated};
use groupknow::{Event, GroupModel, KnowledgeOperator, PossibilityRelation, StateSpace};

pub fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(name)
}

pub fn load(name: &str) -> GroupModel {
    let text = std::fs::read_to_string(model_path(name)).expect("model file");
    parse_model(&text).expect("valid model")
}

pub fn load_unvalidated(name: &str) -> GroupModel {
    let text = std::fs::read_to_string(model_path(name)).expect("model file");
    parse_model_unvalidated(&text).expect("parsable model")
}

/// `"w1 w2"` → the event `{w1 w2}`; `""` is empty.
pub fn ev(space: &StateSpace, names: &str) -> Event {
    space.event_from_names(names.split_whitespace()).expect("known states")
}

/// Column of an operator table in table order, each cell a list of names.
pub fn column(space: &StateSpace, cells: &[&str]) -> Vec<Event> {
    assert_eq!(cells.len(), space.num_events());
    cells.iter().map(|c| ev(space, c)).collect()
}

/// Table-order rows where `k` differs from `expected`.
pub fn operator_mismatches(k: &KnowledgeOperator, expected: &[Event]) -> Vec<String> {
    let space = k.space();
    space
        .events_table_order()
        .into_iter()
        .zip(expected)
        .filter(|(a, e)| k.apply(*a) != **e)
        .map(|(a, e)| {
            format!(
                "{}: got {} want {}",
                space.format_event(a),
                space.format_event(k.apply(a)),
                space.format_event(*e)
            )
        })
        .collect()
}

pub fn relation_mismatches(p: &PossibilityRelation, expected: &[&str]) -> Vec<String> {
    let space = p.space();
    (0..space.len())
        .filter(|&w| p.contour(w) != ev(space, expected[w]))
        .map(|w| {
            format!(
                "{}: got {} want {{{}}}",
                space.name(w),
                space.format_event(p.contour(w)),
                expected[w]
            )
        })
        .collect()
}

/// The four-state worked example, every table in event (or state) order.
pub mod example {
    pub const UNION: [&str; 16] = [
        "", "w1", "w2", "", "", "w1 w2", "w1", "w1", "w2", "w2", "w3", "w1 w2", "w1 w2",
        "w1 w3 w4", "w2 w3 w4", "w1 w2 w3 w4",
    ];
    /// `d`, `d+d` and `d±d` coincide here.
    pub const MERGED: [&str; 16] = [
        "", "w1", "w2", "", "", "w1 w2", "w1", "w1", "w2", "w2", "w3 w4", "w1 w2", "w1 w2",
        "w1 w3 w4", "w2 w3 w4", "w1 w2 w3 w4",
    ];
    pub const PLUS_D: [&str; 16] = [
        "", "w1", "w2", "w3", "", "w1 w2", "w1 w3", "w1", "w2 w3", "w2", "w3 w4", "w1 w2 w3",
        "w1 w2", "w1 w3 w4", "w2 w3 w4", "w1 w2 w3 w4",
    ];
    pub const FULL_D: [&str; 16] = [
        "", "w1", "w2", "w3", "w4", "w1 w2", "w1 w3", "w1 w4", "w2 w3", "w2 w4", "w3 w4",
        "w1 w2 w3", "w1 w2 w4", "w1 w3 w4", "w2 w3 w4", "w1 w2 w3 w4",
    ];
    pub const P1: [&str; 4] = ["w1 w2", "w2", "w3 w4", "w1 w3 w4"];
    pub const P2: [&str; 4] = ["w1", "w2", "w2 w3 w4", "w2 w3 w4"];
    pub const P3: [&str; 4] = ["w1", "w2 w3 w4", "w2 w3 w4", "w2 w3 w4"];
    /// `∩P`, `T_∩P` and `E_∩P` coincide here.
    pub const INTERSECTION: [&str; 4] = ["w1", "w2", "w3 w4", "w3 w4"];
    pub const NARY_TRACE: [&str; 4] = ["w1", "w2", "w3", "w3 w4"];
    pub const NARY_SYMMETRIC: [&str; 4] = ["w1", "w2", "w3", "w4"];
}
