use std::fmt::Write as _;

use crate::axioms::check_operator;
use crate::duality::relation_from_operator;
use crate::engine::GroupModel;
use crate::model::{KnowledgeOperator, PossibilityRelation, StateSpace};

/// Which block form [`write_model_as`] emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyForm {
    /// Relations where the operator is distributive with necessitation,
    /// full operator tables otherwise.
    Auto,
    Relations,
    Operators,
}

/// Writes a model that [`parse_model`](super::parse_model) reads back unchanged.
pub fn write_model(model: &GroupModel) -> String {
    write_model_as(model, BodyForm::Auto).expect("auto form never fails")
}

/// Fails with the name of the first agent that has no relation form.
pub fn write_model_as(model: &GroupModel, form: BodyForm) -> Result<String, String> {
    let space = model.space();
    let mut out = String::new();
    writeln!(out, "states: {}", space.names().join(" ")).unwrap();
    for agent in model.agents() {
        writeln!(out).unwrap();
        writeln!(out, "agent {} type {}", agent.name, agent.revision_type.ascii()).unwrap();
        let relation = match form {
            BodyForm::Operators => None,
            BodyForm::Auto | BodyForm::Relations => {
                if check_operator(&agent.operator).classes.k0 {
                    relation_from_operator(&agent.operator).ok()
                } else {
                    None
                }
            }
        };
        match relation {
            Some(p) => write_relation(&mut out, space, &p),
            None if form == BodyForm::Relations => {
                return Err(agent.name.clone());
            }
            None => write_operator(&mut out, space, &agent.operator),
        }
    }
    Ok(out)
}

fn write_relation(out: &mut String, space: &StateSpace, p: &PossibilityRelation) {
    out.push_str("relation:\n");
    for w in 0..space.len() {
        writeln!(out, "  {} -> {}", space.name(w), space.format_event(p.contour(w))).unwrap();
    }
}

fn write_operator(out: &mut String, space: &StateSpace, k: &KnowledgeOperator) {
    out.push_str("operator:\n");
    for a in space.events_table_order() {
        writeln!(out, "  {} -> {}", space.format_event(a), space.format_event(k.apply(a))).unwrap();
    }
}
