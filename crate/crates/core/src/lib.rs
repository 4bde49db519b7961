//! Knowledge operators over finite state spaces, their possibility-relation
//! duals, introspective revision, and distributed knowledge of groups whose
//! members revise pooled knowledge in different ways.

pub mod axioms;
pub mod cli;
pub mod duality;
pub mod engine;
pub mod error;
pub mod io;
pub mod model;
pub mod oracle;
pub mod revision;
pub mod traces;
pub mod types;

pub use axioms::{check_operator, check_relation, Axiom, AxiomReport, Classes, RelationReport, Witness};
pub use duality::{operator_from_relation, relation_from_operator, relation_from_operator_morris};
pub use engine::{
    distributed_knowledge_closed_form, simulate, simulate_round, Agent, ClosedForm, Dispatch,
    GroupModel, SimulationTrace, DEFAULT_MAX_ROUNDS,
};
pub use error::{Error, ParseError, Result};
pub use model::{
    operator_leq, operator_union, relation_intersection, Event, KnowledgeOperator,
    PossibilityRelation, StateSpace, MAX_STATES,
};
pub use revision::{
    distributive_closure, full_introspection_op, negative_introspection_step, operator_images,
    positive_introspection_op, EventFamily, OperatorImages,
};
pub use traces::{
    e_from_minimal_sets, left_nary_trace, left_trace, minimal_sets, symmetric_part,
    GroupRelations, MinimalSetFamily,
};
pub use types::{
    apply_pipeline, apply_revision_type, highest_type, type_leq, RevisionType, Stage,
    TypeDominance, TypeProfile,
};
