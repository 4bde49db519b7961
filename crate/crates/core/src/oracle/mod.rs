//! Brute-force reference implementations, a seeded model generator, and a
//! checker that runs every structural law on one model.

mod generator;
mod naive;
mod verify;

pub use generator::{
    random_model, random_partition, random_preorder, random_reflexive_relation,
    random_veridical_operator, GeneratorConfig, TargetClass,
};
pub use naive::{naive_distributive_closure, NAIVE_MAX_STATES};
pub use verify::{verify_propositions, CheckOutcome, CheckResult, VerificationReport, VerifyOptions};
