use std::fmt;

use thiserror::Error;

use crate::axioms::Axiom;

/// Location-tagged failure from the model-file front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values built over different state spaces were combined.
    #[error("state space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// An operator fell outside the class an operation is defined on.
    #[error("operator not in {class}: {axiom} fails (witness {witness})")]
    Domain {
        class: &'static str,
        axiom: Axiom,
        witness: String,
    },

    /// A brute-force routine was asked to run beyond its feasible size.
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    /// A model passed parsing but violates the engine preconditions.
    #[error("agent {agent}: {axiom} fails (witness {witness})")]
    Validation {
        agent: String,
        axiom: Axiom,
        witness: String,
    },

    /// Something the theory guarantees did not happen.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Distributivity => "distributivity (K0)",
            Axiom::Necessitation => "necessitation (K0')",
            Axiom::Veridicality => "veridicality (K1)",
            Axiom::PositiveIntrospection => "positive introspection (K2)",
            Axiom::NegativeIntrospection => "negative introspection (K3)",
            Axiom::Monotonicity => "monotonicity",
        })
    }
}
