//! Model files and text output.

mod parse;
pub mod render;
mod write;

pub use parse::{
    parse_document, parse_model, parse_model_unvalidated, AgentBlock, AgentBody, Comment,
    ModelDocument,
};
pub use render::{Format, Table};
pub use write::{write_model, write_model_as, BodyForm};
