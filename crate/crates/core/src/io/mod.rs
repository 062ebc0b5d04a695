//! Text formats: CXT for contexts, JSON bundles, DOT diagrams.

pub mod cxt;
pub mod dot;
pub mod json;

pub use cxt::{emit_cxt, parse_cxt, CxtError};
pub use dot::emit_dot;
