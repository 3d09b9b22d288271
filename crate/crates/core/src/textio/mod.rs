//! Text formats: JSON scenarios and outcomes, the pipeline expression
//! language, and DOT export.

mod dot;
mod error;
mod expr;
mod json;

pub use dot::export_dot;
pub use error::{ParseError, ParseErrorKind};
pub use expr::{parse_expr, parse_pipeline, pretty_print, PipelineExpr};
pub use json::{format_outcome, format_scenario, parse_outcome, parse_scenario};
