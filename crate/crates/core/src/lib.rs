//! Fairness scenarios and measures, plus a small typed dataflow language
//! ("tiles") for composing measures as pipelines.
//!
//! * [`model`]: agents, resources, attribute tables, outcomes, accumulation.
//! * [`measures`]: boolean and continuous fairness measures over outcomes.
//! * [`tiles`]: tile types, pipelines, static type checking, evaluation.
//! * [`textio`]: JSON scenario/outcome files, pipeline syntax, DOT export.

#![allow(clippy::result_large_err)]

pub mod measures;
pub mod model;
pub mod textio;
pub mod tiles;

#[cfg(test)]
mod testdata;

pub use model::{id, FairnessScenario, Identifier, Outcome, Quantity};
