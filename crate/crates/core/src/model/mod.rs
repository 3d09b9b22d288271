//! Scenarios, outcomes, and the accumulation function.

mod accumulation;
mod error;
mod identifier;
mod outcome;
mod quantity;
mod scenario;

pub use accumulation::{accumulation, accumulations, tau_transform};
pub use error::CoreError;
pub use identifier::{id, Identifier, InvalidIdentifier};
pub use outcome::{receives, Outcome};
pub use quantity::{Quantity, QuantityError};
pub use scenario::{
    validate_scenario, AttributeTable, AttributeValue, Diagnostic, FairnessScenario, ScenarioBuilder, SubjectKind,
    ValueKind,
};
