//! Accumulated utility per agent and the constant-need reduction.

use std::collections::BTreeMap;

use super::error::CoreError;
use super::identifier::Identifier;
use super::outcome::Outcome;
use super::quantity::Quantity;
use super::scenario::{AttributeTable, AttributeValue, FairnessScenario, SubjectKind, ValueKind};

/// Total utility of the resources `agent` receives. Agents receiving
/// nothing accumulate zero.
pub fn accumulation(
    scenario: &FairnessScenario,
    utility: &Identifier,
    outcome: &Outcome,
    agent: &Identifier,
) -> Result<Quantity, CoreError> {
    let table = scenario.resource_attribute_of_kind(utility, ValueKind::Quantity)?;
    scenario.require_agent(agent)?;
    accumulate_with(table, outcome, agent)
}

/// Accumulations for every agent of the scenario, keyed in byte order.
pub fn accumulations(
    scenario: &FairnessScenario,
    utility: &Identifier,
    outcome: &Outcome,
) -> Result<BTreeMap<Identifier, Quantity>, CoreError> {
    let table = scenario.resource_attribute_of_kind(utility, ValueKind::Quantity)?;
    scenario
        .agents()
        .iter()
        .map(|agent| Ok((agent.clone(), accumulate_with(table, outcome, agent)?)))
        .collect()
}

fn accumulate_with(table: &AttributeTable, outcome: &Outcome, agent: &Identifier) -> Result<Quantity, CoreError> {
    outcome.resources_of(agent).map(|r| table.quantity(r).cloned()).sum()
}

/// Extends the scenario with a constant agent attribute `need` equal to the
/// accumulation of the byte-order-smallest agent under `outcome`.
///
/// Under the extended scenario, strict equity holds for `outcome` exactly
/// when equality held under the original.
pub fn tau_transform(
    scenario: &FairnessScenario,
    outcome: &Outcome,
    utility: &Identifier,
    need: &Identifier,
) -> Result<FairnessScenario, CoreError> {
    if scenario.agent_attributes().contains_key(need) {
        return Err(CoreError::AttributeExists(need.clone()));
    }
    let anchor = scenario
        .agents()
        .first()
        .ok_or(CoreError::InvalidScenario(vec![super::scenario::Diagnostic::EmptyAgents]))?;
    let level = accumulation(scenario, utility, outcome, anchor)?;
    let values = scenario
        .agents()
        .iter()
        .map(|a| (a.clone(), AttributeValue::Quantity(level.clone())))
        .collect();
    scenario.with_agent_attribute(AttributeTable::new(need.clone(), SubjectKind::Agent, ValueKind::Quantity, values))
}

