//! Boolean measures over accumulated utility: equality, equity, strict equity.

use crate::model::{accumulations, FairnessScenario, Identifier, Outcome, ValueKind};

use super::{MeasureError, MeasureResult};

/// 1 iff every agent accumulates the same utility.
pub fn equality(s: &FairnessScenario, o: &Outcome, utility: &Identifier) -> Result<MeasureResult, MeasureError> {
    let totals = accumulations(s, utility, o)?;
    let mut values = totals.values();
    let holds = match values.next() {
        Some(first) => values.all(|v| v == first),
        None => true,
    };
    Ok(MeasureResult::boolean(holds))
}

/// 1 iff every agent accumulates at least its need.
pub fn equity(
    s: &FairnessScenario,
    o: &Outcome,
    utility: &Identifier,
    need: &Identifier,
) -> Result<MeasureResult, MeasureError> {
    compare_to_need(s, o, utility, need, |got, needed| got >= needed)
}

/// 1 iff every agent accumulates exactly its need.
pub fn strict_equity(
    s: &FairnessScenario,
    o: &Outcome,
    utility: &Identifier,
    need: &Identifier,
) -> Result<MeasureResult, MeasureError> {
    compare_to_need(s, o, utility, need, |got, needed| got == needed)
}

fn compare_to_need(
    s: &FairnessScenario,
    o: &Outcome,
    utility: &Identifier,
    need: &Identifier,
    ok: impl Fn(&crate::Quantity, &crate::Quantity) -> bool,
) -> Result<MeasureResult, MeasureError> {
    let needs = s.agent_attribute_of_kind(need, ValueKind::Quantity)?;
    let totals = accumulations(s, utility, o)?;
    for (agent, total) in &totals {
        if !ok(total, needs.quantity(agent)?) {
            return Ok(MeasureResult::boolean(false));
        }
    }
    Ok(MeasureResult::boolean(true))
}

/// 1 iff every agent receives at least one of `wanted`.
pub fn receives_any(s: &FairnessScenario, o: &Outcome, wanted: &[Identifier]) -> Result<MeasureResult, MeasureError> {
    for resource in wanted {
        s.require_resource(resource)?;
    }
    let holds = s.agents().iter().all(|a| o.resources_of(a).any(|r| wanted.contains(r)));
    Ok(MeasureResult::boolean(holds))
}
