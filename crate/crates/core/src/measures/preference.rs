//! Envy under ordinal preferences.

use std::collections::BTreeMap;

use crate::model::{FairnessScenario, Identifier, Outcome, ValueKind};

use super::{MeasureError, MeasureResult};

/// 1 iff no agent envies: there is no resource held by some other agent,
/// not held by the agent itself, that the agent ranks strictly above
/// everything it holds. An agent holding nothing ranks any such resource
/// above its (empty) holdings.
pub fn weak_envy_freeness(
    s: &FairnessScenario,
    o: &Outcome,
    ranking: &Identifier,
) -> Result<MeasureResult, MeasureError> {
    let rankings = s.agent_attribute_of_kind(ranking, ValueKind::Ranking)?;
    for agent in s.agents() {
        let position: BTreeMap<&Identifier, usize> =
            rankings.ranking(agent)?.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let rank = |r: &Identifier| position.get(r).copied().unwrap_or(usize::MAX);
        // The best-ranked held resource decides: b' beats all holdings iff
        // it beats the best of them.
        let best_held = o.resources_of(agent).map(rank).min();
        let envies = o.pairs().iter().any(|(other, coveted)| {
            other != agent
                && !o.contains(agent, coveted)
                && best_held.is_none_or(|best| rank(coveted) < best)
        });
        if envies {
            return Ok(MeasureResult::boolean(false));
        }
    }
    Ok(MeasureResult::boolean(true))
}
