//! Group fairness (statistical parity) and individual fairness.

use std::collections::BTreeMap;
use std::fmt;

use crate::model::{FairnessScenario, Identifier, Outcome, Quantity, ValueKind};

use super::{MeasureError, MeasureResult};

/// Strictly positive tolerance for [`similar_eps`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Epsilon(Quantity);

impl Epsilon {
    pub fn new(value: Quantity) -> Result<Self, MeasureError> {
        if value.is_positive() {
            Ok(Self(value))
        } else {
            Err(MeasureError::NonPositiveEpsilon(value))
        }
    }

    pub fn value(&self) -> &Quantity {
        &self.0
    }
}

impl Default for Epsilon {
    /// 1/100.
    fn default() -> Self {
        Self(Quantity::new(1, 100).expect("nonzero denominator"))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `x` and `y` are equal, or their difference relative to the larger
/// magnitude is below `eps`.
pub fn similar_eps(x: &Quantity, y: &Quantity, eps: &Epsilon) -> bool {
    if x == y {
        return true;
    }
    let larger = std::cmp::max(x.abs(), y.abs());
    // larger > 0 here since x != y
    (x - y).abs() / larger < eps.0
}

/// Share of each group receiving the target resource.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRates {
    /// Members with the protected attribute.
    pub rate_positive: Quantity,
    /// Members without it.
    pub rate_negative: Quantity,
}

pub fn group_rates(
    s: &FairnessScenario,
    o: &Outcome,
    protected: &Identifier,
    target: &Identifier,
) -> Result<GroupRates, MeasureError> {
    let flags = s.agent_attribute_of_kind(protected, ValueKind::Boolean)?;
    s.require_resource(target)?;
    // (members, receiving) per flag value
    let mut counts = [(0i64, 0i64); 2];
    for agent in s.agents() {
        let slot = &mut counts[usize::from(flags.flag(agent)?)];
        slot.0 += 1;
        if o.contains(agent, target) {
            slot.1 += 1;
        }
    }
    let rate = |(members, receiving): (i64, i64), group: &'static str| {
        Quantity::new(receiving, members).map_err(|_| MeasureError::EmptyGroup { attribute: protected.clone(), group })
    };
    Ok(GroupRates { rate_positive: rate(counts[1], "protected")?, rate_negative: rate(counts[0], "unprotected")? })
}

/// 1 iff acceptance rates of the protected and unprotected groups are
/// similar up to `eps`. Either group being empty is an error.
pub fn group_fairness(
    s: &FairnessScenario,
    o: &Outcome,
    protected: &Identifier,
    target: &Identifier,
    eps: &Epsilon,
) -> Result<MeasureResult, MeasureError> {
    let rates = group_rates(s, o, protected, target)?;
    Ok(MeasureResult::boolean(similar_eps(&rates.rate_positive, &rates.rate_negative, eps)))
}

/// 1 iff agents sharing a value of the essential attribute either all
/// receive the target resource or all do not.
pub fn individual_fairness(
    s: &FairnessScenario,
    o: &Outcome,
    essential: &Identifier,
    target: &Identifier,
) -> Result<MeasureResult, MeasureError> {
    let flags = s.agent_attribute_of_kind(essential, ValueKind::Boolean)?;
    s.require_resource(target)?;
    let mut receipt_by_class: BTreeMap<bool, bool> = BTreeMap::new();
    for agent in s.agents() {
        let receives = o.contains(agent, target);
        let seen = *receipt_by_class.entry(flags.flag(agent)?).or_insert(receives);
        if seen != receives {
            return Ok(MeasureResult::boolean(false));
        }
    }
    Ok(MeasureResult::boolean(true))
}
