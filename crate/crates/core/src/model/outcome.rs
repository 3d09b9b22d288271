use std::collections::BTreeSet;

use super::error::CoreError;
use super::identifier::Identifier;
use super::scenario::FairnessScenario;

/// A set of (agent, resource) pairs.
///
/// An outcome is checked against one scenario when it is built; it does not
/// keep a reference to that scenario.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Outcome {
    pairs: BTreeSet<(Identifier, Identifier)>,
}

impl Outcome {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an outcome bound to `scenario`, rejecting unknown identifiers
    /// and repeated pairs.
    pub fn new<I>(scenario: &FairnessScenario, pairs: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (Identifier, Identifier)>,
    {
        let mut set = BTreeSet::new();
        for (agent, resource) in pairs {
            scenario.require_agent(&agent)?;
            scenario.require_resource(&resource)?;
            if set.contains(&(agent.clone(), resource.clone())) {
                return Err(CoreError::DuplicatePair(agent, resource));
            }
            set.insert((agent, resource));
        }
        Ok(Self { pairs: set })
    }

    /// Convenience constructor from string pairs.
    pub fn from_names<'a, I>(scenario: &FairnessScenario, pairs: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let pairs = pairs
            .into_iter()
            .map(|(a, b)| Ok((Identifier::new(a)?, Identifier::new(b)?)))
            .collect::<Result<Vec<_>, CoreError>>()?;
        Self::new(scenario, pairs)
    }

    pub fn pairs(&self) -> &BTreeSet<(Identifier, Identifier)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Membership test without scenario checks.
    pub fn contains(&self, agent: &Identifier, resource: &Identifier) -> bool {
        // Tuple lookup needs owned keys; scan the agent's range instead.
        self.resources_of(agent).any(|r| r == resource)
    }

    /// Resources received by `agent`, in byte order.
    pub fn resources_of<'a>(&'a self, agent: &'a Identifier) -> impl Iterator<Item = &'a Identifier> + 'a {
        self.pairs
            .range((agent.clone(), min_identifier())..)
            .take_while(move |(a, _)| a == agent)
            .map(|(_, r)| r)
    }

    /// Agents receiving `resource`.
    pub fn holders_of<'a>(&'a self, resource: &'a Identifier) -> impl Iterator<Item = &'a Identifier> + 'a {
        self.pairs.iter().filter(move |(_, r)| r == resource).map(|(a, _)| a)
    }

    /// Union of two outcomes over the same scenario.
    pub fn union(&self, other: &Outcome) -> Outcome {
        Outcome { pairs: self.pairs.union(&other.pairs).cloned().collect() }
    }
}

fn min_identifier() -> Identifier {
    // "A" < "_" < "a" in byte order, and no identifier sorts below "A".
    Identifier::new("A").expect("valid")
}

/// True iff `agent` receives `resource` in `outcome`; both must belong to
/// `scenario`.
pub fn receives(
    scenario: &FairnessScenario,
    outcome: &Outcome,
    agent: &Identifier,
    resource: &Identifier,
) -> Result<bool, CoreError> {
    scenario.require_agent(agent)?;
    scenario.require_resource(resource)?;
    Ok(outcome.contains(agent, resource))
}
