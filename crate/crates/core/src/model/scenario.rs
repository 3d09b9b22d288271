//! Fairness scenarios: agents, resources, and their attribute tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::error::CoreError;
use super::identifier::Identifier;
use super::quantity::Quantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubjectKind {
    Agent,
    Resource,
}

impl fmt::Display for SubjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubjectKind::Agent => "agent",
            SubjectKind::Resource => "resource",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueKind {
    Quantity,
    Boolean,
    Ranking,
    ResourceRef,
}

impl ValueKind {
    /// The `kind` tag used in scenario documents.
    pub fn tag(self) -> &'static str {
        match self {
            ValueKind::Quantity => "quantity",
            ValueKind::Boolean => "boolean",
            ValueKind::Ranking => "ranking",
            ValueKind::ResourceRef => "resource",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "quantity" => ValueKind::Quantity,
            "boolean" => ValueKind::Boolean,
            "ranking" => ValueKind::Ranking,
            "resource" => ValueKind::ResourceRef,
            _ => return None,
        })
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeValue {
    Quantity(Quantity),
    Flag(bool),
    /// Resources ordered from most to least preferred.
    Ranking(Vec<Identifier>),
    ResourceRef(Identifier),
}

impl AttributeValue {
    pub fn kind(&self) -> ValueKind {
        match self {
            AttributeValue::Quantity(_) => ValueKind::Quantity,
            AttributeValue::Flag(_) => ValueKind::Boolean,
            AttributeValue::Ranking(_) => ValueKind::Ranking,
            AttributeValue::ResourceRef(_) => ValueKind::ResourceRef,
        }
    }
}

/// A named attribute function over all agents or all resources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeTable {
    pub name: Identifier,
    pub subject_kind: SubjectKind,
    pub value_kind: ValueKind,
    pub values: BTreeMap<Identifier, AttributeValue>,
}

impl AttributeTable {
    pub fn new(
        name: Identifier,
        subject_kind: SubjectKind,
        value_kind: ValueKind,
        values: BTreeMap<Identifier, AttributeValue>,
    ) -> Self {
        Self { name, subject_kind, value_kind, values }
    }

    pub fn get(&self, subject: &Identifier) -> Option<&AttributeValue> {
        self.values.get(subject)
    }

    /// Quantity held for `subject`, failing if the table is not
    /// quantity-valued or lacks the subject.
    pub fn quantity(&self, subject: &Identifier) -> Result<&Quantity, CoreError> {
        match self.lookup(subject, ValueKind::Quantity)? {
            AttributeValue::Quantity(q) => Ok(q),
            _ => unreachable!("kind checked by lookup"),
        }
    }

    pub fn flag(&self, subject: &Identifier) -> Result<bool, CoreError> {
        match self.lookup(subject, ValueKind::Boolean)? {
            AttributeValue::Flag(b) => Ok(*b),
            _ => unreachable!("kind checked by lookup"),
        }
    }

    pub fn ranking(&self, subject: &Identifier) -> Result<&[Identifier], CoreError> {
        match self.lookup(subject, ValueKind::Ranking)? {
            AttributeValue::Ranking(r) => Ok(r),
            _ => unreachable!("kind checked by lookup"),
        }
    }

    pub fn resource_ref(&self, subject: &Identifier) -> Result<&Identifier, CoreError> {
        match self.lookup(subject, ValueKind::ResourceRef)? {
            AttributeValue::ResourceRef(r) => Ok(r),
            _ => unreachable!("kind checked by lookup"),
        }
    }

    fn lookup(&self, subject: &Identifier, kind: ValueKind) -> Result<&AttributeValue, CoreError> {
        let value = self.values.get(subject).ok_or_else(|| CoreError::MissingValue {
            attribute: self.name.clone(),
            subject: subject.clone(),
        })?;
        if value.kind() != kind {
            return Err(CoreError::AttributeKind {
                attribute: self.name.clone(),
                expected: kind,
                found: value.kind(),
            });
        }
        Ok(value)
    }
}

/// One violated scenario invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    EmptyAgents,
    EmptyResources,
    /// The identifier is used both as an agent and as a resource.
    NameCollision(Identifier),
    MisfiledTable { attribute: Identifier, expected: SubjectKind },
    MissingValue { attribute: Identifier, subject_kind: SubjectKind, subject: Identifier },
    UnknownSubject { attribute: Identifier, subject_kind: SubjectKind, subject: Identifier },
    KindMismatch { attribute: Identifier, subject: Identifier, expected: ValueKind, found: ValueKind },
    BadRanking { attribute: Identifier, subject: Identifier },
    UnknownResourceRef { attribute: Identifier, subject: Identifier, resource: Identifier },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyAgents => f.write_str("agents must be non-empty"),
            Diagnostic::EmptyResources => f.write_str("resources must be non-empty"),
            Diagnostic::NameCollision(name) => {
                write!(f, "identifier {name} names both an agent and a resource")
            }
            Diagnostic::MisfiledTable { attribute, expected } => {
                write!(f, "attribute `{attribute}` is filed under {expected} attributes but is not a {expected} table")
            }
            Diagnostic::MissingValue { attribute, subject_kind, subject } => {
                write!(f, "attribute `{attribute}` has no value for {subject_kind} {subject}")
            }
            Diagnostic::UnknownSubject { attribute, subject_kind, subject } => {
                write!(f, "attribute `{attribute}` has a value for unknown {subject_kind} {subject}")
            }
            Diagnostic::KindMismatch { attribute, subject, expected, found } => {
                write!(f, "attribute `{attribute}` value for {subject} is a {found}, expected {expected}")
            }
            Diagnostic::BadRanking { attribute, subject } => {
                write!(f, "ranking for {subject} is not a permutation of R (attribute `{attribute}`)")
            }
            Diagnostic::UnknownResourceRef { attribute, subject, resource } => {
                write!(f, "attribute `{attribute}` maps {subject} to unknown resource {resource}")
            }
        }
    }
}

/// Agents, resources, and attribute tables keyed by name.
///
/// Construction through [`FairnessScenario::from_parts`] performs no checks;
/// [`FairnessScenario::new`] and [`ScenarioBuilder::build`] reject anything
/// [`validate_scenario`] complains about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessScenario {
    agents: BTreeSet<Identifier>,
    resources: BTreeSet<Identifier>,
    agent_attributes: BTreeMap<Identifier, AttributeTable>,
    resource_attributes: BTreeMap<Identifier, AttributeTable>,
}

impl FairnessScenario {
    pub fn from_parts(
        agents: BTreeSet<Identifier>,
        resources: BTreeSet<Identifier>,
        agent_attributes: BTreeMap<Identifier, AttributeTable>,
        resource_attributes: BTreeMap<Identifier, AttributeTable>,
    ) -> Self {
        Self { agents, resources, agent_attributes, resource_attributes }
    }

    pub fn new(
        agents: BTreeSet<Identifier>,
        resources: BTreeSet<Identifier>,
        agent_attributes: BTreeMap<Identifier, AttributeTable>,
        resource_attributes: BTreeMap<Identifier, AttributeTable>,
    ) -> Result<Self, CoreError> {
        let scenario = Self::from_parts(agents, resources, agent_attributes, resource_attributes);
        let diagnostics = validate_scenario(&scenario);
        if diagnostics.is_empty() {
            Ok(scenario)
        } else {
            Err(CoreError::InvalidScenario(diagnostics))
        }
    }

    pub fn builder() -> ScenarioBuilder {
        ScenarioBuilder::default()
    }

    /// Agents in byte order.
    pub fn agents(&self) -> &BTreeSet<Identifier> {
        &self.agents
    }

    pub fn resources(&self) -> &BTreeSet<Identifier> {
        &self.resources
    }

    pub fn agent_attributes(&self) -> &BTreeMap<Identifier, AttributeTable> {
        &self.agent_attributes
    }

    pub fn resource_attributes(&self) -> &BTreeMap<Identifier, AttributeTable> {
        &self.resource_attributes
    }

    pub fn has_agent(&self, agent: &Identifier) -> bool {
        self.agents.contains(agent)
    }

    pub fn has_resource(&self, resource: &Identifier) -> bool {
        self.resources.contains(resource)
    }

    pub fn agent_attribute(&self, name: &Identifier) -> Result<&AttributeTable, CoreError> {
        self.agent_attributes.get(name).ok_or_else(|| CoreError::MissingAttribute {
            name: name.clone(),
            subject_kind: SubjectKind::Agent,
        })
    }

    pub fn resource_attribute(&self, name: &Identifier) -> Result<&AttributeTable, CoreError> {
        self.resource_attributes.get(name).ok_or_else(|| CoreError::MissingAttribute {
            name: name.clone(),
            subject_kind: SubjectKind::Resource,
        })
    }

    /// Looks up an agent attribute and checks its value kind.
    pub fn agent_attribute_of_kind(&self, name: &Identifier, kind: ValueKind) -> Result<&AttributeTable, CoreError> {
        let table = self.agent_attribute(name)?;
        check_kind(table, kind)?;
        Ok(table)
    }

    pub fn resource_attribute_of_kind(
        &self,
        name: &Identifier,
        kind: ValueKind,
    ) -> Result<&AttributeTable, CoreError> {
        let table = self.resource_attribute(name)?;
        check_kind(table, kind)?;
        Ok(table)
    }

    /// Returns a copy with `table` added to the agent attributes.
    pub fn with_agent_attribute(&self, table: AttributeTable) -> Result<Self, CoreError> {
        if self.agent_attributes.contains_key(&table.name) {
            return Err(CoreError::AttributeExists(table.name));
        }
        let mut next = self.clone();
        next.agent_attributes.insert(table.name.clone(), table);
        Ok(next)
    }

    pub fn with_resource_attribute(&self, table: AttributeTable) -> Result<Self, CoreError> {
        if self.resource_attributes.contains_key(&table.name) {
            return Err(CoreError::AttributeExists(table.name));
        }
        let mut next = self.clone();
        next.resource_attributes.insert(table.name.clone(), table);
        Ok(next)
    }

    pub fn require_agent(&self, agent: &Identifier) -> Result<(), CoreError> {
        if self.has_agent(agent) {
            Ok(())
        } else {
            Err(CoreError::UnknownAgent(agent.clone()))
        }
    }

    pub fn require_resource(&self, resource: &Identifier) -> Result<(), CoreError> {
        if self.has_resource(resource) {
            Ok(())
        } else {
            Err(CoreError::UnknownResource(resource.clone()))
        }
    }
}

fn check_kind(table: &AttributeTable, kind: ValueKind) -> Result<(), CoreError> {
    if table.value_kind == kind {
        Ok(())
    } else {
        Err(CoreError::AttributeKind {
            attribute: table.name.clone(),
            expected: kind,
            found: table.value_kind,
        })
    }
}

/// Checks every structural invariant of a scenario, returning one
/// diagnostic per violation. An empty result means the scenario is valid.
pub fn validate_scenario(s: &FairnessScenario) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if s.agents.is_empty() {
        out.push(Diagnostic::EmptyAgents);
    }
    if s.resources.is_empty() {
        out.push(Diagnostic::EmptyResources);
    }
    out.extend(s.agents.intersection(&s.resources).cloned().map(Diagnostic::NameCollision));

    for (kind, tables, subjects) in [
        (SubjectKind::Agent, &s.agent_attributes, &s.agents),
        (SubjectKind::Resource, &s.resource_attributes, &s.resources),
    ] {
        for table in tables.values() {
            validate_table(s, table, kind, subjects, &mut out);
        }
    }
    out
}

fn validate_table(
    s: &FairnessScenario,
    table: &AttributeTable,
    expected_subject: SubjectKind,
    subjects: &BTreeSet<Identifier>,
    out: &mut Vec<Diagnostic>,
) {
    let attribute = &table.name;
    if table.subject_kind != expected_subject {
        out.push(Diagnostic::MisfiledTable { attribute: attribute.clone(), expected: expected_subject });
    }
    for subject in subjects {
        if !table.values.contains_key(subject) {
            out.push(Diagnostic::MissingValue {
                attribute: attribute.clone(),
                subject_kind: expected_subject,
                subject: subject.clone(),
            });
        }
    }
    for (subject, value) in &table.values {
        if !subjects.contains(subject) {
            out.push(Diagnostic::UnknownSubject {
                attribute: attribute.clone(),
                subject_kind: expected_subject,
                subject: subject.clone(),
            });
        }
        if value.kind() != table.value_kind {
            out.push(Diagnostic::KindMismatch {
                attribute: attribute.clone(),
                subject: subject.clone(),
                expected: table.value_kind,
                found: value.kind(),
            });
            continue;
        }
        match value {
            AttributeValue::Ranking(ranking) => {
                let distinct: BTreeSet<&Identifier> = ranking.iter().collect();
                let is_permutation = distinct.len() == ranking.len()
                    && ranking.len() == s.resources.len()
                    && distinct.iter().all(|r| s.resources.contains(*r));
                if !is_permutation {
                    out.push(Diagnostic::BadRanking { attribute: attribute.clone(), subject: subject.clone() });
                }
            }
            AttributeValue::ResourceRef(resource) if !s.resources.contains(resource) => {
                out.push(Diagnostic::UnknownResourceRef {
                    attribute: attribute.clone(),
                    subject: subject.clone(),
                    resource: resource.clone(),
                });
            }
            _ => {}
        }
    }
}

/// Incremental construction of a validated [`FairnessScenario`].
#[derive(Debug, Default, Clone)]
pub struct ScenarioBuilder {
    agents: BTreeSet<Identifier>,
    resources: BTreeSet<Identifier>,
    agent_attributes: BTreeMap<Identifier, AttributeTable>,
    resource_attributes: BTreeMap<Identifier, AttributeTable>,
    errors: Vec<CoreError>,
}

impl ScenarioBuilder {
    pub fn agents<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for name in names {
            if let Some(id) = self.ident(name.as_ref()) {
                self.agents.insert(id);
            }
        }
        self
    }

    pub fn resources<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for name in names {
            if let Some(id) = self.ident(name.as_ref()) {
                self.resources.insert(id);
            }
        }
        self
    }

    pub fn agent_quantities<I, S, Q>(self, attribute: &str, values: I) -> Self
    where
        I: IntoIterator<Item = (S, Q)>,
        S: AsRef<str>,
        Q: Into<Quantity>,
    {
        self.table(SubjectKind::Agent, attribute, ValueKind::Quantity, values, |q| {
            Some(AttributeValue::Quantity(q.into()))
        })
    }

    pub fn resource_quantities<I, S, Q>(self, attribute: &str, values: I) -> Self
    where
        I: IntoIterator<Item = (S, Q)>,
        S: AsRef<str>,
        Q: Into<Quantity>,
    {
        self.table(SubjectKind::Resource, attribute, ValueKind::Quantity, values, |q| {
            Some(AttributeValue::Quantity(q.into()))
        })
    }

    pub fn agent_flags<I, S>(self, attribute: &str, values: I) -> Self
    where
        I: IntoIterator<Item = (S, bool)>,
        S: AsRef<str>,
    {
        self.table(SubjectKind::Agent, attribute, ValueKind::Boolean, values, |b| Some(AttributeValue::Flag(b)))
    }

    pub fn agent_rankings<I, S, R, T>(self, attribute: &str, values: I) -> Self
    where
        I: IntoIterator<Item = (S, R)>,
        S: AsRef<str>,
        R: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        self.table(SubjectKind::Agent, attribute, ValueKind::Ranking, values, |ranking| {
            let ranking: Result<Vec<_>, _> = ranking.into_iter().map(|r| Identifier::new(r.as_ref())).collect();
            ranking.ok().map(AttributeValue::Ranking)
        })
    }

    pub fn agent_resource_refs<I, S, T>(self, attribute: &str, values: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        self.table(SubjectKind::Agent, attribute, ValueKind::ResourceRef, values, |r| {
            Identifier::new(r.as_ref()).ok().map(AttributeValue::ResourceRef)
        })
    }

    /// Adds a prepared table under the attribute set matching its subject kind.
    pub fn attribute(mut self, table: AttributeTable) -> Self {
        let target = match table.subject_kind {
            SubjectKind::Agent => &mut self.agent_attributes,
            SubjectKind::Resource => &mut self.resource_attributes,
        };
        if target.contains_key(&table.name) {
            self.errors.push(CoreError::AttributeExists(table.name));
        } else {
            target.insert(table.name.clone(), table);
        }
        self
    }

    pub fn build(self) -> Result<FairnessScenario, CoreError> {
        if let Some(err) = self.errors.into_iter().next() {
            return Err(err);
        }
        FairnessScenario::new(self.agents, self.resources, self.agent_attributes, self.resource_attributes)
    }

    fn ident(&mut self, name: &str) -> Option<Identifier> {
        match Identifier::new(name) {
            Ok(id) => Some(id),
            Err(e) => {
                self.errors.push(CoreError::InvalidIdentifier(e));
                None
            }
        }
    }

    fn table<I, S, V>(
        mut self,
        subject_kind: SubjectKind,
        attribute: &str,
        value_kind: ValueKind,
        values: I,
        convert: impl Fn(V) -> Option<AttributeValue>,
    ) -> Self
    where
        I: IntoIterator<Item = (S, V)>,
        S: AsRef<str>,
    {
        let Some(name) = self.ident(attribute) else { return self };
        let mut map = BTreeMap::new();
        for (subject, value) in values {
            let Some(subject) = self.ident(subject.as_ref()) else { continue };
            match convert(value) {
                Some(v) => {
                    map.insert(subject, v);
                }
                None => self.errors.push(CoreError::InvalidValue { attribute: name.clone(), subject }),
            }
        }
        self.attribute(AttributeTable::new(name, subject_kind, value_kind, map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::identifier::id;

    fn subsidy() -> FairnessScenario {
        FairnessScenario::builder()
            .agents(["A", "B", "C", "D", "E", "F"])
            .resources(["R1", "R2", "R3"])
            .agent_quantities("q", [("A", 10i64), ("B", 20), ("C", 30), ("D", 10), ("E", 20), ("F", 30)])
            .resource_quantities("u", [("R1", 10i64), ("R2", 20), ("R3", 30)])
            .build()
            .unwrap()
    }

    #[test]
    fn subsidy_is_valid() {
        assert!(validate_scenario(&subsidy()).is_empty());
    }

    #[test]
    fn empty_agents() {
        let s = FairnessScenario::from_parts(
            BTreeSet::new(),
            [id("R1")].into(),
            BTreeMap::new(),
            BTreeMap::new(),
        );
        let messages: Vec<String> = validate_scenario(&s).iter().map(ToString::to_string).collect();
        assert_eq!(messages, ["agents must be non-empty"]);
    }

    #[test]
    fn ranking_missing_a_resource() {
        let err = FairnessScenario::builder()
            .agents(["A", "B"])
            .resources(["S", "L"])
            .agent_rankings("v", [("A", vec!["L"]), ("B", vec!["S", "L"])])
            .build()
            .unwrap_err();
        let CoreError::InvalidScenario(diags) = err else { panic!("{err}") };
        assert_eq!(diags.len(), 1);
        assert!(diags[0].to_string().starts_with("ranking for A is not a permutation of R"));
    }

    #[test]
    fn ranking_with_duplicates_is_rejected() {
        let err = FairnessScenario::builder()
            .agents(["A"])
            .resources(["S", "L"])
            .agent_rankings("v", [("A", vec!["L", "L"])])
            .build()
            .unwrap_err();
        assert!(matches!(err, CoreError::InvalidScenario(ref d) if matches!(d[0], Diagnostic::BadRanking { .. })));
    }

    #[test]
    fn collisions_and_totality() {
        let s = FairnessScenario::from_parts(
            [id("A"), id("X")].into(),
            [id("X")].into(),
            [(
                id("q"),
                AttributeTable::new(
                    id("q"),
                    SubjectKind::Agent,
                    ValueKind::Quantity,
                    [
                        (id("A"), AttributeValue::Flag(true)),
                        (id("Z"), AttributeValue::Quantity(Quantity::one())),
                    ]
                    .into(),
                ),
            )]
            .into(),
            BTreeMap::new(),
        );
        let diags = validate_scenario(&s);
        assert!(diags.contains(&Diagnostic::NameCollision(id("X"))));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::MissingValue { subject, .. } if subject == &id("X"))));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::UnknownSubject { subject, .. } if subject == &id("Z"))));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::KindMismatch { subject, .. } if subject == &id("A"))));
    }

    #[test]
    fn resource_refs_must_exist() {
        let err = FairnessScenario::builder()
            .agents(["A"])
            .resources(["R_low", "R_high"])
            .agent_resource_refs("res", [("A", "R_mid")])
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("unknown resource R_mid"), "{err}");
    }

    #[test]
    fn duplicate_attribute_in_builder() {
        let err = FairnessScenario::builder()
            .agents(["A"])
            .resources(["R"])
            .agent_flags("p", [("A", true)])
            .agent_flags("p", [("A", false)])
            .build()
            .unwrap_err();
        assert_eq!(err, CoreError::AttributeExists(id("p")));
    }

    #[test]
    fn typed_lookups() {
        let s = subsidy();
        let q = s.agent_attribute_of_kind(&id("q"), ValueKind::Quantity).unwrap();
        assert_eq!(q.quantity(&id("C")).unwrap(), &Quantity::from(30));
        assert!(matches!(
            s.agent_attribute_of_kind(&id("q"), ValueKind::Boolean),
            Err(CoreError::AttributeKind { .. })
        ));
        assert!(matches!(s.resource_attribute(&id("q")), Err(CoreError::MissingAttribute { .. })));
    }
}
