use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Number, Value as Json};

use crate::model::{
    AttributeTable, AttributeValue, CoreError, Diagnostic, FairnessScenario, Identifier, Outcome, Quantity, SubjectKind,
    ValueKind,
};

use super::error::{position, ParseError, ParseErrorKind};

const SCENARIO_KEYS: [&str; 5] = ["version", "agents", "resources", "agent_attributes", "resource_attributes"];
const OUTCOME_KEYS: [&str; 2] = ["version", "pairs"];

/// Finds the location of a JSON path by scanning for each quoted segment
/// in turn, so errors point at the offending key.
struct Locator<'t> {
    text: &'t str,
}

impl Locator<'_> {
    fn at(&self, path: &[&str]) -> (usize, usize) {
        let (mut cursor, mut offset) = (0, 0);
        for segment in path {
            let needle = format!("\"{segment}\"");
            match self.text[cursor..].find(&needle) {
                Some(found) => {
                    offset = cursor + found;
                    cursor = offset + needle.len();
                }
                None => break,
            }
        }
        position(self.text, offset)
    }

    fn schema(&self, path: &[&str], message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Schema, self.at(path), message)
    }

    fn invalid(&self, path: &[&str], message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Invalid, self.at(path), message)
    }
}

fn parse_json(text: &str) -> Result<Json, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        let line = e.line().max(1);
        let column = e.column().max(1);
        ParseError::new(ParseErrorKind::Syntax, (line, column), format!("invalid JSON: {e}"))
    })
}

fn root_object<'j>(root: &'j Json, allowed: &[&str], loc: &Locator<'_>) -> Result<&'j Map<String, Json>, ParseError> {
    let object = root.as_object().ok_or_else(|| loc.schema(&[], "document must be a JSON object"))?;
    if let Some(key) = object.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(loc.schema(&[key], format!("unknown field `{key}`")));
    }
    match object.get("version") {
        None => {}
        Some(v) if v.as_u64() == Some(1) => {}
        Some(_) => return Err(loc.schema(&["version"], "unsupported version, expected 1")),
    }
    Ok(object)
}

fn identifier(value: &Json, path: &[&str], loc: &Locator<'_>) -> Result<Identifier, ParseError> {
    let text = value.as_str().ok_or_else(|| loc.schema(path, "expected an identifier string"))?;
    Identifier::new(text).map_err(|e| loc.schema(path, e.to_string()))
}

fn identifier_set(object: &Map<String, Json>, key: &str, loc: &Locator<'_>) -> Result<BTreeSet<Identifier>, ParseError> {
    let items = object
        .get(key)
        .ok_or_else(|| loc.schema(&[], format!("missing field `{key}`")))?
        .as_array()
        .ok_or_else(|| loc.schema(&[key], format!("`{key}` must be an array of identifiers")))?;
    if items.is_empty() {
        return Err(loc.schema(&[key], format!("{key} must be non-empty")));
    }
    let mut set = BTreeSet::new();
    for item in items {
        let name = identifier(item, &[key], loc)?;
        if !set.insert(name.clone()) {
            return Err(loc.schema(&[key, name.as_str(), name.as_str()], format!("duplicate identifier {name} in `{key}`")));
        }
    }
    Ok(set)
}

fn quantity(value: &Json, path: &[&str], loc: &Locator<'_>) -> Result<Quantity, ParseError> {
    let text = match value {
        Json::Number(n) => n.to_string(),
        Json::String(s) => s.clone(),
        _ => return Err(loc.schema(path, "expected a quantity (number, decimal string or \"p/q\")")),
    };
    Quantity::parse(&text).map_err(|e| loc.schema(path, e.to_string()))
}

fn attribute_value(kind: ValueKind, value: &Json, path: &[&str], loc: &Locator<'_>) -> Result<AttributeValue, ParseError> {
    Ok(match kind {
        ValueKind::Quantity => AttributeValue::Quantity(quantity(value, path, loc)?),
        ValueKind::Boolean => {
            AttributeValue::Flag(value.as_bool().ok_or_else(|| loc.schema(path, "expected true or false"))?)
        }
        ValueKind::Ranking => {
            let items = value.as_array().ok_or_else(|| loc.schema(path, "expected an array of resources"))?;
            AttributeValue::Ranking(items.iter().map(|v| identifier(v, path, loc)).collect::<Result<_, _>>()?)
        }
        ValueKind::ResourceRef => AttributeValue::ResourceRef(identifier(value, path, loc)?),
    })
}

fn attribute_tables(
    object: &Map<String, Json>,
    key: &str,
    subject_kind: SubjectKind,
    loc: &Locator<'_>,
) -> Result<BTreeMap<Identifier, AttributeTable>, ParseError> {
    let Some(section) = object.get(key) else { return Ok(BTreeMap::new()) };
    let section = section.as_object().ok_or_else(|| loc.schema(&[key], format!("`{key}` must be an object")))?;
    let mut tables = BTreeMap::new();
    for (name, table) in section {
        let path = [key, name.as_str()];
        let name = Identifier::new(name.as_str()).map_err(|e| loc.schema(&path, e.to_string()))?;
        let table = table.as_object().ok_or_else(|| loc.schema(&path, "attribute must be an object"))?;
        if let Some(extra) = table.keys().find(|k| *k != "kind" && *k != "values") {
            return Err(loc.schema(&[key, name.as_str(), extra], format!("unknown field `{extra}`")));
        }
        let kind_path = [key, name.as_str(), "kind"];
        let kind = table
            .get("kind")
            .ok_or_else(|| loc.schema(&path, format!("attribute `{name}` is missing `kind`")))?
            .as_str()
            .and_then(ValueKind::from_tag)
            .ok_or_else(|| loc.schema(&kind_path, "kind must be one of quantity, boolean, ranking, resource"))?;
        let values_path = [key, name.as_str(), "values"];
        let values = table
            .get("values")
            .ok_or_else(|| loc.schema(&path, format!("attribute `{name}` is missing `values`")))?
            .as_object()
            .ok_or_else(|| loc.schema(&values_path, "values must be an object"))?;
        let mut parsed = BTreeMap::new();
        for (subject, value) in values {
            let value_path = [key, name.as_str(), "values", subject.as_str()];
            let subject = Identifier::new(subject.as_str()).map_err(|e| loc.schema(&value_path, e.to_string()))?;
            parsed.insert(subject, attribute_value(kind, value, &value_path, loc)?);
        }
        tables.insert(name.clone(), AttributeTable::new(name, subject_kind, kind, parsed));
    }
    Ok(tables)
}

/// Path to the part of the document a diagnostic is about.
fn diagnostic_path(d: &Diagnostic) -> Vec<&str> {
    let section = |kind: &SubjectKind| match kind {
        SubjectKind::Agent => "agent_attributes",
        SubjectKind::Resource => "resource_attributes",
    };
    match d {
        Diagnostic::EmptyAgents => vec!["agents"],
        Diagnostic::EmptyResources => vec!["resources"],
        Diagnostic::NameCollision(name) => vec!["resources", name.as_str()],
        Diagnostic::MisfiledTable { attribute, .. } => vec![attribute.as_str()],
        Diagnostic::MissingValue { attribute, subject_kind, .. } => vec![section(subject_kind), attribute.as_str()],
        Diagnostic::UnknownSubject { attribute, subject_kind, subject } => {
            vec![section(subject_kind), attribute.as_str(), subject.as_str()]
        }
        Diagnostic::KindMismatch { attribute, subject, .. }
        | Diagnostic::BadRanking { attribute, subject }
        | Diagnostic::UnknownResourceRef { attribute, subject, .. } => vec![attribute.as_str(), subject.as_str()],
    }
}

/// Parses a scenario document and checks every scenario invariant.
///
/// Numbers are read exactly: `0.1` becomes 1/10.
pub fn parse_scenario(text: &str) -> Result<FairnessScenario, ParseError> {
    let loc = Locator { text };
    let root = parse_json(text)?;
    let object = root_object(&root, &SCENARIO_KEYS, &loc)?;
    let agents = identifier_set(object, "agents", &loc)?;
    let resources = identifier_set(object, "resources", &loc)?;
    let agent_attributes = attribute_tables(object, "agent_attributes", SubjectKind::Agent, &loc)?;
    let resource_attributes = attribute_tables(object, "resource_attributes", SubjectKind::Resource, &loc)?;
    FairnessScenario::new(agents, resources, agent_attributes, resource_attributes).map_err(|e| match e {
        CoreError::InvalidScenario(diagnostics) => {
            let message = CoreError::InvalidScenario(diagnostics.clone()).to_string();
            let mut err = loc.invalid(&diagnostic_path(&diagnostics[0]), message);
            err.diagnostics = diagnostics;
            err
        }
        other => loc.invalid(&[], other.to_string()),
    })
}

fn quantity_json(q: &Quantity) -> Json {
    if q.is_integer() {
        if let Ok(n) = i64::try_from(q.numer()) {
            return Json::Number(Number::from(n));
        }
    }
    Json::String(q.to_string())
}

fn value_json(value: &AttributeValue) -> Json {
    match value {
        AttributeValue::Quantity(q) => quantity_json(q),
        AttributeValue::Flag(b) => Json::Bool(*b),
        AttributeValue::Ranking(order) => Json::Array(order.iter().map(|r| Json::String(r.to_string())).collect()),
        AttributeValue::ResourceRef(r) => Json::String(r.to_string()),
    }
}

fn tables_json(tables: &BTreeMap<Identifier, AttributeTable>) -> Json {
    let section = tables
        .iter()
        .map(|(name, table)| {
            let values: Map<String, Json> = table.values.iter().map(|(s, v)| (s.to_string(), value_json(v))).collect();
            (name.to_string(), json!({ "kind": table.value_kind.tag(), "values": values }))
        })
        .collect::<Map<_, _>>();
    Json::Object(section)
}

/// Canonical rendering: sorted keys, two-space indent, integers as JSON
/// numbers and other quantities as exact strings.
pub fn format_scenario(s: &FairnessScenario) -> String {
    let names = |set: &BTreeSet<Identifier>| set.iter().map(ToString::to_string).collect::<Vec<_>>();
    let doc = json!({
        "agents": names(s.agents()),
        "resources": names(s.resources()),
        "agent_attributes": tables_json(s.agent_attributes()),
        "resource_attributes": tables_json(s.resource_attributes()),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Parses `{"pairs": [["A","R3"], ...]}` against `s`.
pub fn parse_outcome(text: &str, s: &FairnessScenario) -> Result<Outcome, ParseError> {
    let loc = Locator { text };
    let root = parse_json(text)?;
    let object = root_object(&root, &OUTCOME_KEYS, &loc)?;
    let pairs = object
        .get("pairs")
        .ok_or_else(|| loc.schema(&[], "missing field `pairs`"))?
        .as_array()
        .ok_or_else(|| loc.schema(&["pairs"], "`pairs` must be an array"))?;
    let mut parsed = BTreeSet::new();
    for pair in pairs {
        let Some([agent, resource]) = pair.as_array().map(Vec::as_slice) else {
            return Err(loc.schema(&["pairs"], "each pair must be [agent, resource]"));
        };
        let agent = identifier(agent, &["pairs"], &loc)?;
        let resource = identifier(resource, &["pairs"], &loc)?;
        if !s.has_agent(&agent) {
            return Err(loc.invalid(&["pairs", agent.as_str()], format!("unknown agent {agent}")));
        }
        if !s.has_resource(&resource) {
            return Err(loc.invalid(&["pairs", resource.as_str()], format!("unknown resource {resource}")));
        }
        if !parsed.insert((agent.clone(), resource.clone())) {
            return Err(loc.invalid(&["pairs", agent.as_str()], format!("duplicate pair ({agent}, {resource})")));
        }
    }
    Outcome::new(s, parsed).map_err(|e| loc.invalid(&["pairs"], e.to_string()))
}

pub fn format_outcome(o: &Outcome) -> String {
    let pairs: Vec<Json> = o.pairs().iter().map(|(a, r)| json!([a.to_string(), r.to_string()])).collect();
    let mut text = serde_json::to_string_pretty(&json!({ "pairs": pairs })).expect("JSON values always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::id;
    use crate::testdata::{compas, jackets, subsidy};

    const SUBSIDY: &str = r#"{ "agents": ["A","B","C","D","E","F"],
  "resources": ["R1","R2","R3"],
  "agent_attributes": {
    "q": { "kind": "quantity", "values": {"A":10,"B":20,"C":30,"D":10,"E":20,"F":30} } },
  "resource_attributes": {
    "u": { "kind": "quantity", "values": {"R1":10,"R2":20,"R3":30} } } }"#;

    #[test]
    fn subsidy_document() {
        assert_eq!(parse_scenario(SUBSIDY).unwrap(), subsidy());
    }

    #[test]
    fn exact_decimals() {
        let text = r#"{"agents":["A"],"resources":["R"],"resource_attributes":{"u":{"kind":"quantity","values":{"R":0.01}}},
            "agent_attributes":{"q":{"kind":"quantity","values":{"A":"1/3"}}}}"#;
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.resource_attribute(&id("u")).unwrap().quantity(&id("R")).unwrap(), &Quantity::new(1, 100).unwrap());
        assert_eq!(s.agent_attribute(&id("q")).unwrap().quantity(&id("A")).unwrap(), &Quantity::new(1, 3).unwrap());
    }

    #[test]
    fn empty_agents() {
        let err = parse_scenario(r#"{"agents": [], "resources": ["R"]}"#).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Schema);
        assert_eq!(err.message, "agents must be non-empty");
        assert_eq!((err.line, err.column), (1, 2));
    }

    #[test]
    fn duplicate_agent() {
        let err = parse_scenario("{\"agents\": [\"A\",\n \"A\"], \"resources\": [\"R\"]}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Schema);
        assert!(err.message.starts_with("duplicate identifier"), "{}", err.message);
        assert_eq!((err.line, err.column), (2, 2));
    }

    #[test]
    fn syntax_and_schema_errors() {
        let err = parse_scenario("{\"agents\": [\"A\"\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert!(err.line >= 1 && err.column >= 1);
        assert_eq!(parse_scenario("").unwrap_err().kind, ParseErrorKind::Syntax);

        let err = parse_scenario(r#"{"agents":["A"],"resources":["R"],"colour":1}"#).unwrap_err();
        assert_eq!(err.message, "unknown field `colour`");
        let err = parse_scenario(r#"{"agents":["A"],"resources":["R"],"version":2}"#).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Schema);
        assert!(parse_scenario(r#"{"agents":["A"],"resources":["R"],"version":1}"#).is_ok());

        let bad_kind = r#"{"agents":["A"],"resources":["R"],"agent_attributes":{"q":{"kind":"colour","values":{}}}}"#;
        assert_eq!(parse_scenario(bad_kind).unwrap_err().kind, ParseErrorKind::Schema);
        let bad_value = r#"{"agents":["A"],"resources":["R"],"agent_attributes":{"q":{"kind":"quantity","values":{"A":true}}}}"#;
        assert_eq!(parse_scenario(bad_value).unwrap_err().kind, ParseErrorKind::Schema);
    }

    #[test]
    fn invariant_violations() {
        let text = r#"{"agents":["A","B"],"resources":["R"],"agent_attributes":{"q":{"kind":"quantity","values":{"A":1}}}}"#;
        let err = parse_scenario(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Invalid);
        assert_eq!(
            err.diagnostics,
            vec![Diagnostic::MissingValue { attribute: id("q"), subject_kind: SubjectKind::Agent, subject: id("B") }]
        );
        assert!(err.message.contains("no value for agent B"));
    }

    #[test]
    fn scenario_round_trip() {
        for s in [subsidy(), jackets(), compas()] {
            let text = format_scenario(&s);
            assert_eq!(parse_scenario(&text).unwrap(), s);
            assert_eq!(format_scenario(&parse_scenario(&text).unwrap()), text);
        }
    }

    #[test]
    fn outcomes() {
        let s = subsidy();
        let o = parse_outcome(r#"{"pairs": [["A","R3"],["B","R3"]]}"#, &s).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(parse_outcome(&format_outcome(&o), &s).unwrap(), o);

        let err = parse_outcome(r#"{"pairs": [["X","R3"]]}"#, &s).unwrap_err();
        assert_eq!(err.message, "unknown agent X");
        assert_eq!(err.kind, ParseErrorKind::Invalid);
        let err = parse_outcome(r#"{"pairs": [["A","R3"],["A","R3"]]}"#, &s).unwrap_err();
        assert!(err.message.starts_with("duplicate pair"));
        let err = parse_outcome(r#"{"pairs": [["A"]]}"#, &s).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Schema);
        assert!(parse_outcome(r#"{"pairs": []}"#, &s).unwrap().is_empty());
    }
}
