use thiserror::Error;

use super::identifier::{Identifier, InvalidIdentifier};
use super::scenario::{Diagnostic, SubjectKind, ValueKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    InvalidIdentifier(#[from] InvalidIdentifier),
    #[error("unknown agent {0}")]
    UnknownAgent(Identifier),
    #[error("unknown resource {0}")]
    UnknownResource(Identifier),
    #[error("no {subject_kind} attribute named `{name}`")]
    MissingAttribute { name: Identifier, subject_kind: SubjectKind },
    #[error("attribute `{attribute}` holds {found} values, expected {expected}")]
    AttributeKind { attribute: Identifier, expected: ValueKind, found: ValueKind },
    #[error("attribute `{attribute}` has no value for {subject}")]
    MissingValue { attribute: Identifier, subject: Identifier },
    #[error("attribute `{attribute}` has an invalid value for {subject}")]
    InvalidValue { attribute: Identifier, subject: Identifier },
    #[error("attribute `{0}` already exists")]
    AttributeExists(Identifier),
    #[error("duplicate pair ({0}, {1})")]
    DuplicatePair(Identifier, Identifier),
    #[error("invalid scenario: {}", join(.0))]
    InvalidScenario(Vec<Diagnostic>),
}

fn join(diagnostics: &[Diagnostic]) -> String {
    diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
