use std::fmt;

use crate::model::Diagnostic;
use crate::tiles::TypeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    /// Malformed JSON or pipeline text.
    Syntax,
    /// Well-formed JSON of the wrong shape.
    Schema,
    /// A name that is not in the tile registry.
    UnknownTile,
    /// Parsed, but violates a scenario or outcome invariant.
    Invalid,
    /// A tile applied to the wrong number of arguments.
    Arity,
    /// The pipeline does not typecheck.
    Type,
}

/// A located error in scenario, outcome or pipeline text.
///
/// `line` and `column` are 1-based; columns count characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub diagnostics: Vec<Diagnostic>,
    pub type_error: Option<Box<TypeError>>,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, (line, column): (usize, usize), message: impl Into<String>) -> Self {
        Self { kind, line, column, message: message.into(), diagnostics: Vec::new(), type_error: None }
    }

    /// True for well-formed input that is rejected on semantic grounds.
    pub fn is_validation(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Invalid | ParseErrorKind::Arity | ParseErrorKind::Type)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// 1-based line and column of byte offset `offset` in `text`.
pub(crate) fn position(text: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(text.len());
    while !text.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}
