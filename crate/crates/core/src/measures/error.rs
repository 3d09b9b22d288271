use thiserror::Error;

use crate::model::{CoreError, Identifier, Quantity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Core(#[from] CoreError),
    /// A ratio over a group is undefined because the group has no members.
    #[error("{group} group of attribute `{attribute}` is empty")]
    EmptyGroup { attribute: Identifier, group: &'static str },
    #[error("agent {agent} accumulates a negative amount ({amount})")]
    NegativeAccumulation { agent: Identifier, amount: Quantity },
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input sequence")]
    EmptyInput,
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Quantity),
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    #[error("measure `{measure}` needs a value for `{binding}`")]
    MissingBinding { measure: &'static str, binding: &'static str },
}

impl MeasureError {
    /// Errors caused by degenerate input data rather than missing or
    /// mistyped attributes.
    pub fn is_degenerate_input(&self) -> bool {
        matches!(
            self,
            MeasureError::EmptyGroup { .. }
                | MeasureError::NegativeAccumulation { .. }
                | MeasureError::LengthMismatch { .. }
                | MeasureError::EmptyInput
        )
    }
}
