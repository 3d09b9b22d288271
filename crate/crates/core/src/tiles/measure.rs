use thiserror::Error;

use crate::measures::MeasureResult;
use crate::model::{CoreError, FairnessScenario, Outcome, Quantity};

use super::eval::{evaluate, Bindings, EvalContext, EvalError};
use super::pipeline::Pipeline;
use super::typecheck::{typecheck, TypeError};
use super::types::TileType;
use super::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineMeasureError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("a measure pipeline must produce b or m, not {0}")]
    RootType(TileType),
    #[error(transparent)]
    Context(#[from] CoreError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("pipeline produced {0}, which lies outside [0, 1]")]
    OutOfRange(Quantity),
}

/// A b- or m-rooted pipeline read as a fairness measure.
#[derive(Debug, Clone)]
pub struct PipelineMeasure {
    pipeline: Pipeline,
    root: TileType,
}

pub fn pipeline_as_measure(pipeline: Pipeline) -> Result<PipelineMeasure, PipelineMeasureError> {
    let root = typecheck(&pipeline)?;
    if root != TileType::BOOLEAN && root != TileType::QUANTITY {
        return Err(PipelineMeasureError::RootType(root));
    }
    Ok(PipelineMeasure { pipeline, root })
}

impl PipelineMeasure {
    pub fn pipeline(&self) -> &Pipeline {
        &self.pipeline
    }

    pub fn root_type(&self) -> &TileType {
        &self.root
    }

    /// `true` maps to 1 and `false` to 0; quantities pass through.
    pub fn evaluate(
        &self,
        scenario: &FairnessScenario,
        outcome: &Outcome,
        bindings: &Bindings,
    ) -> Result<MeasureResult, PipelineMeasureError> {
        let ctx = EvalContext::new(scenario, outcome, bindings.clone())?;
        match evaluate(&self.pipeline, &ctx)? {
            Value::Flag(b) => Ok(MeasureResult::boolean(b)),
            Value::Quantity(q) if q.in_unit_interval() => Ok(MeasureResult::exact(q)),
            Value::Quantity(q) => Err(PipelineMeasureError::OutOfRange(q)),
            other => unreachable!("typechecked root produced {other}"),
        }
    }
}
