use thiserror::Error;

use crate::measures::Epsilon;
use crate::model::{id, validate_scenario, CoreError, FairnessScenario, Identifier, Outcome};

use super::pipeline::{NodeId, Pipeline};
use super::tile::TileError;
use super::typecheck::{node_types, TypeError};
use super::value::Value;

/// Attribute-name designations and constants visible to tiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bindings {
    pub utility: Identifier,
    pub need: Identifier,
    pub epsilon: Epsilon,
}

impl Default for Bindings {
    fn default() -> Self {
        Self { utility: id("u"), need: id("q"), epsilon: Epsilon::default() }
    }
}

/// The scenario, outcome and bindings a pipeline is evaluated against.
#[derive(Debug, Clone)]
pub struct EvalContext<'a> {
    scenario: &'a FairnessScenario,
    outcome: &'a Outcome,
    bindings: Bindings,
}

impl<'a> EvalContext<'a> {
    /// Fails if the scenario does not validate or the outcome mentions
    /// identifiers outside it.
    pub fn new(scenario: &'a FairnessScenario, outcome: &'a Outcome, bindings: Bindings) -> Result<Self, CoreError> {
        let diagnostics = validate_scenario(scenario);
        if !diagnostics.is_empty() {
            return Err(CoreError::InvalidScenario(diagnostics));
        }
        for (agent, resource) in outcome.pairs() {
            scenario.require_agent(agent)?;
            scenario.require_resource(resource)?;
        }
        Ok(Self { scenario, outcome, bindings })
    }

    pub fn scenario(&self) -> &'a FairnessScenario {
        self.scenario
    }

    pub fn outcome(&self) -> &'a Outcome {
        self.outcome
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("tile `{tile}` (node n{node}) failed: {source}")]
    Tile { node: NodeId, tile: String, source: TileError },
    #[error("tile `{tile}` (node n{node}) produced `{value}`, which is not of type {expected}")]
    Guard { node: NodeId, tile: String, value: String, expected: String },
}

impl EvalError {
    pub fn tile_error(&self) -> Option<&TileError> {
        match self {
            EvalError::Tile { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Evaluates every node once, in topological order, and returns the root's
/// value.
pub fn evaluate(pipeline: &Pipeline, ctx: &EvalContext<'_>) -> Result<Value, EvalError> {
    let types = node_types(pipeline)?;
    let mut values: Vec<Value> = Vec::with_capacity(pipeline.len());
    for (index, node) in pipeline.nodes().iter().enumerate() {
        let input = match node.inputs.as_slice() {
            [] => None,
            [single] if !node.is_pair() => Some(values[*single].clone()),
            slots => Some(Value::Tuple(slots.iter().map(|&i| values[i].clone()).collect())),
        };
        let value = node
            .tile
            .apply(ctx, input.as_ref())
            .map_err(|source| EvalError::Tile { node: index, tile: node.tile.name().to_owned(), source })?;
        if cfg!(debug_assertions) && !value.inhabits(&types[index]) {
            return Err(EvalError::Guard {
                node: index,
                tile: node.tile.name().to_owned(),
                value: value.to_string(),
                expected: types[index].to_string(),
            });
        }
        values.push(value);
    }
    Ok(values.pop().expect("pipelines have at least one node"))
}

#[cfg(test)]
mod tests {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Arc;

    use super::*;
    use crate::testdata::{outcome, subsidy};
    use crate::tiles::{equality_pipeline, equity_pipeline, PipelineBuilder, Registry, Signature, Tile, TileType};

    fn o1(s: &FairnessScenario) -> Outcome {
        outcome(s, &[("A", "R3"), ("B", "R3"), ("C", "R3"), ("D", "R3"), ("E", "R3"), ("F", "R3")])
    }

    fn o2(s: &FairnessScenario) -> Outcome {
        outcome(s, &[("A", "R3"), ("B", "R2"), ("C", "R1"), ("D", "R3"), ("E", "R2"), ("F", "R1")])
    }

    #[test]
    fn prebuilt_pipelines() {
        let registry = Registry::with_builtins();
        let s = subsidy();
        let bindings = Bindings::default();
        let (o1, o2) = (o1(&s), o2(&s));
        let run = |p: &Pipeline, o: &Outcome| evaluate(p, &EvalContext::new(&s, o, bindings.clone()).unwrap()).unwrap();
        let eq = equality_pipeline(&registry);
        let equity = equity_pipeline(&registry);
        assert_eq!(run(&eq, &o1), Value::Flag(true));
        assert_eq!(run(&eq, &o2), Value::Flag(false));
        assert_eq!(run(&equity, &o1), Value::Flag(true));
        assert_eq!(run(&equity, &o2), Value::Flag(false));
    }

    #[test]
    fn missing_binding_names_the_node() {
        let registry = Registry::with_builtins();
        let s = subsidy();
        let o = o1(&s);
        let bindings = Bindings { utility: id("utility"), ..Bindings::default() };
        let err = evaluate(&equality_pipeline(&registry), &EvalContext::new(&s, &o, bindings).unwrap()).unwrap_err();
        assert!(matches!(&err, EvalError::Tile { tile, .. } if tile == "accumulates"), "{err}");
        assert!(err.to_string().contains("accumulates"));
    }

    #[test]
    fn context_rejects_foreign_outcome() {
        let s = subsidy();
        let other = FairnessScenario::builder().agents(["Z"]).resources(["R1"]).build().unwrap();
        let o = Outcome::from_names(&other, [("Z", "R1")]).unwrap();
        let bindings = Bindings::default();
        assert!(matches!(EvalContext::new(&s, &o, bindings), Err(CoreError::UnknownAgent(_))));
    }

    #[test]
    fn each_node_runs_once() {
        let registry = Registry::with_builtins();
        let counter = Arc::new(AtomicUsize::new(0));
        let shared = {
            let base = registry.tile("all-agent");
            let counter = Arc::clone(&counter);
            Tile::new("counted-agents", base.signature().clone(), move |ctx, input| {
                counter.fetch_add(1, Ordering::SeqCst);
                base.apply(ctx, input)
            })
        };
        // one all-agent node feeding both branches of equity
        let mut b = PipelineBuilder::new();
        let agents = b.add(Arc::new(shared), vec![]);
        let acc = b.add(registry.tile("accumulates"), vec![agents]);
        let needs = b.add(registry.tile("needs"), vec![agents]);
        let pair = b.add(registry.tile("pair"), vec![acc, needs]);
        b.add(registry.tile("all-at-least"), vec![pair]);
        let p = b.build().unwrap();

        let s = subsidy();
        let o = o1(&s);
        let bindings = Bindings::default();
        let ctx = EvalContext::new(&s, &o, bindings).unwrap();
        assert_eq!(evaluate(&p, &ctx).unwrap(), Value::Flag(true));
        assert_eq!(counter.load(Ordering::SeqCst), 1);
        evaluate(&p, &ctx).unwrap();
        assert_eq!(counter.load(Ordering::SeqCst), 2);
    }

    #[test]
    fn guard_catches_lying_tile() {
        let liar = Tile::new("liar", Signature::Constant(TileType::seq(TileType::QUANTITY)), |_, _| Ok(Value::Flag(true)));
        let mut b = PipelineBuilder::new();
        b.add(Arc::new(liar), vec![]);
        let p = b.build().unwrap();
        let s = subsidy();
        let o = Outcome::empty();
        let bindings = Bindings::default();
        let result = evaluate(&p, &EvalContext::new(&s, &o, bindings).unwrap());
        if cfg!(debug_assertions) {
            assert!(matches!(result, Err(EvalError::Guard { .. })));
        }
    }
}
