//! Ready-made pipelines for the distribution measures.

use super::builtins::Registry;
use super::pipeline::{Pipeline, PipelineBuilder};

/// `all-equal(accumulates(all-agent))`
pub fn equality_pipeline(registry: &Registry) -> Pipeline {
    let mut b = PipelineBuilder::new();
    let agents = b.add(registry.tile("all-agent"), vec![]);
    let acc = b.add(registry.tile("accumulates"), vec![agents]);
    b.add(registry.tile("all-equal"), vec![acc]);
    b.build().expect("well-formed")
}

/// `all-at-least(accumulates(all-agent), needs(all-agent))`
pub fn equity_pipeline(registry: &Registry) -> Pipeline {
    let mut b = PipelineBuilder::new();
    let agents = b.add(registry.tile("all-agent"), vec![]);
    let acc = b.add(registry.tile("accumulates"), vec![agents]);
    let agents = b.add(registry.tile("all-agent"), vec![]);
    let needs = b.add(registry.tile("needs"), vec![agents]);
    let pair = b.add(registry.tile("pair"), vec![acc, needs]);
    b.add(registry.tile("all-at-least"), vec![pair]);
    b.build().expect("well-formed")
}
