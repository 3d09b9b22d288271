//! Typed dataflow pipelines built from tiles.
//!
//! A [`Tile`] has one input type (none for constants) and one output type.
//! A [`Pipeline`] is a single-sink DAG of tile applications; it is checked
//! statically with [`typecheck`] and run with [`evaluate`], which invokes
//! each node exactly once.

mod builtins;
mod eval;
mod measure;
mod pipeline;
mod prebuilt;
mod tile;
mod typecheck;
mod types;
mod value;

pub use builtins::{
    accumulates, all_agent, all_at_least, all_equal, all_resource, all_true, is_tile_name, needs, pair, project,
    receives_any, unzip, zip, Registry, RegistryError, MAX_PROJECTION,
};
pub use eval::{evaluate, Bindings, EvalContext, EvalError};
pub use measure::{pipeline_as_measure, PipelineMeasure, PipelineMeasureError};
pub use pipeline::{Edge, Node, NodeId, Pipeline, PipelineBuilder, PipelineError, Span};
pub use prebuilt::{equality_pipeline, equity_pipeline};
pub use tile::{Mismatch, Semantics, Signature, Tile, TileError};
pub use typecheck::{node_types, typecheck, TypeError};
pub use types::{Atomic, TileType};
pub use value::Value;
