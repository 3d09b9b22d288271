use std::fmt;

use super::pipeline::{Edge, NodeId, Pipeline, Span};
use super::types::TileType;

/// An input whose type the consuming tile does not accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub node: NodeId,
    pub tile: String,
    /// The offending connection; absent only for a constant given input.
    pub edge: Option<Edge>,
    pub expected: String,
    pub found: TileType,
    pub span: Option<Span>,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type error at `{}`", self.tile)?;
        if let Some(edge) = &self.edge {
            write!(f, " (edge {edge})")?;
        }
        write!(f, ": expected {}, found {}", self.expected, self.found)
    }
}

impl std::error::Error for TypeError {}

/// Output type of every node, indexed like [`Pipeline::nodes`].
pub fn node_types(pipeline: &Pipeline) -> Result<Vec<TileType>, TypeError> {
    let mut types: Vec<TileType> = Vec::with_capacity(pipeline.len());
    for (index, node) in pipeline.nodes().iter().enumerate() {
        let input = match node.inputs.as_slice() {
            [] => None,
            [single] if !node.is_pair() => Some(types[*single].clone()),
            slots => Some(TileType::Tuple(slots.iter().map(|&i| types[i].clone()).collect())),
        };
        let output = node.tile.signature().output_for(input.as_ref()).map_err(|mismatch| TypeError {
            node: index,
            tile: node.tile.name().to_owned(),
            edge: node.inputs.first().map(|&from| Edge { from, to: index, slot: 0 }),
            expected: mismatch.expected,
            found: input.clone().unwrap_or(TileType::BOOLEAN),
            span: node.span,
        })?;
        types.push(output);
    }
    Ok(types)
}

/// The root's output type, if every connection is well typed.
pub fn typecheck(pipeline: &Pipeline) -> Result<TileType, TypeError> {
    Ok(node_types(pipeline)?.pop().expect("pipelines have at least one node"))
}
