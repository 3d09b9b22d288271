use std::fmt::Write as _;

use crate::tiles::{node_types, Pipeline};

/// Graphviz rendering with one node per tile application, named `n<i>`
/// after its topological index.
///
/// Labels read `name : input -> output`, or `name : output` for constants.
pub fn export_dot(p: &Pipeline) -> String {
    let types = node_types(p).ok();
    let mut out = String::from("digraph pipeline {\n");
    for (index, node) in p.nodes().iter().enumerate() {
        let label = match &types {
            Some(types) => {
                let output = &types[index];
                match node.inputs.as_slice() {
                    [] => format!("{} : {output}", node.tile.name()),
                    [single] if !node.is_pair() => format!("{} : {} -> {output}", node.tile.name(), types[*single]),
                    // a pair node's output is the tuple of its inputs
                    _ => format!("{} : {output} -> {output}", node.tile.name()),
                }
            }
            None => format!("{} : {}", node.tile.name(), node.tile.signature()),
        };
        writeln!(out, "  n{index} [label=\"{}\"];", label.replace('\\', "\\\\").replace('"', "\\\"")).unwrap();
    }
    for edge in p.edges() {
        writeln!(out, "  n{} -> n{};", edge.from, edge.to).unwrap();
    }
    out.push_str("}\n");
    out
}
