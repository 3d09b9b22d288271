use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::tile::{Signature, Tile};

pub type NodeId = usize;

/// Byte range in the source text a node was parsed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// One tile application. `inputs` lists producer nodes by slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub tile: Arc<Tile>,
    pub inputs: Vec<NodeId>,
    pub span: Option<Span>,
}

impl Node {
    pub fn new(tile: Arc<Tile>, inputs: Vec<NodeId>) -> Self {
        Self { tile, inputs, span: None }
    }

    /// Pair nodes tuple their input slots instead of taking one input.
    pub fn is_pair(&self) -> bool {
        matches!(self.tile.signature(), Signature::Pair)
    }
}

/// A dataflow connection into input slot `slot` of node `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub slot: usize,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{} -> n{}", self.from, self.to)?;
        if self.slot > 0 {
            write!(f, " (slot {})", self.slot)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("pipeline has no nodes")]
    Empty,
    #[error("node {node} refers to missing input node {input}")]
    MissingInput { node: NodeId, input: NodeId },
    #[error("tile `{tile}` at node {node} takes {expected} input(s), got {found}")]
    Arity { node: NodeId, tile: String, expected: &'static str, found: usize },
    #[error("pipeline contains a cycle through node {node}")]
    Cycle { node: NodeId },
    #[error("pipeline must have exactly one sink, found {}", fmt_nodes(.0))]
    MultipleSinks(Vec<NodeId>),
}

fn fmt_nodes(nodes: &[NodeId]) -> String {
    nodes.iter().map(|n| format!("n{n}")).collect::<Vec<_>>().join(", ")
}

/// A single-sink DAG of tile applications.
///
/// Nodes are stored in a canonical topological order: a post-order walk
/// from the sink that visits input slots left to right. The sink is last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline {
    nodes: Vec<Node>,
}

impl Pipeline {
    pub fn new(nodes: Vec<Node>) -> Result<Self, PipelineError> {
        if nodes.is_empty() {
            return Err(PipelineError::Empty);
        }
        let mut consumed = vec![false; nodes.len()];
        for (index, node) in nodes.iter().enumerate() {
            check_arity(index, node)?;
            for &input in &node.inputs {
                if input >= nodes.len() {
                    return Err(PipelineError::MissingInput { node: index, input });
                }
                consumed[input] = true;
            }
        }
        let sinks: Vec<NodeId> = (0..nodes.len()).filter(|&i| !consumed[i]).collect();
        let root = match sinks.as_slice() {
            [root] => *root,
            // every node feeds another, so some path loops
            [] => return Err(PipelineError::Cycle { node: 0 }),
            _ => return Err(PipelineError::MultipleSinks(sinks)),
        };
        let order = post_order(&nodes, root)?;
        if order.len() != nodes.len() {
            // with one sink every node reaches it unless a cycle is detached
            let seen: HashSet<NodeId> = order.iter().copied().collect();
            let node = (0..nodes.len()).find(|i| !seen.contains(i)).unwrap_or(0);
            return Err(PipelineError::Cycle { node });
        }
        let mut renumber = vec![0; nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let nodes = order
            .iter()
            .map(|&old| {
                let node = &nodes[old];
                Node { tile: Arc::clone(&node.tile), inputs: node.inputs.iter().map(|&i| renumber[i]).collect(), span: node.span }
            })
            .collect();
        Ok(Self { nodes })
    }

    /// A pipeline made of one constant tile.
    pub fn single(tile: Arc<Tile>) -> Result<Self, PipelineError> {
        Self::new(vec![Node::new(tile, vec![])])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(to, node)| node.inputs.iter().enumerate().map(move |(slot, &from)| Edge { from, to, slot }))
            .collect();
        edges.sort();
        edges
    }

    /// Equality of the trees obtained by unfolding shared nodes; spans are
    /// ignored.
    pub fn structurally_eq(&self, other: &Pipeline) -> bool {
        let mut equal = HashSet::new();
        same_tree(self, self.root(), other, other.root(), &mut equal)
    }
}

fn check_arity(index: NodeId, node: &Node) -> Result<(), PipelineError> {
    let found = node.inputs.len();
    let (ok, expected) = match node.tile.signature() {
        Signature::Constant(_) => (found == 0, "0"),
        Signature::Pair => (found >= 2, "at least 2"),
        _ => (found == 1, "1"),
    };
    if ok {
        Ok(())
    } else {
        Err(PipelineError::Arity { node: index, tile: node.tile.name().to_owned(), expected, found })
    }
}

fn post_order(nodes: &[Node], root: NodeId) -> Result<Vec<NodeId>, PipelineError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut marks = vec![Mark::New; nodes.len()];
    let mut order = Vec::with_capacity(nodes.len());
    // (node, next slot to visit)
    let mut stack = vec![(root, 0)];
    marks[root] = Mark::Open;
    while let Some((node, slot)) = stack.pop() {
        match nodes[node].inputs.get(slot) {
            Some(&input) => {
                stack.push((node, slot + 1));
                match marks[input] {
                    Mark::New => {
                        marks[input] = Mark::Open;
                        stack.push((input, 0));
                    }
                    Mark::Open => return Err(PipelineError::Cycle { node: input }),
                    Mark::Done => {}
                }
            }
            None => {
                marks[node] = Mark::Done;
                order.push(node);
            }
        }
    }
    Ok(order)
}

fn same_tree(p: &Pipeline, i: NodeId, q: &Pipeline, j: NodeId, equal: &mut HashSet<(NodeId, NodeId)>) -> bool {
    if equal.contains(&(i, j)) {
        return true;
    }
    let (a, b) = (p.node(i), q.node(j));
    let same = a.tile == b.tile
        && a.inputs.len() == b.inputs.len()
        && a.inputs.iter().zip(&b.inputs).all(|(&x, &y)| same_tree(p, x, q, y, equal));
    if same {
        equal.insert((i, j));
    }
    same
}

/// Assembles a pipeline node by node; inputs must already have been added.
#[derive(Debug, Default)]
pub struct PipelineBuilder {
    nodes: Vec<Node>,
}

impl PipelineBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, tile: Arc<Tile>, inputs: Vec<NodeId>) -> NodeId {
        self.add_with_span(tile, inputs, None)
    }

    pub fn add_with_span(&mut self, tile: Arc<Tile>, inputs: Vec<NodeId>, span: Option<Span>) -> NodeId {
        self.nodes.push(Node { tile, inputs, span });
        self.nodes.len() - 1
    }

    pub fn build(self) -> Result<Pipeline, PipelineError> {
        Pipeline::new(self.nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::{equality_pipeline, equity_pipeline, Registry};

    #[test]
    fn canonical_order() {
        let r = Registry::with_builtins();
        // sink first in insertion order
        let nodes = vec![
            Node::new(r.tile("all-equal"), vec![2]),
            Node::new(r.tile("all-agent"), vec![]),
            Node::new(r.tile("accumulates"), vec![1]),
        ];
        let p = Pipeline::new(nodes).unwrap();
        let names: Vec<&str> = p.nodes().iter().map(|n| n.tile.name()).collect();
        assert_eq!(names, ["all-agent", "accumulates", "all-equal"]);
        assert_eq!(p.edges(), vec![Edge { from: 0, to: 1, slot: 0 }, Edge { from: 1, to: 2, slot: 0 }]);
        assert_eq!(p, equality_pipeline(&r));
    }

    #[test]
    fn equity_shape() {
        let p = equity_pipeline(&Registry::with_builtins());
        assert_eq!(p.len(), 6);
        assert_eq!(p.edges().len(), 5);
        assert_eq!(p.node(p.root()).tile.name(), "all-at-least");
    }

    #[test]
    fn malformed_graphs() {
        let r = Registry::with_builtins();
        assert_eq!(Pipeline::new(vec![]), Err(PipelineError::Empty));
        let two_sinks = vec![Node::new(r.tile("all-agent"), vec![]), Node::new(r.tile("all-agent"), vec![])];
        assert_eq!(Pipeline::new(two_sinks), Err(PipelineError::MultipleSinks(vec![0, 1])));

        let cycle = vec![
            Node::new(r.tile("all-agent"), vec![]),
            Node::new(r.tile("pair"), vec![0, 2]),
            Node::new(r.tile("unzip"), vec![1]),
            Node::new(r.tile("all-equal"), vec![1]),
        ];
        assert!(matches!(Pipeline::new(cycle), Err(PipelineError::Cycle { .. })));

        let dangling = vec![Node::new(r.tile("accumulates"), vec![7])];
        assert_eq!(Pipeline::new(dangling), Err(PipelineError::MissingInput { node: 0, input: 7 }));

        let source_needs_input = vec![Node::new(r.tile("accumulates"), vec![])];
        assert!(matches!(Pipeline::new(source_needs_input), Err(PipelineError::Arity { found: 0, .. })));

        let unary_pair = vec![Node::new(r.tile("all-agent"), vec![]), Node::new(r.tile("pair"), vec![0])];
        assert!(matches!(Pipeline::new(unary_pair), Err(PipelineError::Arity { expected: "at least 2", .. })));
    }

    #[test]
    fn structural_equality_ignores_sharing() {
        let r = Registry::with_builtins();
        let mut b = PipelineBuilder::new();
        let agents = b.add(r.tile("all-agent"), vec![]);
        let acc = b.add(r.tile("accumulates"), vec![agents]);
        let needs = b.add(r.tile("needs"), vec![agents]);
        let pair = b.add(r.tile("pair"), vec![acc, needs]);
        b.add(r.tile("all-at-least"), vec![pair]);
        let shared = b.build().unwrap();
        let unshared = equity_pipeline(&r);
        assert_ne!(shared, unshared);
        assert!(shared.structurally_eq(&unshared));
        assert!(!shared.structurally_eq(&equality_pipeline(&r)));
    }
}
