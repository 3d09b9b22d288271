use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::model::CoreError;

use super::eval::EvalContext;
use super::types::TileType;
use super::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("input does not have the expected shape: {0}")]
    BadInput(String),
    #[error("{0}")]
    Failed(String),
}

/// How a tile's output type follows from its input type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Signature {
    /// No input.
    Constant(TileType),
    Fixed { input: TileType, output: TileType },
    /// `<(α),(β)> -> (<α,β>)`
    Zip,
    /// `(<α,β>) -> <(α),(β)>`
    Unzip,
    /// Tuples its input slots: `<α1,...,αn> -> <α1,...,αn>`, n >= 2.
    Pair,
    /// `<α1,...,αn> -> αi` for the 1-based index i <= n.
    Project(usize),
}

/// The input a signature accepts did not match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Rendering of the accepted input type(s).
    pub expected: String,
}

impl Signature {
    pub fn is_constant(&self) -> bool {
        matches!(self, Signature::Constant(_))
    }

    /// Output type for the given input type.
    ///
    /// `input` must be `None` exactly for constants; arity is a structural
    /// property checked when the pipeline is assembled.
    pub fn output_for(&self, input: Option<&TileType>) -> Result<TileType, Mismatch> {
        match (self, input) {
            (Signature::Constant(out), None) => Ok(out.clone()),
            (Signature::Constant(_), Some(_)) => Err(Mismatch { expected: "no input".into() }),
            (_, None) => Err(Mismatch { expected: self.expected_input() }),
            (Signature::Fixed { input: want, output }, Some(got)) => {
                if want == got {
                    Ok(output.clone())
                } else {
                    Err(Mismatch { expected: want.to_string() })
                }
            }
            (Signature::Zip, Some(got)) => match got.tuple_components() {
                Some([TileType::Seq(a), TileType::Seq(b)]) => {
                    Ok(TileType::seq(TileType::pair(a.as_ref().clone(), b.as_ref().clone())))
                }
                _ => Err(Mismatch { expected: self.expected_input() }),
            },
            (Signature::Unzip, Some(got)) => match got.seq_elem().and_then(TileType::tuple_components) {
                Some([a, b]) => Ok(TileType::pair(TileType::seq(a.clone()), TileType::seq(b.clone()))),
                _ => Err(Mismatch { expected: self.expected_input() }),
            },
            (Signature::Pair, Some(got)) => match got {
                TileType::Tuple(_) => Ok(got.clone()),
                _ => Err(Mismatch { expected: self.expected_input() }),
            },
            (Signature::Project(index), Some(got)) => match got.tuple_components() {
                Some(components) if *index >= 1 && *index <= components.len() => Ok(components[index - 1].clone()),
                _ => Err(Mismatch { expected: self.expected_input() }),
            },
        }
    }

    fn expected_input(&self) -> String {
        match self {
            Signature::Constant(_) => "no input".into(),
            Signature::Fixed { input, .. } => input.to_string(),
            Signature::Zip => "<(α),(β)>".into(),
            Signature::Unzip => "(<α,β>)".into(),
            Signature::Pair => "<α1,...,αn>".into(),
            Signature::Project(i) => format!("a tuple with at least {i} components"),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Constant(out) => write!(f, "{out}"),
            Signature::Fixed { input, output } => write!(f, "{input} -> {output}"),
            Signature::Zip => f.write_str("<(α),(β)> -> (<α,β>)"),
            Signature::Unzip => f.write_str("(<α,β>) -> <(α),(β)>"),
            Signature::Pair => f.write_str("<α1,...,αn> -> <α1,...,αn>"),
            Signature::Project(i) => write!(f, "<α1,...,αn> -> α{i}"),
        }
    }
}

pub type Semantics = Arc<dyn Fn(&EvalContext<'_>, Option<&Value>) -> Result<Value, TileError> + Send + Sync>;

/// A named, typed, pure building block of a pipeline.
#[derive(Clone)]
pub struct Tile {
    name: String,
    signature: Signature,
    semantics: Semantics,
}

impl Tile {
    pub fn new<F>(name: impl Into<String>, signature: Signature, semantics: F) -> Self
    where
        F: Fn(&EvalContext<'_>, Option<&Value>) -> Result<Value, TileError> + Send + Sync + 'static,
    {
        Self { name: name.into(), signature, semantics: Arc::new(semantics) }
    }

    /// A tile with no input that always yields `value`.
    pub fn constant(name: impl Into<String>, value: Value) -> Self {
        let signature = Signature::Constant(value.type_of());
        Self::new(name, signature, move |_, _| Ok(value.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn is_constant(&self) -> bool {
        self.signature.is_constant()
    }

    pub fn apply(&self, ctx: &EvalContext<'_>, input: Option<&Value>) -> Result<Value, TileError> {
        (self.semantics)(ctx, input)
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tile").field("name", &self.name).field("signature", &self.signature).finish()
    }
}

/// Tiles compare by name and signature; semantics are opaque.
impl PartialEq for Tile {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.signature == other.signature
    }
}

impl Eq for Tile {}
