use std::fmt;

use crate::model::{Identifier, Quantity};

use super::types::{Atomic, TileType};

/// Runtime data passed between tiles.
///
/// Sequences carry their element type so that every value, including an
/// empty sequence, has exactly one type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Agent(Identifier),
    Resource(Identifier),
    Quantity(Quantity),
    Flag(bool),
    Tuple(Vec<Value>),
    Seq { elem: TileType, items: Vec<Value> },
}

impl Value {
    pub fn seq(elem: TileType, items: Vec<Value>) -> Self {
        Value::Seq { elem, items }
    }

    pub fn quantities(items: impl IntoIterator<Item = Quantity>) -> Self {
        Value::seq(TileType::QUANTITY, items.into_iter().map(Value::Quantity).collect())
    }

    pub fn type_of(&self) -> TileType {
        match self {
            Value::Agent(_) => TileType::Atomic(Atomic::Agent),
            Value::Resource(_) => TileType::Atomic(Atomic::Resource),
            Value::Quantity(_) => TileType::Atomic(Atomic::Quantity),
            Value::Flag(_) => TileType::Atomic(Atomic::Boolean),
            Value::Tuple(items) => TileType::Tuple(items.iter().map(Value::type_of).collect()),
            Value::Seq { elem, .. } => TileType::seq(elem.clone()),
        }
    }

    /// True iff the value is well formed and has type `ty`.
    pub fn inhabits(&self, ty: &TileType) -> bool {
        match (self, ty) {
            (Value::Agent(_), TileType::Atomic(Atomic::Agent))
            | (Value::Resource(_), TileType::Atomic(Atomic::Resource))
            | (Value::Quantity(_), TileType::Atomic(Atomic::Quantity))
            | (Value::Flag(_), TileType::Atomic(Atomic::Boolean)) => true,
            (Value::Tuple(items), TileType::Tuple(components)) => {
                items.len() >= 2
                    && items.len() == components.len()
                    && items.iter().zip(components).all(|(v, t)| v.inhabits(t))
            }
            (Value::Seq { elem, items }, TileType::Seq(expected)) => {
                elem == expected.as_ref() && items.iter().all(|v| v.inhabits(elem))
            }
            _ => false,
        }
    }

    pub fn as_flag(&self) -> Option<bool> {
        match self {
            Value::Flag(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_quantity(&self) -> Option<&Quantity> {
        match self {
            Value::Quantity(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_identifier(&self) -> Option<&Identifier> {
        match self {
            Value::Agent(id) | Value::Resource(id) => Some(id),
            _ => None,
        }
    }

    pub fn items(&self) -> Option<&[Value]> {
        match self {
            Value::Seq { items, .. } => Some(items),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<&[Value]> {
        match self {
            Value::Tuple(items) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, open: &str, items: &[Value], close: &str) -> fmt::Result {
            f.write_str(open)?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                item.fmt(f)?;
            }
            f.write_str(close)
        }
        match self {
            Value::Agent(id) | Value::Resource(id) => id.fmt(f),
            Value::Quantity(q) => q.fmt(f),
            Value::Flag(b) => b.fmt(f),
            Value::Tuple(items) => list(f, "<", items, ">"),
            Value::Seq { items, .. } => list(f, "(", items, ")"),
        }
    }
}
