use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atomic {
    /// `a`
    Agent,
    /// `r`
    Resource,
    /// `m`
    Quantity,
    /// `b`
    Boolean,
}

/// Types of values flowing between tiles.
///
/// Written `a`, `r`, `m`, `b` for atomics, `<t1,t2,...>` for tuples and
/// `(t)` for sequences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileType {
    Atomic(Atomic),
    /// Arity is at least two.
    Tuple(Vec<TileType>),
    Seq(Box<TileType>),
}

impl TileType {
    pub const AGENT: TileType = TileType::Atomic(Atomic::Agent);
    pub const RESOURCE: TileType = TileType::Atomic(Atomic::Resource);
    pub const QUANTITY: TileType = TileType::Atomic(Atomic::Quantity);
    pub const BOOLEAN: TileType = TileType::Atomic(Atomic::Boolean);

    pub fn seq(elem: TileType) -> Self {
        TileType::Seq(Box::new(elem))
    }

    /// Panics if fewer than two components are given.
    pub fn tuple(components: Vec<TileType>) -> Self {
        assert!(components.len() >= 2, "tuple types have arity >= 2");
        TileType::Tuple(components)
    }

    pub fn pair(first: TileType, second: TileType) -> Self {
        TileType::Tuple(vec![first, second])
    }

    pub fn seq_elem(&self) -> Option<&TileType> {
        match self {
            TileType::Seq(elem) => Some(elem),
            _ => None,
        }
    }

    pub fn tuple_components(&self) -> Option<&[TileType]> {
        match self {
            TileType::Tuple(components) => Some(components),
            _ => None,
        }
    }

    /// Nesting depth; atomics have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            TileType::Atomic(_) => 0,
            TileType::Tuple(cs) => 1 + cs.iter().map(TileType::depth).max().unwrap_or(0),
            TileType::Seq(e) => 1 + e.depth(),
        }
    }
}

impl fmt::Display for Atomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Atomic::Agent => "a",
            Atomic::Resource => "r",
            Atomic::Quantity => "m",
            Atomic::Boolean => "b",
        })
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileType::Atomic(a) => a.fmt(f),
            TileType::Tuple(components) => {
                f.write_str("<")?;
                for (i, c) in components.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    c.fmt(f)?;
                }
                f.write_str(">")
            }
            TileType::Seq(elem) => write!(f, "({elem})"),
        }
    }
}
