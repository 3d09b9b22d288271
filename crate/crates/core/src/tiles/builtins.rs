//! The builtin tiles and the name registry used by the pipeline parser.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::model::{accumulation, ValueKind};

use super::tile::{Signature, Tile, TileError};
use super::types::TileType;
use super::value::Value;

/// Highest index served by the registered `proj-i` tiles.
pub const MAX_PROJECTION: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("tile `{0}` is already registered")]
    Duplicate(String),
    #[error("invalid tile name `{0}`: expected [A-Za-z][A-Za-z0-9-]*")]
    InvalidName(String),
}

/// Tiles addressable by name.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    tiles: BTreeMap<String, Arc<Tile>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Registry holding every builtin tile.
    pub fn with_builtins() -> Self {
        let mut registry = Self::empty();
        let mut builtins = vec![
            all_agent(),
            all_resource(),
            accumulates(),
            needs(),
            all_equal(),
            all_at_least(),
            all_true(),
            receives_any(),
            zip(),
            unzip(),
            pair(),
        ];
        builtins.extend((1..=MAX_PROJECTION).map(project));
        for tile in builtins {
            registry.register(tile).expect("builtin names are distinct and valid");
        }
        registry
    }

    pub fn register(&mut self, tile: Tile) -> Result<Arc<Tile>, RegistryError> {
        if !is_tile_name(tile.name()) {
            return Err(RegistryError::InvalidName(tile.name().to_owned()));
        }
        if self.tiles.contains_key(tile.name()) {
            return Err(RegistryError::Duplicate(tile.name().to_owned()));
        }
        let tile = Arc::new(tile);
        self.tiles.insert(tile.name().to_owned(), Arc::clone(&tile));
        Ok(tile)
    }

    pub fn get(&self, name: &str) -> Option<Arc<Tile>> {
        self.tiles.get(name).cloned()
    }

    /// Like [`Registry::get`] for names known to be registered.
    pub fn tile(&self, name: &str) -> Arc<Tile> {
        self.get(name).unwrap_or_else(|| panic!("tile `{name}` is not registered"))
    }

    pub fn tiles(&self) -> impl Iterator<Item = &Arc<Tile>> {
        self.tiles.values()
    }
}

/// Tile names follow `[A-Za-z][A-Za-z0-9-]*`.
pub fn is_tile_name(name: &str) -> bool {
    let mut bytes = name.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic()) && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'-')
}

fn seq(t: TileType) -> TileType {
    TileType::seq(t)
}

fn items(input: Option<&Value>) -> Result<&[Value], TileError> {
    input.and_then(Value::items).ok_or_else(|| TileError::BadInput("expected a sequence".into()))
}

fn components(input: Option<&Value>) -> Result<&[Value], TileError> {
    input.and_then(Value::components).ok_or_else(|| TileError::BadInput("expected a tuple".into()))
}

fn bad(what: &str) -> TileError {
    TileError::BadInput(format!("expected {what}"))
}

/// `all-agent : (a)`, the scenario's agents in byte order.
pub fn all_agent() -> Tile {
    Tile::new("all-agent", Signature::Constant(seq(TileType::AGENT)), |ctx, _| {
        Ok(Value::seq(TileType::AGENT, ctx.scenario().agents().iter().cloned().map(Value::Agent).collect()))
    })
}

/// `all-resource : (r)`, the scenario's resources in byte order.
pub fn all_resource() -> Tile {
    Tile::new("all-resource", Signature::Constant(seq(TileType::RESOURCE)), |ctx, _| {
        Ok(Value::seq(TileType::RESOURCE, ctx.scenario().resources().iter().cloned().map(Value::Resource).collect()))
    })
}

/// `accumulates : (a) -> (m)`, accumulated utility per agent.
pub fn accumulates() -> Tile {
    let sig = Signature::Fixed { input: seq(TileType::AGENT), output: seq(TileType::QUANTITY) };
    Tile::new("accumulates", sig, |ctx, input| {
        let utility = &ctx.bindings().utility;
        let out = items(input)?
            .iter()
            .map(|v| {
                let agent = v.as_identifier().ok_or_else(|| bad("an agent"))?;
                Ok(Value::Quantity(accumulation(ctx.scenario(), utility, ctx.outcome(), agent)?))
            })
            .collect::<Result<_, TileError>>()?;
        Ok(Value::seq(TileType::QUANTITY, out))
    })
}

/// `needs : (a) -> (m)`, the need attribute per agent.
pub fn needs() -> Tile {
    let sig = Signature::Fixed { input: seq(TileType::AGENT), output: seq(TileType::QUANTITY) };
    Tile::new("needs", sig, |ctx, input| {
        let table = ctx.scenario().agent_attribute_of_kind(&ctx.bindings().need, ValueKind::Quantity)?;
        let out = items(input)?
            .iter()
            .map(|v| {
                let agent = v.as_identifier().ok_or_else(|| bad("an agent"))?;
                ctx.scenario().require_agent(agent)?;
                Ok(Value::Quantity(table.quantity(agent)?.clone()))
            })
            .collect::<Result<_, TileError>>()?;
        Ok(Value::seq(TileType::QUANTITY, out))
    })
}

/// `all-equal : (m) -> b`
pub fn all_equal() -> Tile {
    let sig = Signature::Fixed { input: seq(TileType::QUANTITY), output: TileType::BOOLEAN };
    Tile::new("all-equal", sig, |_, input| {
        let xs = items(input)?;
        Ok(Value::Flag(xs.windows(2).all(|w| w[0] == w[1])))
    })
}

/// `all-at-least : <(m),(m)> -> b`, pairwise `first[i] >= second[i]`.
pub fn all_at_least() -> Tile {
    let sig = Signature::Fixed {
        input: TileType::pair(seq(TileType::QUANTITY), seq(TileType::QUANTITY)),
        output: TileType::BOOLEAN,
    };
    Tile::new("all-at-least", sig, |_, input| {
        let [left, right] = components(input)? else { return Err(bad("a pair")) };
        let (left, right) = (items(Some(left))?, items(Some(right))?);
        if left.len() != right.len() {
            return Err(TileError::LengthMismatch { left: left.len(), right: right.len() });
        }
        let holds = left.iter().zip(right).all(|(x, y)| match (x.as_quantity(), y.as_quantity()) {
            (Some(x), Some(y)) => x >= y,
            _ => false,
        });
        Ok(Value::Flag(holds))
    })
}

/// `all-true : (b) -> b`
pub fn all_true() -> Tile {
    let sig = Signature::Fixed { input: seq(TileType::BOOLEAN), output: TileType::BOOLEAN };
    Tile::new("all-true", sig, |_, input| Ok(Value::Flag(items(input)?.iter().all(|v| v.as_flag() == Some(true)))))
}

/// `receives-any : <(a),(r)> -> (b)`, per agent whether it receives at
/// least one of the listed resources.
pub fn receives_any() -> Tile {
    let sig = Signature::Fixed {
        input: TileType::pair(seq(TileType::AGENT), seq(TileType::RESOURCE)),
        output: seq(TileType::BOOLEAN),
    };
    Tile::new("receives-any", sig, |ctx, input| {
        let [agents, wanted] = components(input)? else { return Err(bad("a pair")) };
        let wanted = items(Some(wanted))?;
        let out = items(Some(agents))?
            .iter()
            .map(|v| {
                let agent = v.as_identifier().ok_or_else(|| bad("an agent"))?;
                let hit = wanted.iter().filter_map(Value::as_identifier).any(|r| ctx.outcome().contains(agent, r));
                Ok(Value::Flag(hit))
            })
            .collect::<Result<_, TileError>>()?;
        Ok(Value::seq(TileType::BOOLEAN, out))
    })
}

/// `zip : <(α),(β)> -> (<α,β>)`; lengths must agree.
pub fn zip() -> Tile {
    Tile::new("zip", Signature::Zip, |_, input| {
        let [left, right] = components(input)? else { return Err(bad("a pair")) };
        let (Value::Seq { elem: a, items: xs }, Value::Seq { elem: b, items: ys }) = (left, right) else {
            return Err(bad("two sequences"));
        };
        if xs.len() != ys.len() {
            return Err(TileError::LengthMismatch { left: xs.len(), right: ys.len() });
        }
        let items = xs.iter().zip(ys).map(|(x, y)| Value::Tuple(vec![x.clone(), y.clone()])).collect();
        Ok(Value::seq(TileType::pair(a.clone(), b.clone()), items))
    })
}

/// `unzip : (<α,β>) -> <(α),(β)>`
pub fn unzip() -> Tile {
    Tile::new("unzip", Signature::Unzip, |_, input| {
        let Some(Value::Seq { elem, items }) = input else { return Err(bad("a sequence")) };
        let Some([a, b]) = elem.tuple_components() else { return Err(bad("a sequence of pairs")) };
        let mut firsts = Vec::with_capacity(items.len());
        let mut seconds = Vec::with_capacity(items.len());
        for item in items {
            let [x, y] = item.components().ok_or_else(|| bad("a pair"))? else { return Err(bad("a pair")) };
            firsts.push(x.clone());
            seconds.push(y.clone());
        }
        Ok(Value::Tuple(vec![Value::seq(a.clone(), firsts), Value::seq(b.clone(), seconds)]))
    })
}

/// `pair : <α1,...,αn> -> <α1,...,αn>`; the evaluator tuples the input
/// slots, so the tile itself is the identity.
pub fn pair() -> Tile {
    Tile::new("pair", Signature::Pair, |_, input| input.cloned().ok_or_else(|| bad("a tuple")))
}

/// `proj-i : <α1,...,αn> -> αi` (1-based).
pub fn project(index: usize) -> Tile {
    Tile::new(format!("proj-{index}"), Signature::Project(index), move |_, input| {
        components(input)?.get(index - 1).cloned().ok_or_else(|| bad("a wider tuple"))
    })
}
