//! Random scenarios, outcomes and pipelines shared by the integration
//! tests and the acceptance runner.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use fairkit::model::{accumulations, AttributeTable, AttributeValue, SubjectKind, ValueKind};
use fairkit::tiles::{NodeId, Pipeline, PipelineBuilder, Registry, Signature, Tile, TileType, Value};
use fairkit::{id, FairnessScenario, Identifier, Outcome, Quantity};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const AGENT_NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
pub const RESOURCE_NAMES: [&str; 6] = ["R1", "R2", "R3", "R4", "R5", "R6"];

/// Shape of generated scenarios.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_agents: usize,
    pub max_resources: usize,
    /// Upper bound (exclusive) of integer utilities and needs.
    pub max_value: i64,
    /// Also draw non-integer rationals.
    pub rationals: bool,
    /// Force as many resources as agents.
    pub square: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Self { max_agents: 6, max_resources: 4, max_value: 100, rationals: false, square: false }
    }
}

pub fn quantity(rng: &mut impl Rng, shape: &Shape) -> Quantity {
    let n = rng.gen_range(0..shape.max_value);
    if shape.rationals && rng.gen_bool(0.3) {
        Quantity::new(n, rng.gen_range(1..12i64)).unwrap()
    } else {
        Quantity::from(n)
    }
}

fn table<I>(name: &str, subject_kind: SubjectKind, value_kind: ValueKind, values: I) -> AttributeTable
where
    I: IntoIterator<Item = (Identifier, AttributeValue)>,
{
    AttributeTable::new(id(name), subject_kind, value_kind, values.into_iter().collect())
}

/// A valid scenario carrying every attribute the measures read:
/// utilities `u`, needs `q`, rankings `v`, protected flags `p`, essential
/// flags `e` and ground truths `res`.
pub fn scenario(rng: &mut impl Rng, shape: &Shape) -> FairnessScenario {
    let n = rng.gen_range(1..=shape.max_agents);
    let m = if shape.square { n } else { rng.gen_range(1..=shape.max_resources) };
    let agents: Vec<Identifier> = AGENT_NAMES[..n].iter().map(|a| id(a)).collect();
    let resources: Vec<Identifier> = RESOURCE_NAMES[..m].iter().map(|r| id(r)).collect();

    let u = table(
        "u",
        SubjectKind::Resource,
        ValueKind::Quantity,
        resources.iter().map(|r| (r.clone(), AttributeValue::Quantity(quantity(rng, shape)))),
    );
    let q = table(
        "q",
        SubjectKind::Agent,
        ValueKind::Quantity,
        agents.iter().map(|a| (a.clone(), AttributeValue::Quantity(quantity(rng, shape)))),
    );
    let v = table(
        "v",
        SubjectKind::Agent,
        ValueKind::Ranking,
        agents.iter().map(|a| {
            let mut order = resources.clone();
            order.shuffle(rng);
            (a.clone(), AttributeValue::Ranking(order))
        }),
    );
    let mut flags = |name: &str| {
        table(name, SubjectKind::Agent, ValueKind::Boolean, agents.iter().map(|a| (a.clone(), AttributeValue::Flag(rng.gen_bool(0.5)))))
    };
    let p = flags("p");
    let e = flags("e");
    let res = table(
        "res",
        SubjectKind::Agent,
        ValueKind::ResourceRef,
        agents.iter().map(|a| (a.clone(), AttributeValue::ResourceRef(resources.choose(rng).unwrap().clone()))),
    );
    let agent_attributes: BTreeMap<_, _> = [q, v, p, e, res].into_iter().map(|t| (t.name.clone(), t)).collect();
    let resource_attributes: BTreeMap<_, _> = [(u.name.clone(), u)].into_iter().collect();
    FairnessScenario::new(agents.into_iter().collect(), resources.into_iter().collect(), agent_attributes, resource_attributes)
        .expect("generated scenarios are valid")
}

pub fn outcome(rng: &mut impl Rng, s: &FairnessScenario) -> Outcome {
    let density = rng.gen_range(0.0..0.7);
    let mut pairs = Vec::new();
    for a in s.agents() {
        for r in s.resources() {
            if rng.gen_bool(density) {
                pairs.push((a.clone(), r.clone()));
            }
        }
    }
    Outcome::new(s, pairs).unwrap()
}

/// An outcome where every agent receives the same set of resources, so
/// all accumulations are equal.
pub fn uniform_outcome(rng: &mut impl Rng, s: &FairnessScenario) -> Outcome {
    let held: Vec<&Identifier> = s.resources().iter().filter(|_| rng.gen_bool(0.5)).collect();
    let pairs = s.agents().iter().flat_map(|a| held.iter().map(move |&r| (a.clone(), r.clone())));
    Outcome::new(s, pairs.collect::<Vec<_>>()).unwrap()
}

/// The scenario with needs replaced by the accumulations under `o`.
pub fn with_needs_met(s: &FairnessScenario, o: &Outcome) -> FairnessScenario {
    let acc = accumulations(s, &id("u"), o).unwrap();
    let q = table("q", SubjectKind::Agent, ValueKind::Quantity, acc.into_iter().map(|(a, x)| (a, AttributeValue::Quantity(x))));
    let mut agent_attributes = s.agent_attributes().clone();
    agent_attributes.insert(id("q"), q);
    FairnessScenario::new(s.agents().clone(), s.resources().clone(), agent_attributes, s.resource_attributes().clone())
        .unwrap()
}

/// A scenario and outcome that make the distribution measures hold with
/// useful frequency: a third of the time the outcome is uniform, and a
/// third of the time needs equal accumulations.
pub fn scenario_and_outcome(rng: &mut impl Rng, shape: &Shape) -> (FairnessScenario, Outcome) {
    let s = scenario(rng, shape);
    match rng.gen_range(0..3) {
        0 => {
            let o = uniform_outcome(rng, &s);
            (s, o)
        }
        1 => {
            let o = outcome(rng, &s);
            (with_needs_met(&s, &o), o)
        }
        _ => {
            let o = outcome(rng, &s);
            (s, o)
        }
    }
}

/// Builtins plus a few constants, all reachable from pipeline text.
pub fn fuzz_registry() -> Registry {
    let mut r = Registry::with_builtins();
    for (name, value) in [
        ("zero", Value::Quantity(Quantity::zero())),
        ("half", Value::Quantity(Quantity::new(1, 2).unwrap())),
        ("one", Value::Quantity(Quantity::one())),
        ("yes", Value::Flag(true)),
        ("no", Value::Flag(false)),
    ] {
        r.register(Tile::constant(name, value)).unwrap();
    }
    r
}

fn seq(t: TileType) -> TileType {
    TileType::seq(t)
}

/// Element types `e` whose sequences `(e)` the generator can produce.
fn element_type(rng: &mut impl Rng, depth: usize) -> TileType {
    match rng.gen_range(0..if depth == 0 { 4 } else { 6 }) {
        0 => TileType::AGENT,
        1 => TileType::RESOURCE,
        2 => TileType::QUANTITY,
        3 => TileType::BOOLEAN,
        _ => TileType::pair(element_type(rng, depth - 1), element_type(rng, depth - 1)),
    }
}

/// A type the generator can produce.
pub fn producible_type(rng: &mut impl Rng, depth: usize) -> TileType {
    match rng.gen_range(0..if depth == 0 { 3 } else { 5 }) {
        0 => TileType::BOOLEAN,
        1 => TileType::QUANTITY,
        2 => seq(element_type(rng, depth)),
        _ => {
            let arity = rng.gen_range(2..=3);
            TileType::tuple((0..arity).map(|_| producible_type(rng, depth - 1)).collect())
        }
    }
}

/// Builds random pipelines from a registry.
pub struct PipelineGen<'r> {
    pub registry: &'r Registry,
    pub builder: PipelineBuilder,
}

impl<'r> PipelineGen<'r> {
    pub fn new(registry: &'r Registry) -> Self {
        Self { registry, builder: PipelineBuilder::new() }
    }

    fn add(&mut self, name: &str, inputs: Vec<NodeId>) -> NodeId {
        let tile = self.registry.tile(name);
        self.builder.add(tile, inputs)
    }

    fn pair(&mut self, components: &[TileType], rng: &mut impl Rng, depth: usize) -> NodeId {
        let inputs = components.iter().map(|c| self.node(c, rng, depth)).collect();
        self.add("pair", inputs)
    }

    /// A node of type `ty`; `depth` bounds optional detours through
    /// projections.
    pub fn node(&mut self, ty: &TileType, rng: &mut impl Rng, depth: usize) -> NodeId {
        if depth > 0 && rng.gen_bool(0.15) {
            // proj-i(pair(..., ty, ...))
            let arity = rng.gen_range(2..=3);
            let index = rng.gen_range(0..arity);
            let components: Vec<TileType> = (0..arity)
                .map(|i| if i == index { ty.clone() } else { producible_type(rng, 1) })
                .collect();
            let pair = self.pair(&components, rng, depth - 1);
            return self.add(&format!("proj-{}", index + 1), vec![pair]);
        }
        let next = depth.saturating_sub(1);
        match ty {
            TileType::Atomic(_) if *ty == TileType::BOOLEAN => match rng.gen_range(0..5) {
                0 => {
                    let input = self.node(&seq(TileType::QUANTITY), rng, next);
                    self.add("all-equal", vec![input])
                }
                1 => {
                    let input = self.node(&TileType::pair(seq(TileType::QUANTITY), seq(TileType::QUANTITY)), rng, next);
                    self.add("all-at-least", vec![input])
                }
                2 => {
                    let input = self.node(&seq(TileType::BOOLEAN), rng, next);
                    self.add("all-true", vec![input])
                }
                3 => self.add("yes", vec![]),
                _ => self.add("no", vec![]),
            },
            TileType::Atomic(_) if *ty == TileType::QUANTITY => {
                let name = ["zero", "half", "one"].choose(rng).unwrap();
                self.add(name, vec![])
            }
            TileType::Atomic(_) => panic!("no producer for {ty}"),
            TileType::Tuple(components) => {
                let unzippable = components.len() == 2 && components.iter().all(|c| c.seq_elem().is_some());
                if unzippable && rng.gen_bool(0.3) {
                    let elems: Vec<TileType> = components.iter().map(|c| c.seq_elem().unwrap().clone()).collect();
                    let input = self.node(&seq(TileType::pair(elems[0].clone(), elems[1].clone())), rng, next);
                    self.add("unzip", vec![input])
                } else {
                    self.pair(components, rng, next)
                }
            }
            TileType::Seq(elem) => match elem.as_ref() {
                e if *e == TileType::AGENT => self.add("all-agent", vec![]),
                e if *e == TileType::RESOURCE => self.add("all-resource", vec![]),
                e if *e == TileType::QUANTITY => {
                    let agents = self.node(&seq(TileType::AGENT), rng, next);
                    let name = if rng.gen_bool(0.5) { "accumulates" } else { "needs" };
                    self.add(name, vec![agents])
                }
                e if *e == TileType::BOOLEAN => {
                    let input = self.node(&TileType::pair(seq(TileType::AGENT), seq(TileType::RESOURCE)), rng, next);
                    self.add("receives-any", vec![input])
                }
                TileType::Tuple(cs) if cs.len() == 2 => {
                    let input = self.node(&TileType::pair(seq(cs[0].clone()), seq(cs[1].clone())), rng, next);
                    self.add("zip", vec![input])
                }
                other => panic!("no producer for ({other})"),
            },
        }
    }

    pub fn finish(self) -> Pipeline {
        self.builder.build().expect("generated pipelines are single-sink DAGs")
    }
}

/// A random well-typed pipeline and its root type.
pub fn well_typed(rng: &mut impl Rng, registry: &Registry) -> (Pipeline, TileType) {
    let ty = producible_type(rng, 2);
    let mut g = PipelineGen::new(registry);
    g.node(&ty, rng, 3);
    (g.finish(), ty)
}

/// Tiles with a single fixed input type.
pub const MONOMORPHIC: [&str; 6] = ["accumulates", "needs", "all-equal", "all-at-least", "all-true", "receives-any"];

/// A pipeline in which exactly one application of a monomorphic tile is
/// fed a value of the wrong type; everything around it is well typed.
/// Returns the pipeline and the name of the misapplied tile.
pub fn ill_typed(rng: &mut impl Rng, registry: &Registry) -> (Pipeline, &'static str) {
    let name = *MONOMORPHIC.choose(rng).unwrap();
    let tile = registry.tile(name);
    let Signature::Fixed { input, output } = tile.signature().clone() else { unreachable!() };
    let wrong = loop {
        let t = producible_type(rng, 2);
        if t != input {
            break t;
        }
    };
    let mut g = PipelineGen::new(registry);
    let arg = g.node(&wrong, rng, 2);
    let bad = g.builder.add(Arc::clone(&tile), vec![arg]);
    // embed the bad node in a well-typed consumer
    match rng.gen_range(0..3) {
        0 => {}
        1 => {
            let other = producible_type(rng, 1);
            let other = g.node(&other, rng, 1);
            let pair = g.builder.add(registry.tile("pair"), vec![bad, other]);
            g.builder.add(registry.tile("proj-1"), vec![pair]);
        }
        _ => {
            let consumer = if output == TileType::BOOLEAN {
                None
            } else if output == seq(TileType::QUANTITY) {
                Some("all-equal")
            } else {
                Some("all-true")
            };
            match consumer {
                Some(c) => {
                    g.builder.add(registry.tile(c), vec![bad]);
                }
                None => {
                    let other = g.node(&TileType::BOOLEAN, rng, 1);
                    g.builder.add(registry.tile("pair"), vec![other, bad]);
                }
            }
        }
    }
    (g.finish(), name)
}
