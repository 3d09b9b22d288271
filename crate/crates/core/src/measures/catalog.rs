//! Name-based dispatch over the measures, for front ends.

use std::fmt;
use std::str::FromStr;

use crate::model::{id, FairnessScenario, Identifier, Outcome};

use super::{
    equality, equalized_odds, equity, gini_complement, group_fairness, individual_fairness, jains_index,
    strict_equity, weak_envy_freeness, Epsilon, MeasureError, MeasureResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasureKind {
    Equality,
    Equity,
    StrictEquity,
    WeakEnvyFreeness,
    GroupFairness,
    IndividualFairness,
    Jain,
    GiniComplement,
    EqualizedOdds,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 9] = [
        MeasureKind::Equality,
        MeasureKind::Equity,
        MeasureKind::StrictEquity,
        MeasureKind::WeakEnvyFreeness,
        MeasureKind::GroupFairness,
        MeasureKind::IndividualFairness,
        MeasureKind::Jain,
        MeasureKind::GiniComplement,
        MeasureKind::EqualizedOdds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Equality => "equality",
            MeasureKind::Equity => "equity",
            MeasureKind::StrictEquity => "strict-equity",
            MeasureKind::WeakEnvyFreeness => "weak-envy-freeness",
            MeasureKind::GroupFairness => "group-fairness",
            MeasureKind::IndividualFairness => "individual-fairness",
            MeasureKind::Jain => "jain",
            MeasureKind::GiniComplement => "gini-complement",
            MeasureKind::EqualizedOdds => "equalized-odds",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            MeasureKind::Equality => "every agent accumulates the same utility",
            MeasureKind::Equity => "every agent accumulates at least its need",
            MeasureKind::StrictEquity => "every agent accumulates exactly its need",
            MeasureKind::WeakEnvyFreeness => {
                "no agent ranks a resource held only by others above everything it holds"
            }
            MeasureKind::GroupFairness => "target-resource rates of protected and unprotected groups are epsilon-similar",
            MeasureKind::IndividualFairness => "agents equal on the essential attribute are treated alike",
            MeasureKind::Jain => "Jain's index of accumulated utility, in [1/n, 1]",
            MeasureKind::GiniComplement => "1 minus the Gini index of accumulated utility",
            MeasureKind::EqualizedOdds => {
                "|Pearson correlation| of false high flags with the protected attribute (higher = more bias)"
            }
        }
    }

    /// Bindings read by the measure, as CLI flag names.
    pub fn bindings(self) -> &'static [&'static str] {
        match self {
            MeasureKind::Equality | MeasureKind::Jain | MeasureKind::GiniComplement => &["utility"],
            MeasureKind::Equity | MeasureKind::StrictEquity => &["utility", "need"],
            MeasureKind::WeakEnvyFreeness => &["ranking"],
            MeasureKind::GroupFairness => &["protected", "target", "epsilon"],
            MeasureKind::IndividualFairness => &["essential", "target"],
            MeasureKind::EqualizedOdds => &["protected", "ground-truth", "high"],
        }
    }

    /// True for measures whose value is always 0 or 1.
    pub fn is_boolean(self) -> bool {
        !matches!(self, MeasureKind::Jain | MeasureKind::GiniComplement | MeasureKind::EqualizedOdds)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| MeasureError::UnknownMeasure(s.to_owned()))
    }
}

/// Attribute names and parameters consulted by the measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureParams {
    pub utility: Identifier,
    pub need: Identifier,
    pub ranking: Identifier,
    pub protected: Identifier,
    pub essential: Identifier,
    pub ground_truth: Identifier,
    pub target: Option<Identifier>,
    pub high: Option<Identifier>,
    pub epsilon: Epsilon,
}

impl Default for MeasureParams {
    fn default() -> Self {
        Self {
            utility: id("u"),
            need: id("q"),
            ranking: id("v"),
            protected: id("p"),
            essential: id("q"),
            ground_truth: id("res"),
            target: None,
            high: None,
            epsilon: Epsilon::default(),
        }
    }
}

pub fn evaluate_measure(
    kind: MeasureKind,
    s: &FairnessScenario,
    o: &Outcome,
    params: &MeasureParams,
) -> Result<MeasureResult, MeasureError> {
    let required = |value: &Option<Identifier>, binding: &'static str| {
        value.clone().ok_or(MeasureError::MissingBinding { measure: kind.name(), binding })
    };
    match kind {
        MeasureKind::Equality => equality(s, o, &params.utility),
        MeasureKind::Equity => equity(s, o, &params.utility, &params.need),
        MeasureKind::StrictEquity => strict_equity(s, o, &params.utility, &params.need),
        MeasureKind::WeakEnvyFreeness => weak_envy_freeness(s, o, &params.ranking),
        MeasureKind::GroupFairness => {
            group_fairness(s, o, &params.protected, &required(&params.target, "target")?, &params.epsilon)
        }
        MeasureKind::IndividualFairness => {
            individual_fairness(s, o, &params.essential, &required(&params.target, "target")?)
        }
        MeasureKind::Jain => jains_index(s, o, &params.utility),
        MeasureKind::GiniComplement => gini_complement(s, o, &params.utility),
        MeasureKind::EqualizedOdds => {
            equalized_odds(s, o, &params.protected, &params.ground_truth, &required(&params.high, "high")?)
        }
    }
}
