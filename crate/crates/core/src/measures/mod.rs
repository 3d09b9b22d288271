//! Fairness measures: pure functions from a scenario and an outcome to a
//! value in [0, 1].
//!
//! Boolean measures yield exactly 0 or 1 and are computed with exact
//! rationals. Jain's index and the Gini complement are exact rationals too;
//! only the correlation-based measure uses binary floating point.

mod catalog;
mod continuous;
mod distribution;
mod error;
mod group;
mod preference;
mod result;

pub use catalog::{evaluate_measure, MeasureKind, MeasureParams};
pub use continuous::{equalized_odds, gini_complement, jains_index, pearson_corr};
pub use distribution::{equality, equity, receives_any, strict_equity};
pub use error::MeasureError;
pub use group::{group_fairness, group_rates, individual_fairness, similar_eps, Epsilon, GroupRates};
pub use preference::weak_envy_freeness;
pub use result::{format_float, MeasureResult, MeasureValue};
