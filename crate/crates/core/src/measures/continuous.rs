//! Continuous measures: Jain's index, the Gini complement, and the
//! correlation-based equalized-odds measure.

use crate::model::{accumulations, FairnessScenario, Identifier, Outcome, Quantity, ValueKind};

use super::{MeasureError, MeasureResult};

/// (Σx)² / (n · Σx²) over per-agent accumulations.
///
/// All-zero accumulations give 1 with a diagnostic.
pub fn jains_index(s: &FairnessScenario, o: &Outcome, utility: &Identifier) -> Result<MeasureResult, MeasureError> {
    let values: Vec<Quantity> = accumulations(s, utility, o)?.into_values().collect();
    Ok(jain(&values))
}

pub(crate) fn jain(values: &[Quantity]) -> MeasureResult {
    let total: Quantity = values.iter().sum();
    let squares: Quantity = values.iter().map(|x| x * x).sum();
    if squares.is_zero() {
        return MeasureResult::exact(Quantity::one()).with_diagnostic("degenerate all-zero allocation");
    }
    let n = Quantity::from(values.len() as i64);
    MeasureResult::exact(&total * &total / (n * squares))
}

/// 1 − Σᵢ Σⱼ |xᵢ − xⱼ| / (2 · n · Σx) over per-agent accumulations.
///
/// Negative accumulations are rejected; a zero total gives 1 with a
/// diagnostic.
pub fn gini_complement(s: &FairnessScenario, o: &Outcome, utility: &Identifier) -> Result<MeasureResult, MeasureError> {
    let totals = accumulations(s, utility, o)?;
    if let Some((agent, amount)) = totals.iter().find(|(_, x)| x.is_negative()) {
        return Err(MeasureError::NegativeAccumulation { agent: agent.clone(), amount: amount.clone() });
    }
    let values: Vec<Quantity> = totals.into_values().collect();
    Ok(gini(&values))
}

pub(crate) fn gini(values: &[Quantity]) -> MeasureResult {
    let total: Quantity = values.iter().sum();
    if total.is_zero() {
        return MeasureResult::exact(Quantity::one()).with_diagnostic("degenerate zero-total allocation");
    }
    // Σᵢ Σⱼ |xᵢ − xⱼ| = 2 Σ_k (2k − n − 1) x_(k) over the sorted values.
    let mut sorted = values.to_vec();
    sorted.sort();
    let n = sorted.len() as i64;
    let spread: Quantity = sorted
        .iter()
        .enumerate()
        .map(|(k, x)| Quantity::from(2 * (2 * (k as i64 + 1) - n - 1)) * x.clone())
        .sum();
    let denominator = Quantity::from(2 * n) * total;
    MeasureResult::exact(Quantity::one() - spread / denominator)
}

/// Pearson correlation of two equally long sequences.
///
/// Moments are computed exactly; only the final square root is taken in
/// binary floating point. A sequence with zero variance gives 0.
pub fn pearson_corr(xs: &[Quantity], ys: &[Quantity]) -> Result<f64, MeasureError> {
    if xs.len() != ys.len() {
        return Err(MeasureError::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.is_empty() {
        return Err(MeasureError::EmptyInput);
    }
    let n = Quantity::from(xs.len() as i64);
    let mean_x = xs.iter().sum::<Quantity>() / n.clone();
    let mean_y = ys.iter().sum::<Quantity>() / n;
    let dx: Vec<Quantity> = xs.iter().map(|x| x - &mean_x).collect();
    let dy: Vec<Quantity> = ys.iter().map(|y| y - &mean_y).collect();
    let sxy: Quantity = dx.iter().zip(&dy).map(|(a, b)| a * b).sum();
    let sxx: Quantity = dx.iter().map(|a| a * a).sum();
    let syy: Quantity = dy.iter().map(|b| b * b).sum();
    if sxx.is_zero() || syy.is_zero() {
        return Ok(0.0);
    }
    let r_squared = &sxy * &sxy / (sxx * syy);
    let magnitude = r_squared.to_f64().sqrt().min(1.0);
    Ok(if sxy.is_negative() { -magnitude } else { magnitude })
}

/// |corr(false-flag indicators, protected indicators)|, agents taken in
/// byte order.
///
/// An agent is falsely flagged when it receives `high` although its ground
/// truth is some other resource. Higher values mean stronger association
/// between false flags and the protected attribute, i.e. more bias.
pub fn equalized_odds(
    s: &FairnessScenario,
    o: &Outcome,
    protected: &Identifier,
    ground_truth: &Identifier,
    high: &Identifier,
) -> Result<MeasureResult, MeasureError> {
    let flags = s.agent_attribute_of_kind(protected, ValueKind::Boolean)?;
    let truth = s.agent_attribute_of_kind(ground_truth, ValueKind::ResourceRef)?;
    s.require_resource(high)?;
    let indicator = |b: bool| if b { Quantity::one() } else { Quantity::zero() };
    let mut false_flags = Vec::with_capacity(s.agents().len());
    let mut protected_flags = Vec::with_capacity(s.agents().len());
    for agent in s.agents() {
        let flagged = o.contains(agent, high) && truth.resource_ref(agent)? != high;
        false_flags.push(indicator(flagged));
        protected_flags.push(indicator(flags.flag(agent)?));
    }
    let corr = pearson_corr(&false_flags, &protected_flags)?;
    Ok(MeasureResult::approximate(corr.abs().min(1.0)))
}
