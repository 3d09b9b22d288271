use std::fmt;

use crate::model::Quantity;

/// Value of a measure: exact where the computation is rational, a binary
/// float where it needs square roots.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureValue {
    Exact(Quantity),
    Approximate(f64),
}

impl MeasureValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            MeasureValue::Exact(q) => q.to_f64(),
            MeasureValue::Approximate(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Quantity> {
        match self {
            MeasureValue::Exact(q) => Some(q),
            MeasureValue::Approximate(_) => None,
        }
    }
}

/// Outcome of evaluating a fairness measure. The value always lies in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    value: MeasureValue,
    diagnostics: Vec<String>,
}

impl MeasureResult {
    pub fn exact(value: Quantity) -> Self {
        assert!(value.in_unit_interval(), "measure value {value} outside [0, 1]");
        Self { value: MeasureValue::Exact(value), diagnostics: Vec::new() }
    }

    pub fn approximate(value: f64) -> Self {
        assert!((0.0..=1.0).contains(&value), "measure value {value} outside [0, 1]");
        Self { value: MeasureValue::Approximate(value), diagnostics: Vec::new() }
    }

    pub fn boolean(holds: bool) -> Self {
        Self::exact(if holds { Quantity::one() } else { Quantity::zero() })
    }

    pub fn with_diagnostic(mut self, message: impl Into<String>) -> Self {
        self.diagnostics.push(message.into());
        self
    }

    pub fn value(&self) -> &MeasureValue {
        &self.value
    }

    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, MeasureValue::Exact(_))
    }

    pub fn exact_value(&self) -> Option<&Quantity> {
        self.value.as_exact()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Reads a 0/1 result as a boolean; `None` for any other value.
    pub fn as_bool(&self) -> Option<bool> {
        let q = self.value.as_exact()?;
        if q.is_zero() {
            Some(false)
        } else if *q == Quantity::one() {
            Some(true)
        } else {
            None
        }
    }
}

impl fmt::Display for MeasureResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            MeasureValue::Exact(q) => f.write_str(&q.to_decimal_string(12)),
            MeasureValue::Approximate(x) => f.write_str(&format_float(*x, 12)),
        }
    }
}

/// Renders a float with at most `digits` significant digits, trailing
/// zeros removed.
pub fn format_float(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_values() {
        assert_eq!(MeasureResult::exact(Quantity::new(5, 18).unwrap()).to_string(), "0.277777777778");
        assert_eq!(MeasureResult::boolean(true).to_string(), "1");
        assert_eq!(MeasureResult::boolean(false).to_string(), "0");
        assert_eq!(MeasureResult::approximate(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(MeasureResult::approximate(0.5).to_string(), "0.5");
    }

    #[test]
    fn boolean_reading() {
        assert_eq!(MeasureResult::boolean(true).as_bool(), Some(true));
        assert_eq!(MeasureResult::exact(Quantity::new(1, 2).unwrap()).as_bool(), None);
        assert_eq!(MeasureResult::approximate(1.0).as_bool(), None);
    }

    #[test]
    #[should_panic(expected = "outside [0, 1]")]
    fn rejects_out_of_range() {
        MeasureResult::exact(Quantity::from(2));
    }
}
