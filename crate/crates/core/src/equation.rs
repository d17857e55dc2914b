use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::JetChart;
use crate::parse::{format_polynomial, minimal_order};
use crate::poly::{Polynomial, Rational};

/// A polynomial differential equation on the chart of its own order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialEquation {
    chart: JetChart,
    f: Polynomial<Rational>,
}

impl DifferentialEquation {
    /// Builds the equation on the smallest chart containing `f`, which may
    /// be given on any chart of the same `(n, k)`.
    pub fn new(chart: &JetChart, f: Polynomial<Rational>) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::Degenerate("equation must involve a chart variable".into()));
        }
        let r = minimal_order(&f, chart);
        let small = chart.with_order(r);
        let f = f.truncate(small.nvars())?;
        Ok(DifferentialEquation { chart: small, f })
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn order(&self) -> usize {
        self.chart.r()
    }

    pub fn polynomial(&self) -> &Polynomial<Rational> {
        &self.f
    }

    /// The equation on a chart of order at least its own.
    pub fn on_chart(&self, r: usize) -> Polynomial<Rational> {
        assert!(r >= self.order());
        self.f.extend(self.chart.with_order(r).nvars())
    }

    pub fn to_text(&self) -> String {
        format_polynomial(&self.f, &self.chart)
    }
}

/// Where an invariant entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Distinguished,
    Diagonal,
    Calibrated,
    Measured,
    Formula,
    Smooth,
    User,
    Unknown,
}

/// One entry of an invariant vector; `None` means UNKNOWN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub value: Option<i64>,
    pub provenance: Provenance,
}

impl Entry {
    pub fn known(value: i64, provenance: Provenance) -> Self {
        Entry { value: Some(value), provenance }
    }

    pub fn unknown() -> Self {
        Entry { value: None, provenance: Provenance::Unknown }
    }
}

/// Renders a vector such as `(-3, 3, 1)` or `(0, UNKNOWN)`.
pub fn format_entries(entries: &[Entry]) -> String {
    let parts: Vec<String> = entries.iter().map(|e| e.value.map_or("UNKNOWN".to_string(), |v| v.to_string())).collect();
    format!("({})", parts.join(", "))
}

/// Plain values of a vector in which every entry is known.
pub fn values(entries: &[Entry]) -> Option<Vec<i64>> {
    entries.iter().map(|e| e.value).collect()
}
