use serde::{Deserialize, Serialize};

use super::taxonomy::{ImpactLevel, ImpactScope, RegulatoryFlag};
use super::validate::{Validate, Violation};

pub const GOVERNANCE_INDICATOR_COUNT: usize = 10;

/// Weights applied to the risk, impact and scope scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UseCaseWeights {
    pub risk: f64,
    pub impact: f64,
    pub scope: f64,
}

impl Default for UseCaseWeights {
    fn default() -> Self {
        Self {
            risk: 1.0,
            impact: 1.0,
            scope: 1.0,
        }
    }
}

/// Numeric value of each regulatory flag (the risk score).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegulatoryEncoding {
    pub unacceptable: f64,
    pub high: f64,
    pub medium: f64,
    pub low: f64,
    pub not_determined: f64,
}

impl Default for RegulatoryEncoding {
    fn default() -> Self {
        Self {
            unacceptable: 1.5,
            high: 1.0,
            medium: 0.5,
            low: 0.0,
            not_determined: 0.5,
        }
    }
}

impl RegulatoryEncoding {
    pub fn value(&self, flag: RegulatoryFlag) -> f64 {
        match flag {
            RegulatoryFlag::Unacceptable => self.unacceptable,
            RegulatoryFlag::High => self.high,
            RegulatoryFlag::Medium => self.medium,
            RegulatoryFlag::Low => self.low,
            RegulatoryFlag::NotDetermined => self.not_determined,
        }
    }

    pub fn value_mut(&mut self, flag: RegulatoryFlag) -> &mut f64 {
        match flag {
            RegulatoryFlag::Unacceptable => &mut self.unacceptable,
            RegulatoryFlag::High => &mut self.high,
            RegulatoryFlag::Medium => &mut self.medium,
            RegulatoryFlag::Low => &mut self.low,
            RegulatoryFlag::NotDetermined => &mut self.not_determined,
        }
    }
}

/// Numeric value of each impact level (the impact score).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImpactEncoding {
    pub high: f64,
    pub medium: f64,
    pub low: f64,
}

impl Default for ImpactEncoding {
    fn default() -> Self {
        Self {
            high: 1.0,
            medium: 0.5,
            low: 0.0,
        }
    }
}

impl ImpactEncoding {
    pub fn value(&self, level: ImpactLevel) -> f64 {
        match level {
            ImpactLevel::High => self.high,
            ImpactLevel::Medium => self.medium,
            ImpactLevel::Low => self.low,
        }
    }

    pub fn value_mut(&mut self, level: ImpactLevel) -> &mut f64 {
        match level {
            ImpactLevel::High => &mut self.high,
            ImpactLevel::Medium => &mut self.medium,
            ImpactLevel::Low => &mut self.low,
        }
    }
}

/// Numeric value of each impact scope (the scope score).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScopeEncoding {
    pub systemic: f64,
    pub industry: f64,
}

impl Default for ScopeEncoding {
    fn default() -> Self {
        Self {
            systemic: 1.0,
            industry: 0.5,
        }
    }
}

impl ScopeEncoding {
    pub fn value(&self, scope: ImpactScope) -> f64 {
        match scope {
            ImpactScope::Systemic => self.systemic,
            ImpactScope::Industry => self.industry,
        }
    }

    pub fn value_mut(&mut self, scope: ImpactScope) -> &mut f64 {
        match scope {
            ImpactScope::Systemic => &mut self.systemic,
            ImpactScope::Industry => &mut self.industry,
        }
    }
}

/// Every tunable number used by the scoring engine.
///
/// The weights (all 1) and thresholds (2 and 1) are the published defaults.
/// The three encoding tables are not published anywhere; the defaults here
/// are a documented choice and every value can be replaced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoringConfig {
    #[serde(default)]
    pub use_case_weights: UseCaseWeights,
    #[serde(default = "default_t_high")]
    pub t_high: f64,
    #[serde(default = "default_t_low")]
    pub t_low: f64,
    #[serde(default)]
    pub regulatory_encoding: RegulatoryEncoding,
    #[serde(default)]
    pub impact_encoding: ImpactEncoding,
    #[serde(default)]
    pub scope_encoding: ScopeEncoding,
    #[serde(default = "default_governance_weights")]
    pub governance_weights: [f64; GOVERNANCE_INDICATOR_COUNT],
}

fn default_t_high() -> f64 {
    2.0
}

fn default_t_low() -> f64 {
    1.0
}

fn default_governance_weights() -> [f64; GOVERNANCE_INDICATOR_COUNT] {
    [1.0; GOVERNANCE_INDICATOR_COUNT]
}

impl Default for ScoringConfig {
    fn default() -> Self {
        Self {
            use_case_weights: UseCaseWeights::default(),
            t_high: default_t_high(),
            t_low: default_t_low(),
            regulatory_encoding: RegulatoryEncoding::default(),
            impact_encoding: ImpactEncoding::default(),
            scope_encoding: ScopeEncoding::default(),
            governance_weights: default_governance_weights(),
        }
    }
}

impl ScoringConfig {
    /// Multiply the use-case weights and both materiality thresholds by `factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.use_case_weights.risk *= factor;
        out.use_case_weights.impact *= factor;
        out.use_case_weights.scope *= factor;
        out.t_high *= factor;
        out.t_low *= factor;
        out
    }
}

fn check_range(out: &mut Vec<Violation>, path: String, value: f64, lo: f64, hi: f64) {
    if !value.is_finite() || value < lo || value > hi {
        out.push(Violation::new(
            "config.encoding.range",
            path,
            format!("{value} is outside [{lo}, {hi}]"),
        ));
    }
}

fn check_weight(out: &mut Vec<Violation>, path: String, value: f64) {
    if !value.is_finite() || value < 0.0 {
        out.push(Violation::new(
            "config.weight.negative",
            path,
            format!("weight must be a finite non-negative number, got {value}"),
        ));
    }
}

impl Validate for ScoringConfig {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let w = &self.use_case_weights;
        check_weight(&mut out, "use_case_weights.risk".into(), w.risk);
        check_weight(&mut out, "use_case_weights.impact".into(), w.impact);
        check_weight(&mut out, "use_case_weights.scope".into(), w.scope);
        for (i, weight) in self.governance_weights.iter().enumerate() {
            check_weight(&mut out, format!("governance_weights[{i}]"), *weight);
        }
        if !self.t_high.is_finite() || !self.t_low.is_finite() || self.t_low >= self.t_high {
            out.push(Violation::new(
                "config.thresholds",
                "t_low",
                format!(
                    "t_low ({}) must be strictly below t_high ({})",
                    self.t_low, self.t_high
                ),
            ));
        }
        for flag in RegulatoryFlag::ALL {
            check_range(
                &mut out,
                format!("regulatory_encoding.{}", flag.as_str()),
                self.regulatory_encoding.value(*flag),
                0.0,
                1.5,
            );
        }
        for level in ImpactLevel::ALL {
            check_range(
                &mut out,
                format!("impact_encoding.{}", level.as_str()),
                self.impact_encoding.value(*level),
                0.0,
                1.0,
            );
        }
        for scope in ImpactScope::ALL {
            check_range(
                &mut out,
                format!("scope_encoding.{}", scope.as_str()),
                self.scope_encoding.value(*scope),
                0.0,
                1.0,
            );
        }
        out
    }
}
