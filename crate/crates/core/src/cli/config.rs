//! Analysis configuration document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::power::{DEFAULT_FREQUENCIES, DEFAULT_LOADS};
use crate::analysis::{AnalysisError, CostModel, DelayModel, PowerParams};
use crate::netlist::GateKind;
use crate::verify::{SweepOptions, DEFAULT_SEED};

/// Environment variable that overrides the sweep seed.
pub const SEED_ENV: &str = "BCDKIT_SEED";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub seed: u64,
    /// Random vectors for sampled correctness checks.
    pub check_samples: u64,
    /// Random input pairs for sampled functional delay.
    pub delay_samples: u64,
    /// Functional delay enumerates every pair up to this many inputs.
    pub exhaustive_inputs: usize,
    /// Length of the random activity sequence; `None` means power needs an
    /// explicit stimulus.
    pub activity_length: Option<usize>,
    /// Output loads of the power grid, in farads.
    pub loads: Vec<f64>,
    /// Clock frequencies of the power grid, in hertz.
    pub frequencies: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: DEFAULT_SEED,
            check_samples: 100_000,
            delay_samples: 10_000,
            exhaustive_inputs: 10,
            activity_length: None,
            loads: DEFAULT_LOADS.to_vec(),
            frequencies: DEFAULT_FREQUENCIES.to_vec(),
        }
    }
}

/// Every field is optional; missing fields take the documented defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Per-kind transistor counts replacing the defaults.
    pub cost: BTreeMap<GateKind, u32>,
    pub delay: DelayModel,
    pub power: PowerParams,
    pub sweep: SweepConfig,
}

impl AnalysisConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn cost_model(&self) -> CostModel {
        self.cost
            .iter()
            .fold(CostModel::default(), |m, (&k, &v)| m.with(k, v))
    }

    pub fn check(&self) -> Result<(), AnalysisError> {
        self.cost_model().check()?;
        self.delay.check()?;
        self.power.check()?;
        let grid = self.sweep.loads.iter().chain(&self.sweep.frequencies);
        if grid.clone().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(AnalysisError::InvalidModel(
                "power grid values must be non-negative".into(),
            ));
        }
        if self.sweep.activity_length.is_some_and(|n| n < 2) {
            return Err(AnalysisError::InvalidModel(
                "activity_length must be at least 2".into(),
            ));
        }
        Ok(())
    }

    /// Applies a seed taken from the environment, if one is set.
    pub fn apply_seed_env(&mut self, value: Option<&str>) -> Result<(), String> {
        if let Some(v) = value {
            self.sweep.seed = v
                .trim()
                .parse()
                .map_err(|_| format!("{SEED_ENV}={v} is not an unsigned integer"))?;
        }
        Ok(())
    }

    pub fn sweep_options(&self, parallel: bool) -> SweepOptions {
        SweepOptions {
            parallel,
            seed: self.sweep.seed,
            samples: self.sweep.check_samples,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let c = AnalysisConfig::from_json("{}").unwrap();
        assert_eq!(c, AnalysisConfig::default());
        assert_eq!(c.power.vdd, 3.3);
        assert_eq!(c.cost_model(), CostModel::default());
        c.check().unwrap();
    }

    #[test]
    fn partial_overrides() {
        let c = AnalysisConfig::from_json(
            r#"{"cost": {"NOT": 3}, "delay": {"fa_carry": 3}, "sweep": {"seed": 9}}"#,
        )
        .unwrap();
        assert_eq!(c.cost_model().get(GateKind::Not), Some(3));
        assert_eq!(c.delay.fa_carry, 3);
        assert_eq!(c.delay.gate, 1);
        assert_eq!(c.sweep.seed, 9);
        assert!(AnalysisConfig::from_json(r#"{"bogus": 1}"#).is_err());
        let bad = AnalysisConfig::from_json(r#"{"cost": {"AND3": 5}}"#).unwrap();
        assert!(bad.check().is_err());
    }

    #[test]
    fn seed_from_environment() {
        let mut c = AnalysisConfig::default();
        c.apply_seed_env(Some("17")).unwrap();
        assert_eq!(c.sweep.seed, 17);
        assert!(c.apply_seed_env(Some("x")).is_err());
    }
}
