//! Scenario documents and their resolution into a concrete market.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use icps_core::config::{self, AllocationSpec, MarketSpec, NtuSpec, ProtocolOverrideSpec, TestSpec};
use icps_core::info::{SequentialProtocol, TestMenu};
use icps_core::market::{Market, Mode};
use icps_core::solver::{self, StandingValue};
use icps_core::stability::{Allocation, Concept, DeviationRule, NtuUtilityTable};
use icps_core::Scalar;

use crate::generate::{generate_market, GenerateSpec};
use crate::grid::{SurfaceSpec, SweepSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub market: Option<MarketSpec>,
    /// Used when `market` is absent; needs a seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generate: Option<GenerateSpec>,
    #[serde(default)]
    pub menu: Vec<TestSpec>,
    /// Stages as (cumulative accuracy, stage cost).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<Vec<TestSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub protocol_overrides: Vec<ProtocolOverrideSpec>,
    #[serde(default = "default_concepts")]
    pub concepts: Vec<Concept>,
    #[serde(default)]
    pub standing_value: StandingValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allocation: Option<AllocationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ntu: Option<NtuSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Random markets checked by `props` in addition to the scenario market.
    #[serde(default = "default_suite_size")]
    pub suite_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn default_concepts() -> Vec<Concept> {
    vec![Concept::Bayes, Concept::Icps]
}

fn default_suite_size() -> usize {
    50
}

/// Command-line values that take precedence over the document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub concept: Option<Concept>,
    pub out: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn seed(&self, overrides: &Overrides) -> Option<u64> {
        overrides.seed.or(self.seed)
    }

    pub fn out_dir(&self, overrides: &Overrides) -> Option<PathBuf> {
        overrides.out.clone().or_else(|| self.out.clone())
    }

    pub fn concepts(&self, overrides: &Overrides) -> Vec<Concept> {
        match overrides.concept {
            Some(c) => vec![c],
            None => self.concepts.clone(),
        }
    }

    /// The market document, generated from the seed if needed.
    pub fn market_spec(&self, overrides: &Overrides) -> anyhow::Result<MarketSpec> {
        let mut spec = match (&self.market, &self.generate) {
            (Some(m), _) => m.clone(),
            (None, Some(g)) => {
                let Some(seed) = self.seed(overrides) else {
                    bail!("a seed is required to generate a market");
                };
                generate_market(seed, g)?
            }
            (None, None) => bail!("scenario needs `market` or `generate`"),
        };
        if let Some(mode) = overrides.mode {
            spec.mode = mode;
        }
        Ok(spec)
    }

    pub fn prepare<S: Scalar>(&self, overrides: &Overrides) -> anyhow::Result<Scenario<S>> {
        let market: Market<S> = self.market_spec(overrides)?.build()?;
        let menu = config::build_menu(&self.menu)?;
        let protocol = self.protocol.as_deref().map(config::build_protocol).transpose()?;
        let protocol_overrides = config::build_overrides(&market, &self.protocol_overrides)?;
        let allocation = self.allocation.as_ref().map(|a| a.build(&market)).transpose()?;
        let ntu = self.ntu.as_ref().map(NtuSpec::build).transpose()?;
        if let Some(u) = &ntu {
            u.validate_for(&market)?;
        }
        Ok(Scenario {
            market,
            menu,
            protocol,
            protocol_overrides,
            concepts: self.concepts(overrides),
            standing: self.standing_value,
            allocation,
            ntu,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Scenario<S> {
    pub market: Market<S>,
    pub menu: TestMenu<S>,
    pub protocol: Option<SequentialProtocol<S>>,
    pub protocol_overrides: BTreeMap<(usize, usize), SequentialProtocol<S>>,
    pub concepts: Vec<Concept>,
    pub standing: StandingValue,
    pub allocation: Option<Allocation<S>>,
    pub ntu: Option<NtuUtilityTable<S>>,
}

impl<S: Scalar> Scenario<S> {
    /// Deviation rule for a TU concept, with per-pair protocol overrides.
    pub fn rule(&self, concept: Concept) -> anyhow::Result<DeviationRule<S>> {
        let protocol = self.protocol.as_ref().or_else(|| self.protocol_overrides.values().next());
        let mut rule = solver::concept_rule(concept, &self.menu, protocol)?;
        if concept == Concept::Seq {
            rule.protocol_overrides = self.protocol_overrides.clone();
        }
        Ok(rule)
    }

    pub fn ntu(&self) -> anyhow::Result<&NtuUtilityTable<S>> {
        self.ntu.as_ref().context("concept ntu needs an `ntu` utility table")
    }
}
