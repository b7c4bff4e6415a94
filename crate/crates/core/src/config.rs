//! JSON documents describing markets, tests, protocols, allocations and NTU
//! utilities. Numbers may be JSON numbers or strings such as `"1/3"`; costs
//! also accept `"inf"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{SequentialProtocol, Test, TestMenu};
use crate::market::{Agent, Grade, Market, Matching, Mode, Side, SurplusTable, DEFAULT_ENUMERATION_CAP};
use crate::num::Scalar;
use crate::stability::{Allocation, NtuUtilityTable};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumSpec {
    Int(i64),
    Float(f64),
    Text(String),
}

impl NumSpec {
    pub fn to_scalar<S: Scalar>(&self) -> Result<S> {
        match self {
            NumSpec::Int(i) => Ok(S::from_int(*i)),
            NumSpec::Float(x) => Ok(S::from_f64(*x)?),
            NumSpec::Text(t) => Ok(S::parse(t)?),
        }
    }

    fn is_infinite(&self) -> bool {
        match self {
            NumSpec::Float(x) => x.is_infinite(),
            NumSpec::Text(t) => matches!(t.trim().to_ascii_lowercase().as_str(), "inf" | "infinity"),
            NumSpec::Int(_) => false,
        }
    }
}

impl From<i64> for NumSpec {
    fn from(value: i64) -> Self {
        NumSpec::Int(value)
    }
}

impl From<&str> for NumSpec {
    fn from(value: &str) -> Self {
        NumSpec::Text(value.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradeSpec {
    pub label: String,
    pub value: NumSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradesSpec {
    pub firm: Vec<GradeSpec>,
    pub worker: Vec<GradeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurplusSpec {
    TwoGrade(TwoGradeSpec),
    Table(TableSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoGradeSpec {
    pub alpha: NumSpec,
    pub beta: NumSpec,
    pub gamma: NumSpec,
}

/// `[firm grade][worker grade]`, grades listed in `market.grades`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub table: Vec<Vec<NumSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentSpec {
    pub name: String,
    #[serde(default = "half")]
    pub prior: NumSpec,
    /// Realized grade label.
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub grade: Option<String>,
}

fn half() -> NumSpec {
    NumSpec::Text("1/2".into())
}

fn zero() -> NumSpec {
    NumSpec::Int(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketSpec {
    /// Defaults to the two grades `L` (0) and `H` (1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<GradesSpec>,
    pub surplus: SurplusSpec,
    pub firms: Vec<AgentSpec>,
    pub workers: Vec<AgentSpec>,
    #[serde(default = "zero")]
    pub rho: NumSpec,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub distinct_types: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

fn default_mode() -> Mode {
    Mode::ExAnte
}

impl MarketSpec {
    pub fn build<S: Scalar>(&self) -> Result<Market<S>> {
        self.build_with_mode(self.mode)
    }

    pub fn build_with_mode<S: Scalar>(&self, mode: Mode) -> Result<Market<S>> {
        let table = match (&self.surplus, &self.grades) {
            (SurplusSpec::TwoGrade(TwoGradeSpec { alpha, beta, gamma }), None) => {
                SurplusTable::two_grade(alpha.to_scalar()?, beta.to_scalar()?, gamma.to_scalar()?)?
            }
            (SurplusSpec::TwoGrade(_), Some(_)) => {
                return Err(Error::InvalidSurplus("alpha/beta/gamma cannot be combined with custom grades".into()))
            }
            (SurplusSpec::Table(TableSpec { table }), grades) => {
                let grades = grades.clone().unwrap_or_else(|| GradesSpec {
                    firm: default_grades(),
                    worker: default_grades(),
                });
                let conv = |gs: &[GradeSpec]| -> Result<Vec<Grade<S>>> {
                    gs.iter().map(|g| Ok(Grade::new(g.label.clone(), g.value.to_scalar()?))).collect()
                };
                let entries = table
                    .iter()
                    .map(|row| row.iter().map(NumSpec::to_scalar).collect::<Result<Vec<S>>>())
                    .collect::<Result<Vec<_>>>()?;
                SurplusTable::new(conv(&grades.firm)?, conv(&grades.worker)?, entries)?
            }
        };
        let agents = |side: Side, specs: &[AgentSpec]| -> Result<Vec<Agent<S>>> {
            specs
                .iter()
                .map(|a| {
                    let mut agent = Agent::new(a.name.clone(), a.prior.to_scalar()?);
                    if let Some(label) = &a.grade {
                        let idx = table.grade_index(side, label).ok_or_else(|| {
                            Error::InvalidMarket(format!("unknown grade `{label}` for {}", a.name))
                        })?;
                        agent = agent.with_realized(idx);
                    }
                    Ok(agent)
                })
                .collect()
        };
        let firms = agents(Side::Firm, &self.firms)?;
        let workers = agents(Side::Worker, &self.workers)?;
        let market = Market::new(firms, workers, table, self.rho.to_scalar()?, mode, self.distinct_types)?;
        Ok(market.with_cap(self.cap.unwrap_or(DEFAULT_ENUMERATION_CAP)))
    }
}

fn default_grades() -> Vec<GradeSpec> {
    vec![
        GradeSpec {
            label: "L".into(),
            value: NumSpec::Int(0),
        },
        GradeSpec {
            label: "H".into(),
            value: NumSpec::Int(1),
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestSpec {
    pub accuracy: NumSpec,
    pub cost: NumSpec,
}

impl TestSpec {
    pub fn build<S: Scalar>(&self) -> Result<Test<S>> {
        if self.cost.is_infinite() {
            Test::infeasible(self.accuracy.to_scalar()?)
        } else {
            Test::new(self.accuracy.to_scalar()?, self.cost.to_scalar()?)
        }
    }
}

pub fn build_menu<S: Scalar>(tests: &[TestSpec]) -> Result<TestMenu<S>> {
    Ok(TestMenu::new(tests.iter().map(TestSpec::build).collect::<Result<Vec<_>>>()?))
}

/// Stages as (cumulative accuracy, stage cost).
pub fn build_protocol<S: Scalar>(stages: &[TestSpec]) -> Result<SequentialProtocol<S>> {
    let stages = stages
        .iter()
        .map(|s| Ok((s.accuracy.to_scalar()?, s.cost.to_scalar()?)))
        .collect::<Result<Vec<_>>>()?;
    SequentialProtocol::new(stages)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolOverrideSpec {
    pub firm: String,
    pub worker: String,
    pub stages: Vec<TestSpec>,
}

pub fn build_overrides<S: Scalar>(
    market: &Market<S>,
    specs: &[ProtocolOverrideSpec],
) -> Result<BTreeMap<(usize, usize), SequentialProtocol<S>>> {
    specs
        .iter()
        .map(|o| Ok((market.find_pair(&o.firm, &o.worker)?, build_protocol(&o.stages)?)))
        .collect()
}

/// Matched pairs by name with explicit payoffs; agents missing from the
/// payoff maps get 0. Without payoffs, matched pairs split equally.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationSpec {
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub firm_payoffs: Option<BTreeMap<String, NumSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worker_payoffs: Option<BTreeMap<String, NumSpec>>,
}

impl AllocationSpec {
    pub fn matching<S: Scalar>(&self, market: &Market<S>) -> Result<Matching> {
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| market.find_pair(a, b))
            .collect::<Result<Vec<_>>>()?;
        let (n, m) = market.size();
        Matching::from_pairs(n, m, &pairs)
    }

    pub fn build<S: Scalar>(&self, market: &Market<S>) -> Result<Allocation<S>> {
        let matching = self.matching(market)?;
        if self.firm_payoffs.is_none() && self.worker_payoffs.is_none() {
            return Allocation::equal_split(market, matching);
        }
        let fill = |side: Side, map: &Option<BTreeMap<String, NumSpec>>| -> Result<Vec<S>> {
            let agents = market.agents(side);
            let mut out = vec![S::zero(); agents.len()];
            for (name, value) in map.iter().flatten() {
                let idx = agents
                    .iter()
                    .position(|a| &a.name == name)
                    .ok_or_else(|| Error::UnknownAgent(name.clone()))?;
                out[idx] = value.to_scalar()?;
            }
            Ok(out)
        };
        let alloc = Allocation::new(
            matching,
            fill(Side::Firm, &self.firm_payoffs)?,
            fill(Side::Worker, &self.worker_payoffs)?,
        )?;
        alloc.check_consistent(market)?;
        Ok(alloc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NtuSpec {
    pub firm_utility: Vec<Vec<NumSpec>>,
    pub worker_utility: Vec<Vec<NumSpec>>,
    #[serde(default = "half")]
    pub firm_cost_share: NumSpec,
}

impl NtuSpec {
    pub fn build<S: Scalar>(&self) -> Result<NtuUtilityTable<S>> {
        let conv = |t: &Vec<Vec<NumSpec>>| -> Result<Vec<Vec<S>>> {
            t.iter().map(|r| r.iter().map(NumSpec::to_scalar).collect()).collect()
        };
        NtuUtilityTable::new(conv(&self.firm_utility)?, conv(&self.worker_utility)?)
            .with_firm_cost_share(self.firm_cost_share.to_scalar()?)
    }
}
