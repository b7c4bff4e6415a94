//! Serializable report records. Numbers are rendered strings: terminating
//! decimals or `n/d` in exact mode, shortest float text in float mode.

use std::collections::BTreeMap;

use serde::Serialize;

use icps_core::market::{Market, Matching};
use icps_core::solver::{RefinementMagnitude, StableSetReport};
use icps_core::stability::{Allocation, BlockingCertificate, PathStep};
use icps_core::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingRecord {
    pub pairs: Vec<(String, String)>,
    pub unmatched: Vec<String>,
}

impl MatchingRecord {
    pub fn new<S: Scalar>(market: &Market<S>, matching: &Matching) -> Self {
        let (uf, uw) = matching.unmatched();
        let unmatched = uf
            .into_iter()
            .map(|f| market.firms()[f].name.clone())
            .chain(uw.into_iter().map(|w| market.workers()[w].name.clone()))
            .collect();
        Self {
            pairs: matching.named_pairs(market),
            unmatched,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllocationRecord {
    pub matching: MatchingRecord,
    pub payoffs: BTreeMap<String, String>,
    pub total: String,
}

impl AllocationRecord {
    pub fn new<S: Scalar>(market: &Market<S>, alloc: &Allocation<S>) -> Self {
        let payoffs = market
            .firms()
            .iter()
            .zip(alloc.firm_payoffs())
            .chain(market.workers().iter().zip(alloc.worker_payoffs()))
            .map(|(a, u)| (a.name.clone(), u.render()))
            .collect();
        Self {
            matching: MatchingRecord::new(market, alloc.matching()),
            payoffs,
            total: alloc.total_payoff().render(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub firm: String,
    pub worker: String,
    pub concept: String,
    pub instrument: String,
    pub status_quo: String,
    pub deviation_value: String,
    pub gain: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ntu: Option<NtuRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NtuRecord {
    pub firm_status_quo: String,
    pub worker_status_quo: String,
    pub firm_value: String,
    pub worker_value: String,
}

impl CertificateRecord {
    pub fn new<S: Scalar>(market: &Market<S>, cert: &BlockingCertificate<S>) -> Self {
        Self {
            firm: market.firms()[cert.firm].name.clone(),
            worker: market.workers()[cert.worker].name.clone(),
            concept: cert.concept.to_string(),
            instrument: cert.instrument.describe(),
            status_quo: cert.status_quo.render(),
            deviation_value: cert.deviation_value.render(),
            gain: cert.gain.render(),
            ntu: cert.ntu.as_ref().map(|n| NtuRecord {
                firm_status_quo: n.firm_status_quo.render(),
                worker_status_quo: n.worker_status_quo.render(),
                firm_value: n.firm_value.render(),
                worker_value: n.worker_value.render(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableSetRecord {
    pub concept: String,
    pub count: usize,
    pub considered: usize,
    pub welfare_min: Option<String>,
    pub welfare_max: Option<String>,
    pub members: Vec<MemberRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberRecord {
    pub welfare: String,
    pub witness: AllocationRecord,
}

impl StableSetRecord {
    pub fn new<S: Scalar>(market: &Market<S>, report: &StableSetReport<S>) -> Self {
        let range = report.welfare_range();
        Self {
            concept: report.concept.to_string(),
            count: report.count(),
            considered: report.considered,
            welfare_min: range.as_ref().map(|r| r.0.render()),
            welfare_max: range.as_ref().map(|r| r.1.render()),
            members: report
                .members
                .iter()
                .map(|m| MemberRecord {
                    welfare: m.welfare.render(),
                    witness: AllocationRecord::new(market, &m.witness),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub allocation: AllocationRecord,
    pub certificate: Option<CertificateRecord>,
    pub payoff_total: String,
    pub ledger_welfare: String,
}

impl StepRecord {
    pub fn new<S: Scalar>(market: &Market<S>, step: &PathStep<S>) -> Self {
        Self {
            allocation: AllocationRecord::new(market, &step.allocation),
            certificate: step.certificate.as_ref().map(|c| CertificateRecord::new(market, c)),
            payoff_total: step.payoff_total.render(),
            ledger_welfare: step.ledger_welfare.render(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub concept: String,
    pub start: AllocationRecord,
    pub steps: Vec<StepRecord>,
    /// Set when the path was cut off.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveRecord {
    pub mode: String,
    pub stable_sets: Vec<StableSetRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement: Option<RefinementMagnitude>,
    pub max_welfare: WelfareMatchingRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WelfareMatchingRecord {
    pub matching: MatchingRecord,
    pub welfare: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub concept: String,
    pub allocation: AllocationRecord,
    pub individually_rational: bool,
    pub blocking: Option<CertificateRecord>,
    pub stable: bool,
}
