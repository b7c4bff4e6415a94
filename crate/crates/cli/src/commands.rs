//! Subcommand bodies, generic over the number type.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use icps_core::market::{self, Matching};
use icps_core::solver;
use icps_core::stability::{self, Allocation, Concept, DeviationRule};
use icps_core::{Error, Scalar};

use crate::grid::{self, SurfaceSpec, SweepSpec};
use crate::props::{self, PropReport};
use crate::report::{
    AllocationRecord, CertificateRecord, CheckRecord, MatchingRecord, SolveRecord, StableSetRecord, StepRecord,
    TraceRecord, WelfareMatchingRecord,
};
use crate::scenario::{Overrides, Scenario, ScenarioConfig};

pub fn check<S: Scalar>(sc: &Scenario<S>) -> anyhow::Result<Vec<CheckRecord>> {
    let alloc = sc.allocation.as_ref().context("`check` needs an `allocation` in the scenario")?;
    let market = &sc.market;
    sc.concepts
        .iter()
        .map(|&concept| {
            let blocking = if concept == Concept::Ntu {
                stability::find_ntu_blocking_pair(market, alloc.matching(), sc.ntu()?, &sc.menu)?
            } else {
                stability::find_blocking_pair(market, alloc, &sc.rule(concept)?)?
            };
            let ir = stability::check_individual_rationality(alloc);
            Ok(CheckRecord {
                concept: concept.to_string(),
                allocation: AllocationRecord::new(market, alloc),
                individually_rational: ir,
                stable: ir && blocking.is_none(),
                blocking: blocking.as_ref().map(|c| CertificateRecord::new(market, c)),
            })
        })
        .collect()
}

pub fn solve<S: Scalar>(sc: &Scenario<S>) -> anyhow::Result<SolveRecord> {
    let market = &sc.market;
    let mut stable_sets = Vec::new();
    for &concept in &sc.concepts {
        let report = if concept == Concept::Ntu {
            solver::ntu_stable_matchings(market, sc.ntu()?, &sc.menu)?
        } else {
            solver::stable_matchings_with(market, &sc.rule(concept)?, sc.standing)?
        };
        stable_sets.push(StableSetRecord::new(market, &report));
    }
    let refinement = match solver::refinement_magnitude(market, &sc.menu, sc.protocol.as_ref()) {
        Ok(r) => Some(r),
        Err(e @ Error::InclusionViolated(_)) => return Err(e.into()),
        Err(_) => None,
    };
    let (best, welfare) = solver::max_welfare_matching(market, None)?;
    Ok(SolveRecord {
        mode: match market.mode() {
            market::Mode::ExAnte => "ex-ante",
            market::Mode::Realized => "realized",
        }
        .to_string(),
        stable_sets,
        refinement,
        max_welfare: WelfareMatchingRecord {
            matching: MatchingRecord::new(market, &best),
            welfare: welfare.render(),
        },
    })
}

/// The concept used for improvement paths: the first non-Bayesian TU concept.
fn dynamics_concept(concepts: &[Concept]) -> Concept {
    concepts
        .iter()
        .copied()
        .find(|c| !matches!(c, Concept::Bayes | Concept::Ntu))
        .unwrap_or(Concept::Icps)
}

/// Paths from the scenario allocation, or from every Bayes-stable witness.
pub fn dynamics<S: Scalar>(sc: &Scenario<S>) -> anyhow::Result<Vec<TraceRecord>> {
    let market = &sc.market;
    let concept = dynamics_concept(&sc.concepts);
    let rule = sc.rule(concept)?;
    let starts: Vec<Allocation<S>> = match &sc.allocation {
        Some(a) => vec![a.clone()],
        None => solver::stable_matchings(market, &DeviationRule::bayes())?
            .members
            .into_iter()
            .map(|m| m.witness)
            .collect(),
    };
    starts
        .iter()
        .map(|start| {
            let (steps, error) = match stability::improvement_path(market, start, &rule) {
                Ok(trace) => (trace.iter().map(|s| StepRecord::new(market, s)).collect(), None),
                Err(e @ Error::PathDidNotTerminate(_)) => (Vec::new(), Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            Ok(TraceRecord {
                concept: concept.to_string(),
                start: AllocationRecord::new(market, start),
                steps,
                error,
            })
        })
        .collect()
}

/// For every matching at its equal split, the first blocking certificate
/// under each concept.
pub fn certificates<S: Scalar>(sc: &Scenario<S>) -> anyhow::Result<Vec<MatchingCertificates>> {
    let market = &sc.market;
    market::enumerate_matchings(market)?
        .into_iter()
        .map(|mu: Matching| {
            let alloc = Allocation::equal_split(market, mu.clone())?;
            let mut blocks = Vec::new();
            for &concept in &sc.concepts {
                let cert = if concept == Concept::Ntu {
                    stability::find_ntu_blocking_pair(market, &mu, sc.ntu()?, &sc.menu)?
                } else {
                    stability::find_blocking_pair(market, &alloc, &sc.rule(concept)?)?
                };
                blocks.push(ConceptCertificate {
                    concept: concept.to_string(),
                    certificate: cert.as_ref().map(|c| CertificateRecord::new(market, c)),
                });
            }
            Ok(MatchingCertificates {
                allocation: AllocationRecord::new(market, &alloc),
                blocks,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCertificates {
    pub allocation: AllocationRecord,
    pub blocks: Vec<ConceptCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptCertificate {
    pub concept: String,
    pub certificate: Option<CertificateRecord>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes the stability report, certificates, improvement traces and the
/// property summary into `out`. Returns the property report.
pub fn run_scenario<S: Scalar>(cfg: &ScenarioConfig, overrides: &Overrides, out: &Path) -> anyhow::Result<PropReport> {
    let sc: Scenario<S> = cfg.prepare(overrides)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    write_json(&out.join("stable_sets.json"), &solve(&sc)?)?;
    write_json(&out.join("certificates.json"), &certificates(&sc)?)?;
    write_json(&out.join("traces.json"), &dynamics(&sc)?)?;
    if sc.allocation.is_some() {
        write_json(&out.join("check.json"), &check(&sc)?)?;
    }
    let report = props::run_props(&sc, cfg.seed(overrides).unwrap_or(0), cfg.suite_size);
    fs::write(out.join("summary.txt"), report.to_string())?;
    write_json(&out.join("summary.json"), &report)?;
    Ok(report)
}

pub fn sweep<S: Scalar>(spec: &SweepSpec, out: &Path) -> anyhow::Result<Vec<String>> {
    fs::create_dir_all(out)?;
    let rows = grid::sweep::<S>(spec);
    let notes = rows.as_ref().map(|r| grid::sweep_notes(r)).unwrap_or_default();
    grid::emit_csv(&out.join("sweep.csv"), rows)?;
    fs::write(out.join("sweep_notes.txt"), notes.join("\n") + "\n")?;
    Ok(notes)
}

pub fn surface<S: Scalar>(spec: &SurfaceSpec, out: &Path) -> anyhow::Result<usize> {
    fs::create_dir_all(out)?;
    grid::emit_csv(&out.join("surface.csv"), grid::surface_grid::<S>(spec))
}
