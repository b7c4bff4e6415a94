//! Correlation sweeps and the deviation-payoff surface, as CSV rows.

use std::fs;
use std::path::Path;

use anyhow::Context;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use icps_core::config::NumSpec;
use icps_core::info::{self, Test, TestMenu};
use icps_core::market::{Agent, Market, Mode, PairSurplusDistribution, SurplusTable};
use icps_core::solver::{self, StableSetReport};
use icps_core::stability::{Concept, DeviationRule};
use icps_core::Scalar;

fn int(n: i64) -> NumSpec {
    NumSpec::Int(n)
}

fn default_alpha() -> NumSpec {
    int(4)
}
fn default_beta() -> NumSpec {
    int(2)
}
fn default_gamma() -> NumSpec {
    int(1)
}
fn two() -> usize {
    2
}
fn half() -> Vec<NumSpec> {
    vec![NumSpec::Text("1/2".into())]
}
fn zero() -> NumSpec {
    int(0)
}
fn resolution() -> usize {
    101
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub p: Vec<NumSpec>,
    pub rho: Vec<NumSpec>,
    pub pi: Vec<NumSpec>,
    pub c: Vec<NumSpec>,
    #[serde(default = "two")]
    pub firms: usize,
    #[serde(default = "two")]
    pub workers: usize,
    #[serde(default = "default_alpha")]
    pub alpha: NumSpec,
    #[serde(default = "default_beta")]
    pub beta: NumSpec,
    #[serde(default = "default_gamma")]
    pub gamma: NumSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: String,
    pub rho: String,
    pub pi: String,
    pub c: String,
    pub bayes: usize,
    pub icps: usize,
    pub difference: usize,
    pub bayes_welfare_min: String,
    pub bayes_welfare_max: String,
    pub icps_welfare_min: String,
    pub icps_welfare_max: String,
    pub max_welfare: String,
}

/// A homogeneous ex-ante market: every agent has prior `p`, types correlated
/// within each pair by `rho`.
pub fn homogeneous_market<S: Scalar>(
    firms: usize,
    workers: usize,
    table: SurplusTable<S>,
    p: S,
    rho: S,
) -> icps_core::Result<Market<S>> {
    let side = |prefix: &str, k: usize| -> Vec<Agent<S>> {
        (1..=k).map(|i| Agent::new(format!("{prefix}{i}"), p.clone())).collect()
    };
    Market::new(side("f", firms), side("w", workers), table, rho, Mode::ExAnte, false)
}

fn range_text<S: Scalar>(r: &StableSetReport<S>) -> (String, String) {
    match r.welfare_range() {
        Some((lo, hi)) => (lo.render(), hi.render()),
        None => (String::new(), String::new()),
    }
}

/// One sweep cell: Bayesian and ICPS stable sets under menu `{null, (π, c)}`.
pub fn sweep_cell<S: Scalar>(spec: &SweepSpec, p: &S, rho: &S, pi: &S, c: &S) -> anyhow::Result<SweepRow> {
    let table = SurplusTable::<S>::two_grade(spec.alpha.to_scalar()?, spec.beta.to_scalar()?, spec.gamma.to_scalar()?)?;
    let market = homogeneous_market(spec.firms, spec.workers, table, p.clone(), rho.clone())?;
    let menu = TestMenu::new([Test::new(pi.clone(), c.clone())?]);
    let bayes = solver::stable_matchings(&market, &DeviationRule::bayes())?;
    let icps = solver::stable_matchings(&market, &DeviationRule::with_menu(Concept::Icps, menu))?;
    let (bmin, bmax) = range_text(&bayes);
    let (imin, imax) = range_text(&icps);
    let (_, best) = solver::max_welfare_matching(&market, None)?;
    Ok(SweepRow {
        p: p.render(),
        rho: rho.render(),
        pi: pi.render(),
        c: c.render(),
        bayes: bayes.count(),
        icps: icps.count(),
        difference: bayes.matchings().difference(&icps.matchings()).count(),
        bayes_welfare_min: bmin,
        bayes_welfare_max: bmax,
        icps_welfare_min: imin,
        icps_welfare_max: imax,
        max_welfare: best.render(),
    })
}

/// Rows in grid order (p, then ρ, then π, then c), whatever the execution
/// order.
pub fn sweep<S: Scalar>(spec: &SweepSpec) -> anyhow::Result<Vec<SweepRow>> {
    let conv = |v: &[NumSpec]| -> anyhow::Result<Vec<S>> { Ok(v.iter().map(NumSpec::to_scalar).collect::<Result<_, _>>()?) };
    let (ps, rhos, pis, cs) = (conv(&spec.p)?, conv(&spec.rho)?, conv(&spec.pi)?, conv(&spec.c)?);
    let mut cells = Vec::new();
    for p in &ps {
        for rho in &rhos {
            for pi in &pis {
                for c in &cs {
                    cells.push((p, rho, pi, c));
                }
            }
        }
    }
    cells
        .par_iter()
        .map(|&(p, rho, pi, c)| {
            sweep_cell(spec, p, rho, pi, c).with_context(|| {
                format!("sweep cell p={} rho={} pi={} c={}", p.render(), rho.render(), pi.render(), c.render())
            })
        })
        .collect()
}

/// Notes on how the difference column moves with ρ at each fixed (p, π, c):
/// weak-decrease violations and the value at the largest ρ.
pub fn sweep_notes(rows: &[SweepRow]) -> Vec<String> {
    let mut groups: Vec<(&str, &str, &str, Vec<&SweepRow>)> = Vec::new();
    for r in rows {
        match groups.iter_mut().find(|g| (g.0, g.1, g.2) == (r.p.as_str(), r.pi.as_str(), r.c.as_str())) {
            Some(g) => g.3.push(r),
            None => groups.push((&r.p, &r.pi, &r.c, vec![r])),
        }
    }
    let mut notes = Vec::new();
    for (p, pi, c, mut g) in groups {
        g.sort_by(|a, b| {
            let x: f64 = a.rho.parse().unwrap_or(f64::NAN);
            let y: f64 = b.rho.parse().unwrap_or(f64::NAN);
            x.total_cmp(&y)
        });
        let diffs: Vec<String> = g.iter().map(|r| format!("{}:{}", r.rho, r.difference)).collect();
        let monotone = g.windows(2).all(|w| w[1].difference <= w[0].difference);
        notes.push(format!(
            "p={p} pi={pi} c={c}: difference by rho [{}]; {}; at largest rho {}",
            diffs.join(" "),
            if monotone { "weakly decreasing in rho" } else { "NOT weakly decreasing in rho" },
            g.last().map(|r| r.difference).unwrap_or(0)
        ));
    }
    notes
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    #[serde(default = "half")]
    pub p: Vec<NumSpec>,
    #[serde(default = "zero")]
    pub rho: NumSpec,
    #[serde(default = "default_alpha")]
    pub alpha: NumSpec,
    #[serde(default = "default_beta")]
    pub beta: NumSpec,
    #[serde(default = "default_gamma")]
    pub gamma: NumSpec,
    #[serde(default = "zero")]
    pub pi_min: NumSpec,
    /// Defaults to `max S + 1`.
    #[serde(default)]
    pub pi_max: Option<NumSpec>,
    #[serde(default = "resolution")]
    pub resolution: usize,
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub p: String,
    #[serde(rename = "Pi")]
    pub pi: String,
    pub value: String,
    pub option_value: String,
}

/// Surplus distribution of a pair with common prior `p`.
pub fn pair_distribution<S: Scalar>(table: &SurplusTable<S>, p: &S, rho: &S) -> anyhow::Result<PairSurplusDistribution<S>> {
    let market = homogeneous_market(1, 1, table.clone(), p.clone(), rho.clone())?;
    Ok(market.pair_surplus_distribution(0, 0)?)
}

/// `Π + E[(S-Π)+]` over an even Π grid, per p slice.
pub fn surface_grid<S: Scalar>(spec: &SurfaceSpec) -> anyhow::Result<Vec<SurfaceRow>> {
    let table = SurplusTable::<S>::two_grade(spec.alpha.to_scalar()?, spec.beta.to_scalar()?, spec.gamma.to_scalar()?)?;
    let lo: S = spec.pi_min.to_scalar()?;
    let hi: S = match &spec.pi_max {
        Some(x) => x.to_scalar()?,
        None => table.max_entry().clone() + S::one(),
    };
    anyhow::ensure!(spec.resolution >= 2, "resolution must be at least 2");
    anyhow::ensure!(
        lo <= S::zero() && hi >= *table.max_entry(),
        "Pi range must cover [0, max S]"
    );
    let rho: S = spec.rho.to_scalar()?;
    let steps = S::from_int(spec.resolution as i64 - 1);
    let mut rows = Vec::with_capacity(spec.p.len() * spec.resolution);
    for p in &spec.p {
        let p: S = p.to_scalar()?;
        let dist = pair_distribution(&table, &p, &rho)?;
        for k in 0..spec.resolution {
            let pi = lo.clone() + (hi.clone() - lo.clone()) * S::from_int(k as i64) / steps.clone();
            let ov = info::option_value(&dist, &pi);
            rows.push(SurfaceRow {
                p: p.render(),
                pi: pi.render(),
                value: (pi.clone() + ov.clone()).render(),
                option_value: ov.render(),
            });
        }
    }
    Ok(rows)
}

/// Writes rows to `path` through a temporary file; nothing is left behind on
/// failure.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> anyhow::Result<()> {
    let tmp = path.with_extension("csv.partial");
    let result = (|| -> anyhow::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(&tmp)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        drop(w);
        fs::rename(&tmp, path)?;
        Ok(())
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.with_context(|| format!("writing {}", path.display()))
}

/// Computes rows and writes them; on a computation error no file is left.
pub fn emit_csv<T: Serialize>(path: &Path, rows: anyhow::Result<Vec<T>>) -> anyhow::Result<usize> {
    let rows = match rows {
        Ok(r) => r,
        Err(e) => {
            let _ = fs::remove_file(path);
            return Err(e);
        }
    };
    write_csv(path, &rows)?;
    Ok(rows.len())
}
