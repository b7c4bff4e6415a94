//! Seeded random markets. Every number is a small rational written as a
//! string, so a generated document parses identically in exact and float
//! mode.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use icps_core::config::{AgentSpec, GradeSpec, GradesSpec, MarketSpec, NumSpec, SurplusSpec, TableSpec, TwoGradeSpec};
use icps_core::market::Mode;
use icps_core::{Exact, Scalar};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateSpec {
    #[serde(default = "one")]
    pub min_firms: usize,
    #[serde(default = "three")]
    pub max_firms: usize,
    #[serde(default = "one")]
    pub min_workers: usize,
    #[serde(default = "three")]
    pub max_workers: usize,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    /// Exclusive bounds on priors, in twentieths.
    #[serde(default = "prior_lo")]
    pub prior_min: NumSpec,
    #[serde(default = "prior_hi")]
    pub prior_max: NumSpec,
    #[serde(default = "zero")]
    pub rho: NumSpec,
    /// Largest surplus entry.
    #[serde(default = "surplus_max")]
    pub surplus_max: i64,
    /// Realized types pairwise distinct on each side (distinct priors in
    /// ex-ante mode).
    #[serde(default)]
    pub distinct_types: bool,
    /// Strictly supermodular surplus.
    #[serde(default)]
    pub supermodular: bool,
    /// Every surplus entry strictly positive.
    #[serde(default)]
    pub positive: bool,
}

fn one() -> usize {
    1
}
fn three() -> usize {
    3
}
fn default_mode() -> Mode {
    Mode::ExAnte
}
fn prior_lo() -> NumSpec {
    NumSpec::Int(0)
}
fn prior_hi() -> NumSpec {
    NumSpec::Int(1)
}
fn zero() -> NumSpec {
    NumSpec::Int(0)
}
fn surplus_max() -> i64 {
    12
}

impl Default for GenerateSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

impl GenerateSpec {
    pub fn sized(firms: usize, workers: usize) -> Self {
        Self {
            min_firms: firms,
            max_firms: firms,
            min_workers: workers,
            max_workers: workers,
            ..Self::default()
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    fn validate(&self) -> Result<(Exact, Exact, Exact), GenerateError> {
        let bad = |m: &str| Err(GenerateError::InvalidSpec(m.to_string()));
        if self.min_firms > self.max_firms || self.min_workers > self.max_workers {
            return bad("min size exceeds max size");
        }
        if self.surplus_max < 3 {
            return bad("surplus_max must be at least 3");
        }
        let num = |n: &NumSpec| n.to_scalar::<Exact>().map_err(|e| GenerateError::InvalidSpec(e.to_string()));
        let (lo, hi, rho) = (num(&self.prior_min)?, num(&self.prior_max)?, num(&self.rho)?);
        if lo < Exact::zero() || hi > Exact::one() || lo >= hi {
            return bad("prior range must satisfy 0 <= min < max <= 1");
        }
        if rho < -Exact::one() || rho > Exact::one() {
            return bad("rho outside [-1, 1]");
        }
        Ok((lo, hi, rho))
    }
}

fn text(x: &Exact) -> NumSpec {
    if x.is_integer() {
        NumSpec::Int(x.to_integer().try_into().expect("small integer"))
    } else {
        NumSpec::Text(x.to_string())
    }
}

/// Priors whose variance is a rational square, so any pair has an exact
/// correlated joint distribution: `a²/(a²+b²)`.
fn prior_grid(lo: &Exact, hi: &Exact, correlated: bool) -> Vec<Exact> {
    let mut grid: Vec<Exact> = if correlated {
        let mut g = Vec::new();
        for a in 1..=6i64 {
            for b in 1..=6i64 {
                if num_integer::gcd(a, b) == 1 {
                    g.push(Exact::ratio(a * a, a * a + b * b));
                }
            }
        }
        g
    } else {
        (1..20).map(|k| Exact::ratio(k, 20)).collect()
    };
    grid.retain(|p| p > lo && p < hi);
    grid.sort();
    grid.dedup();
    grid
}

struct TableDraw {
    grades: Option<GradesSpec>,
    surplus: SurplusSpec,
    firm_labels: Vec<String>,
    worker_labels: Vec<String>,
}

fn draw_table(rng: &mut ChaCha8Rng, spec: &GenerateSpec, grades: usize) -> TableDraw {
    let half = |k: i64| Exact::ratio(k, 2);
    let max2 = spec.surplus_max * 2;
    if grades == 2 {
        // α > β > γ >= 0 in halves, optionally α - β > β - γ.
        loop {
            let g = rng.gen_range(if spec.positive { 1 } else { 0 }..=max2 - 2);
            let b = rng.gen_range(g + 1..=max2 - 1);
            let a = rng.gen_range(b + 1..=max2);
            if spec.supermodular && a - b <= b - g {
                continue;
            }
            return TableDraw {
                grades: None,
                surplus: SurplusSpec::TwoGrade(TwoGradeSpec {
                    alpha: text(&half(a)),
                    beta: text(&half(b)),
                    gamma: text(&half(g)),
                }),
                firm_labels: vec!["L".into(), "H".into()],
                worker_labels: vec!["L".into(), "H".into()],
            };
        }
    }
    let labels: Vec<String> = (1..=grades).map(|k| format!("g{k}")).collect();
    let entries: Vec<Vec<Exact>> = if spec.supermodular {
        // Product of strictly increasing positive scores.
        let scores = |rng: &mut ChaCha8Rng| {
            let mut s = Vec::with_capacity(grades);
            let mut cur = 0i64;
            for _ in 0..grades {
                cur += rng.gen_range(1..=3);
                s.push(cur);
            }
            s
        };
        let (a, b) = (scores(rng), scores(rng));
        a.iter()
            .map(|x| b.iter().map(|y| Exact::from_int(x * y)).collect())
            .collect()
    } else {
        let mut t = vec![vec![Exact::zero(); grades]; grades];
        for x in 0..grades {
            for y in 0..grades {
                let base = match (x, y) {
                    (0, 0) => half(rng.gen_range(if spec.positive { 1 } else { 0 }..=4)),
                    (0, _) => t[0][y - 1].clone(),
                    (_, 0) => t[x - 1][0].clone(),
                    _ => std::cmp::max(t[x - 1][y].clone(), t[x][y - 1].clone()),
                };
                let step = if (x, y) == (0, 0) { Exact::zero() } else { half(rng.gen_range(1..=4)) };
                t[x][y] = base + step;
            }
        }
        t
    };
    let grade_specs: Vec<GradeSpec> = labels
        .iter()
        .enumerate()
        .map(|(k, l)| GradeSpec {
            label: l.clone(),
            value: NumSpec::Int(k as i64 + 1),
        })
        .collect();
    TableDraw {
        grades: Some(GradesSpec {
            firm: grade_specs.clone(),
            worker: grade_specs,
        }),
        surplus: SurplusSpec::Table(TableSpec {
            table: entries.iter().map(|r| r.iter().map(text).collect()).collect(),
        }),
        firm_labels: labels.clone(),
        worker_labels: labels,
    }
}

/// Deterministic market from `seed`: the same seed and spec give the same
/// document byte for byte.
pub fn generate_market(seed: u64, spec: &GenerateSpec) -> Result<MarketSpec, GenerateError> {
    let (lo, hi, rho) = spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(spec.min_firms..=spec.max_firms);
    let m = rng.gen_range(spec.min_workers..=spec.max_workers);

    let realized_distinct = spec.distinct_types && spec.mode == Mode::Realized;
    if spec.mode == Mode::ExAnte && spec.supermodular && spec.surplus_max < 4 {
        return Err(GenerateError::InvalidSpec("supermodular two-grade tables need surplus_max >= 4".into()));
    }
    let grades = if realized_distinct { n.max(m).max(2) } else { 2 };
    let table = draw_table(&mut rng, spec, grades);

    let grid = prior_grid(&lo, &hi, rho != Exact::zero());
    if grid.is_empty() || (spec.distinct_types && spec.mode == Mode::ExAnte && grid.len() < n.max(m)) {
        return Err(GenerateError::InvalidSpec("prior range too narrow".into()));
    }

    for _ in 0..200 {
        let priors = |rng: &mut ChaCha8Rng, k: usize| -> Vec<Exact> {
            if spec.distinct_types && spec.mode == Mode::ExAnte {
                grid.choose_multiple(rng, k).cloned().collect()
            } else {
                (0..k).map(|_| grid.choose(rng).expect("nonempty").clone()).collect()
            }
        };
        let fp = priors(&mut rng, n);
        let wp = priors(&mut rng, m);
        let types = |rng: &mut ChaCha8Rng, labels: &[String], ps: &[Exact]| -> Vec<String> {
            if realized_distinct {
                let mut idx: Vec<usize> = (0..labels.len()).collect();
                idx.shuffle(rng);
                idx.into_iter().take(ps.len()).map(|i| labels[i].clone()).collect()
            } else if labels.len() == 2 {
                // Draw the two-grade type from the prior, in twentieths or finer.
                ps.iter()
                    .map(|p| {
                        let u = Exact::ratio(rng.gen_range(0..10_000), 10_000);
                        labels[usize::from(u < *p)].clone()
                    })
                    .collect()
            } else {
                ps.iter().map(|_| labels.choose(rng).expect("nonempty").clone()).collect()
            }
        };
        let ft = types(&mut rng, &table.firm_labels, &fp);
        let wt = types(&mut rng, &table.worker_labels, &wp);
        let agents = |prefix: &str, ps: &[Exact], ts: Vec<String>| -> Vec<AgentSpec> {
            ps.iter()
                .zip(ts)
                .enumerate()
                .map(|(i, (p, t))| AgentSpec {
                    name: format!("{prefix}{}", i + 1),
                    prior: text(p),
                    grade: Some(t),
                })
                .collect()
        };
        let doc = MarketSpec {
            grades: table.grades.clone(),
            surplus: table.surplus.clone(),
            firms: agents("f", &fp, ft),
            workers: agents("w", &wp, wt),
            rho: text(&rho),
            mode: spec.mode,
            distinct_types: spec.distinct_types,
            cap: None,
        };
        if doc.build::<Exact>().is_ok() {
            return Ok(doc);
        }
    }
    Err(GenerateError::InvalidSpec("no feasible priors for this correlation".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use icps_core::market::Market;

    #[test]
    fn same_seed_same_document() {
        let spec = GenerateSpec::default();
        let a = serde_json::to_string(&generate_market(42, &spec).unwrap()).unwrap();
        let b = serde_json::to_string(&generate_market(42, &spec).unwrap()).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&generate_market(43, &spec).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn distinct_realized_types() {
        let spec = GenerateSpec {
            max_firms: 4,
            max_workers: 4,
            distinct_types: true,
            supermodular: true,
            positive: true,
            ..GenerateSpec::default().with_mode(Mode::Realized)
        };
        for seed in 0..50 {
            let m: Market<Exact> = generate_market(seed, &spec).unwrap().build().unwrap();
            for side in [icps_core::market::Side::Firm, icps_core::market::Side::Worker] {
                let mut keys = m.sort_keys(side).unwrap();
                let len = keys.len();
                keys.sort();
                keys.dedup();
                assert_eq!(keys.len(), len);
            }
            assert!(m.surplus().is_supermodular());
            assert!(*m.surplus().min_entry() > Exact::zero());
        }
    }

    #[test]
    fn priors_strictly_inside() {
        let spec = GenerateSpec::default();
        for seed in 0..50 {
            let m: Market<Exact> = generate_market(seed, &spec).unwrap().build().unwrap();
            for a in m.firms().iter().chain(m.workers()) {
                assert!(a.prior > Exact::zero() && a.prior < Exact::one());
            }
        }
    }

    #[test]
    fn correlated_markets_are_exact() {
        let spec = GenerateSpec {
            rho: NumSpec::Text("-1/2".into()),
            ..GenerateSpec::default()
        };
        for seed in 0..30 {
            generate_market(seed, &spec).unwrap().build::<Exact>().unwrap();
        }
    }

    #[test]
    fn invalid_specs() {
        let spec = GenerateSpec {
            min_firms: 3,
            max_firms: 2,
            ..GenerateSpec::default()
        };
        assert!(generate_market(0, &spec).is_err());
        let spec = GenerateSpec {
            prior_min: NumSpec::Text("1/2".into()),
            prior_max: NumSpec::Text("1/2".into()),
            ..GenerateSpec::default()
        };
        assert!(generate_market(0, &spec).is_err());
    }
}
