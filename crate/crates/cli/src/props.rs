//! Property checks: each line is a hard check (pass/fail) or a measured
//! quantity that is only reported.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use icps_core::info::{self, SequentialProtocol, Test, TestMenu};
use icps_core::market::{self, Market, Matching, Mode};
use icps_core::num::{self, Exact};
use icps_core::solver::{self, StandingValue};
use icps_core::stability::{self, Concept, DeviationRule, NtuProfile, NtuUtilityTable};
use icps_core::{Error, Scalar};

use crate::generate::{generate_market, GenerateSpec};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropCheck {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl PropCheck {
    fn hard(id: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn reported(id: &str, detail: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            status: Status::Reported,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for PropCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8} {:<22} {}", self.status, self.id, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropReport {
    pub checks: Vec<PropCheck>,
}

impl PropReport {
    pub fn all_hard_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for PropReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Random market families used by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    /// Up to 3x3; even seeds ex-ante, odd seeds realized.
    Mixed,
    /// 2x2; even seeds ex-ante, odd seeds realized.
    Pairs,
    /// Up to 4x4 realized, distinct types, strictly supermodular positive surplus.
    Sorted,
}

pub fn suite_spec(kind: SuiteKind, seed: u64) -> GenerateSpec {
    match kind {
        SuiteKind::Mixed => {
            let mode = if seed % 2 == 0 { Mode::ExAnte } else { Mode::Realized };
            GenerateSpec::default().with_mode(mode)
        }
        SuiteKind::Pairs => {
            let mode = if seed % 2 == 0 { Mode::ExAnte } else { Mode::Realized };
            GenerateSpec::sized(2, 2).with_mode(mode)
        }
        SuiteKind::Sorted => GenerateSpec {
            min_firms: 1,
            max_firms: 4,
            min_workers: 1,
            max_workers: 4,
            distinct_types: true,
            supermodular: true,
            positive: true,
            ..GenerateSpec::default().with_mode(Mode::Realized)
        },
    }
}

pub fn suite_market(kind: SuiteKind, seed: u64) -> Market<Exact> {
    generate_market(seed, &suite_spec(kind, seed))
        .expect("suite specs are valid")
        .build()
        .expect("generated markets are valid")
}

/// One or two tests with accuracies in quarters and small costs.
pub fn suite_menu(seed: u64) -> TestMenu<Exact> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d65_6e75);
    let k = rng.gen_range(1..=2);
    TestMenu::new((0..k).map(|_| {
        let pi = Exact::ratio(rng.gen_range(1..=4), 4);
        let c = Exact::ratio(rng.gen_range(0..=10), 10);
        Test::new(pi, c).expect("valid test")
    }))
}

/// Two stages: accuracy `a/4` then 1, stage costs in twentieths.
pub fn suite_protocol(seed: u64) -> SequentialProtocol<Exact> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7365_7175);
    let a = rng.gen_range(1..=3);
    let c1 = Exact::ratio(rng.gen_range(1..=6), 20);
    let c2 = Exact::ratio(rng.gen_range(1..=6), 20);
    SequentialProtocol::new(vec![(Exact::ratio(a, 4), c1), (Exact::one(), c2)]).expect("valid protocol")
}

pub fn perfect_menu<S: Scalar>() -> TestMenu<S> {
    TestMenu::new([Test::new(S::one(), S::zero()).expect("perfect test")])
}

/// Matchings maximizing realized welfare, by brute force.
pub fn complete_information_set<S: Scalar>(market: &Market<S>) -> icps_core::Result<BTreeSet<Matching>> {
    let all = market::enumerate_matchings(market)?;
    let welfare: Vec<S> = all
        .iter()
        .map(|mu| market::expected_welfare(market, mu, None))
        .collect::<icps_core::Result<_>>()?;
    let best = welfare.iter().cloned().fold(S::zero(), num::max);
    Ok(all
        .into_iter()
        .zip(welfare)
        .filter(|(_, w)| num::approx_eq(w, &best))
        .map(|(mu, _)| mu)
        .collect())
}

fn set_of<S: Scalar>(market: &Market<S>, rule: &DeviationRule<S>) -> icps_core::Result<BTreeSet<Matching>> {
    Ok(solver::stable_matchings(market, rule)?.matchings())
}

struct Tally {
    id: &'static str,
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(id: &'static str) -> Self {
        Self {
            id,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, what: &str) -> PropCheck {
        let detail = if self.failures.is_empty() {
            format!("{what}: {} instances, 0 violations", self.total)
        } else {
            format!(
                "{what}: {} of {} instances violate; first: {}",
                self.failures.len(),
                self.total,
                self.failures[0]
            )
        };
        PropCheck::hard(self.id, self.failures.is_empty(), detail)
    }
}

/// Checks on the scenario's own market.
pub fn scenario_checks<S: Scalar>(sc: &Scenario<S>) -> Vec<PropCheck> {
    let mut out = Vec::new();
    let market = &sc.market;

    match solver::refinement_magnitude(market, &sc.menu, sc.protocol.as_ref()) {
        Ok(r) => out.push(PropCheck::hard(
            "refinement-chain",
            true,
            format!(
                "|Bayes|={} |ICPS|={} |Endog|={} |Seq|={} of {} matchings; Bayes minus ICPS = {}",
                r.bayes,
                r.icps,
                r.endog,
                r.seq.map_or("-".into(), |s| s.to_string()),
                r.all,
                r.bayes_minus_icps
            ),
        )),
        Err(e @ Error::InclusionViolated(_)) => out.push(PropCheck::hard("refinement-chain", false, e.to_string())),
        Err(e) => out.push(PropCheck::hard("refinement-chain", false, format!("could not evaluate: {e}"))),
    }

    let null = (|| -> icps_core::Result<bool> {
        let icps = set_of(market, &DeviationRule::with_menu(Concept::Icps, TestMenu::null_only()))?;
        Ok(icps == set_of(market, &DeviationRule::bayes())?)
    })();
    out.push(match null {
        Ok(ok) => PropCheck::hard("null-menu", ok, if ok { "ICPS = Bayesian under menu {null}" } else { "ICPS differs from Bayesian under menu {null}" }),
        Err(e) => PropCheck::hard("null-menu", false, e.to_string()),
    });

    if market.mode() == Mode::Realized {
        let r = (|| -> icps_core::Result<bool> {
            Ok(set_of(market, &DeviationRule::with_menu(Concept::Icps, perfect_menu()))? == complete_information_set(market)?)
        })();
        out.push(match r {
            Ok(ok) => PropCheck::hard(
                "perfect-information",
                ok,
                if ok { "ICPS = complete-information under menu {(1,0)}" } else { "ICPS differs from complete-information stability" },
            ),
            Err(e) => PropCheck::hard("perfect-information", false, e.to_string()),
        });
    }

    out.push(accept_iff_check(market));
    out.push(decomposition_check(market));
    out.extend(existence_check(sc));
    out.extend(dynamics_check(sc));
    if market.distinct_types() {
        out.extend(uniqueness_checks(sc));
    }
    if let Some(ntu) = &sc.ntu {
        out.push(ntu_scenario_check(market, ntu, &sc.menu));
    }
    if let Some(p) = &sc.protocol {
        out.push(sequential_dominance_check(market, p));
    }
    out
}

/// A free perfect test blocks at Π exactly when `P(S > Π) > 0`, and the
/// deviation value then is `Π + E[(S-Π)+]`.
fn accept_iff_check<S: Scalar>(market: &Market<S>) -> PropCheck {
    let perfect = Test::new(S::one(), S::zero()).expect("perfect test");
    let mut tally = Tally::new("accept-iff");
    let (n, m) = market.size();
    for f in 0..n {
        for w in 0..m {
            let Ok(dist) = market.pair_surplus_distribution(f, w) else { continue };
            let mut probes: Vec<S> = dist.atoms().iter().map(|a| a.0.clone()).collect();
            probes.extend([S::zero(), dist.mean().clone(), dist.max_value().clone() + S::one()]);
            for pi in probes {
                let q = info::deviation_value(&dist, &perfect, &pi);
                let expect = pi.clone() + info::option_value(&dist, &pi);
                let blocks = num::gt(&q.gain, &S::zero());
                let upside = num::gt(&dist.prob_above(&pi), &S::zero());
                tally.record(blocks == upside && num::approx_eq(&q.value, &expect), || {
                    format!("pair ({f},{w}) at {}", pi.render())
                });
            }
        }
    }
    tally.finish("perfect test blocks iff P(S > status quo) > 0")
}

/// Threshold acceptance sets satisfy `E[S·1_A] >= E[S]·P(A)` on every pair.
fn decomposition_check<S: Scalar>(market: &Market<S>) -> PropCheck {
    let mut tally = Tally::new("decomposition");
    let mut non_threshold = 0usize;
    let (n, m) = market.size();
    for f in 0..n {
        for w in 0..m {
            let Ok(dist) = market.pair_surplus_distribution(f, w) else { continue };
            let atoms = dist.atoms();
            if atoms.len() > 12 {
                continue;
            }
            let mean = dist.mean().clone();
            for mask in 0u32..(1 << atoms.len()) {
                let accept: Vec<bool> = (0..atoms.len()).map(|i| mask & (1 << i) != 0).collect();
                let (es, pa) = info::acceptance_moments(atoms, &accept);
                let holds = num::ge(&es, &(mean.clone() * pa));
                if info::is_threshold_rule(atoms, &accept) {
                    tally.record(holds, || format!("pair ({f},{w}) mask {mask:b}"));
                } else if !holds {
                    non_threshold += 1;
                }
            }
        }
    }
    let mut check = tally.finish("threshold rules never lower conditional surplus");
    check.detail.push_str(&format!("; {non_threshold} non-threshold sets fall below the mean"));
    check
}

fn existence_check<S: Scalar>(sc: &Scenario<S>) -> Vec<PropCheck> {
    let market = &sc.market;
    let mut out = Vec::new();
    let Ok(rule) = sc.rule(Concept::Icps) else { return out };
    let eval = |standing| -> icps_core::Result<bool> {
        let (mu, _) = solver::max_welfare_matching(market, None)?;
        let thresholds = rule.thresholds(market)?;
        let values = solver::pair_values(market, &rule, standing)?;
        Ok(stability::supporting_payoffs(&mu, &values, &thresholds).is_some())
    };
    match (eval(StandingValue::Prior), eval(StandingValue::Tested)) {
        (Ok(prior), Ok(tested)) => {
            if market.mode() == Mode::Realized {
                out.push(PropCheck::hard(
                    "existence",
                    prior,
                    "welfare-maximizing matching has ICPS supporting payoffs",
                ));
            } else {
                out.push(PropCheck::reported(
                    "existence",
                    format!(
                        "ex-ante: welfare-maximizing matching supported = {prior} (standing value prior), {tested} (standing value tested)"
                    ),
                ));
            }
        }
        (Err(e), _) | (_, Err(e)) => out.push(PropCheck::hard("existence", false, e.to_string())),
    }
    out
}

fn dynamics_check<S: Scalar>(sc: &Scenario<S>) -> Vec<PropCheck> {
    let market = &sc.market;
    let Ok(rule) = sc.rule(Concept::Icps) else { return vec![] };
    let Ok(bayes) = solver::stable_matchings(market, &DeviationRule::bayes()) else { return vec![] };
    let icps_empty = solver::stable_matchings(market, &rule).map_or(false, |r| r.is_empty());
    let mut tally = Tally::new("welfare-improvement");
    let mut cut = 0usize;
    let mut longest = 0usize;
    for member in &bayes.members {
        match stability::improvement_path(market, &member.witness, &rule) {
            Ok(trace) => {
                longest = longest.max(trace.len() - 1);
                let increasing = trace.windows(2).all(|w| num::gt(&w[1].ledger_welfare, &w[0].ledger_welfare));
                let terminal = stability::find_blocking_pair(market, &trace.last().expect("nonempty").allocation, &rule)
                    .map(|c| c.is_none())
                    .unwrap_or(false);
                tally.record(increasing && terminal, || member.matching.describe(market));
            }
            Err(Error::PathDidNotTerminate(_)) if icps_empty => cut += 1,
            Err(e) => tally.record(false, || e.to_string()),
        }
    }
    let mut check = tally.finish("improvement paths from Bayes-stable allocations");
    check.detail.push_str(&format!("; longest path {longest} steps"));
    let mut out = vec![check];
    if cut > 0 {
        out.push(PropCheck::reported(
            "welfare-improvement",
            format!("{cut} paths hit the step cap (the ICPS set is empty, so no endpoint exists)"),
        ));
    }
    out
}

fn uniqueness_checks<S: Scalar>(sc: &Scenario<S>) -> Vec<PropCheck> {
    let market = &sc.market;
    let mut out = Vec::new();
    match solver::uniqueness_report(market, &sc.menu) {
        Ok(r) if r.power_condition && market.mode() == Mode::Realized && market.surplus().is_supermodular() => {
            out.push(PropCheck::hard(
                "uniqueness",
                r.unique && r.matches_assortative,
                format!("|ICPS| = {}, assortative = {}", r.stable_count, r.matches_assortative),
            ));
        }
        Ok(r) => out.push(PropCheck::reported(
            "uniqueness",
            format!(
                "preconditions not all met (power test {}, supermodular {}); |ICPS| = {}, assortative = {}",
                r.power_condition,
                market.surplus().is_supermodular(),
                r.stable_count,
                r.matches_assortative
            ),
        )),
        Err(e) => out.push(PropCheck::hard("uniqueness", false, e.to_string())),
    }
    if let Ok(rule) = sc.rule(Concept::Endog) {
        if let Ok(report) = solver::stable_matchings(market, &rule) {
            if let Ok(lw) = solver::lone_wolf_report(&report) {
                out.push(match lw.witness {
                    None => PropCheck::hard("lone-wolf", lw.holds, "unmatched set constant across the ICPS set"),
                    Some((a, b)) => PropCheck::reported(
                        "lone-wolf",
                        format!("counter-witness: {} vs {}", a.describe(market), b.describe(market)),
                    ),
                });
            }
        }
    }
    out
}

/// NTU-ICPS set inside the Bayesian NTU set, and instances where testing
/// would raise joint utility but no NTU block forms.
fn ntu_scenario_check<S: Scalar>(market: &Market<S>, ntu: &NtuUtilityTable<S>, menu: &TestMenu<S>) -> PropCheck {
    let r = (|| -> icps_core::Result<(BTreeSet<Matching>, BTreeSet<Matching>)> {
        Ok((
            solver::ntu_stable_matchings(market, ntu, menu)?.matchings(),
            solver::ntu_stable_matchings(market, ntu, &TestMenu::null_only())?.matchings(),
        ))
    })();
    match r {
        Ok((icps, bayes)) => PropCheck::hard(
            "ntu-refinement",
            icps.is_subset(&bayes),
            format!("|NTU-ICPS| = {}, |NTU-Bayes| = {}", icps.len(), bayes.len()),
        ),
        Err(e) => PropCheck::hard("ntu-refinement", false, e.to_string()),
    }
}

fn sequential_dominance_check<S: Scalar>(market: &Market<S>, protocol: &SequentialProtocol<S>) -> PropCheck {
    let mut tally = Tally::new("seq-dominance");
    let (n, m) = market.size();
    for f in 0..n {
        for w in 0..m {
            let Ok(dist) = market.pair_surplus_distribution(f, w) else { continue };
            for pi in [S::zero(), dist.mean().clone(), dist.max_value().clone()] {
                let seq = info::sequential_value(&dist, protocol, &pi).value;
                for t in protocol.collapsed_tests() {
                    let one = info::deviation_value(&dist, &t, &pi).value;
                    tally.record(num::ge(&seq, &one), || format!("pair ({f},{w}) at {}", pi.render()));
                }
            }
        }
    }
    tally.finish("sequential value >= every collapsed one-shot value")
}

/// The fixed NTU example: status quo (4,4), profiles (8,2) and (2,8) with
/// probability 1/2 each, a free perfect test.
pub fn ntu_example_check() -> PropCheck {
    let q = Exact::ratio;
    let profiles = vec![
        NtuProfile {
            prob: q(1, 2),
            firm_utility: q(8, 1),
            worker_utility: q(2, 1),
        },
        NtuProfile {
            prob: q(1, 2),
            firm_utility: q(2, 1),
            worker_utility: q(8, 1),
        },
    ];
    let sq = q(4, 1);
    let perfect = Test::new(Exact::one(), Exact::zero()).expect("perfect test");
    let (vf, vw) = stability::ntu_deviation(&profiles, &sq, &sq, &perfect, &q(1, 2)).expect("feasible");
    let blocks = vf > sq && vw > sq;
    let joint_after = num::sum(profiles.iter().map(|p| p.prob.clone() * (p.firm_utility.clone() + p.worker_utility.clone())));
    let joint_before = sq.clone() + sq.clone();
    let (pf, pw) = stability::ntu_deviation(&profiles, &sq, &sq, &Test::null(), &q(1, 2)).expect("feasible");
    let ok = !blocks && joint_after == q(10, 1) && joint_before == q(8, 1);
    PropCheck::hard(
        "ntu-example",
        ok,
        format!(
            "stable despite surplus {} > {} (perfect test payoffs {}/{}; untested prior payoffs {}/{})",
            joint_after.render(),
            joint_before.render(),
            vf.render(),
            vw.render(),
            pf.render(),
            pw.render()
        ),
    )
}

/// `{null, (9/10, 9Δ/20)}`: accuracy times power exceeds cost by half.
pub fn power_menu(market: &Market<Exact>) -> TestMenu<Exact> {
    let delta = market::test_power_delta(market.surplus()).unwrap_or_else(Exact::one);
    let pi = Exact::ratio(9, 10);
    let c = pi.clone() * delta / Exact::from_int(2);
    TestMenu::new([Test::new(pi, c).expect("valid test")])
}

/// Hard checks over seeded random markets.
pub fn suite_checks(seed: u64, size: usize) -> Vec<PropCheck> {
    let seeds = |salt: u64| (0..size as u64).map(move |i| seed.wrapping_mul(1_000_003).wrapping_add(i) ^ salt);
    let mut out = Vec::new();

    let mut inclusion = Tally::new("suite-refinement");
    let mut null_menu = Tally::new("suite-null-menu");
    let mut perfect = Tally::new("suite-perfect-info");
    let mut existence = Tally::new("suite-existence");
    let mut exante_failures = 0usize;
    for s in seeds(0) {
        let market = suite_market(SuiteKind::Mixed, s);
        let menu = suite_menu(s);
        let protocol = suite_protocol(s);
        let r = solver::refinement_magnitude(&market, &menu, Some(&protocol));
        inclusion.record(r.is_ok(), || format!("seed {s}: {}", r.as_ref().err().map(|e| e.to_string()).unwrap_or_default()));
        let same = set_of(&market, &DeviationRule::with_menu(Concept::Icps, TestMenu::null_only())).ok()
            == set_of(&market, &DeviationRule::bayes()).ok();
        null_menu.record(same, || format!("seed {s}"));
        let rule = DeviationRule::with_menu(Concept::Icps, menu.clone());
        let supported = (|| -> icps_core::Result<bool> {
            let (mu, _) = solver::max_welfare_matching(&market, None)?;
            let values = solver::pair_values(&market, &rule, StandingValue::Prior)?;
            Ok(stability::supporting_payoffs(&mu, &values, &rule.thresholds(&market)?).is_some())
        })()
        .unwrap_or(false);
        if market.mode() == Mode::Realized {
            let ci = set_of(&market, &DeviationRule::with_menu(Concept::Icps, perfect_menu())).ok()
                == complete_information_set(&market).ok();
            perfect.record(ci, || format!("seed {s}"));
            existence.record(supported, || format!("seed {s}"));
        } else if !supported {
            exante_failures += 1;
        }
    }
    out.push(inclusion.finish("seq ⊆ endog ⊆ icps ⊆ bayes"));
    out.push(null_menu.finish("menu {null}: ICPS = Bayesian"));
    out.push(perfect.finish("menu {(1,0)}, realized: ICPS = complete-information"));
    out.push(existence.finish("realized: welfare maximizer is ICPS-supported"));
    out.push(PropCheck::reported(
        "suite-existence",
        format!("ex-ante markets without ICPS support for the welfare maximizer: {exante_failures}"),
    ));

    let mut sorting = Tally::new("suite-uniqueness");
    let mut lone = Tally::new("suite-lone-wolf");
    for s in seeds(1) {
        let market = suite_market(SuiteKind::Sorted, s);
        let menu = power_menu(&market);
        let r = solver::uniqueness_report(&market, &menu);
        sorting.record(
            matches!(&r, Ok(u) if u.power_condition && u.unique && u.matches_assortative),
            || format!("seed {s}"),
        );
        let holds = solver::stable_matchings(&market, &DeviationRule::with_menu(Concept::Icps, menu))
            .and_then(|rep| solver::lone_wolf_report(&rep))
            .map(|l| l.holds)
            .unwrap_or(false);
        lone.record(holds, || format!("seed {s}"));
    }
    out.push(sorting.finish("distinct supermodular realized markets: unique assortative ICPS set"));
    out.push(lone.finish("unmatched set constant across the ICPS set"));

    let mut paths = Tally::new("suite-dynamics");
    let mut longest = 0;
    let mut cut = 0usize;
    for s in seeds(2) {
        let market = suite_market(SuiteKind::Pairs, s);
        let Ok(rule) = solver::concept_rule(Concept::Icps, &suite_menu(s), None) else {
            paths.record(false, || format!("seed {s}: no rule"));
            continue;
        };
        let (Ok(bayes), Ok(icps)) = (
            solver::stable_matchings(&market, &DeviationRule::bayes()),
            solver::stable_matchings(&market, &rule),
        ) else {
            paths.record(false, || format!("seed {s}"));
            continue;
        };
        for member in &bayes.members {
            match stability::improvement_path(&market, &member.witness, &rule) {
                Ok(trace) => {
                    longest = longest.max(trace.len() - 1);
                    let ok = trace.len() <= 8
                        && trace.windows(2).all(|w| w[1].ledger_welfare > w[0].ledger_welfare)
                        && stability::find_blocking_pair(&market, &trace.last().expect("nonempty").allocation, &rule)
                            .is_ok_and(|c| c.is_none());
                    paths.record(ok, || format!("seed {s}"));
                }
                Err(Error::PathDidNotTerminate(_)) if icps.is_empty() => cut += 1,
                Err(e) => paths.record(false, || format!("seed {s}: {e}")),
            }
        }
    }
    let mut c = paths.finish("2x2 improvement paths reach an ICPS-stable allocation within 7 steps");
    c.detail.push_str(&format!("; longest {longest} steps"));
    out.push(c);
    out.push(PropCheck::reported(
        "suite-dynamics",
        format!("{cut} paths cut at the step cap in markets with an empty ICPS set"),
    ));
    out
}

/// The full report: fixed examples, scenario checks, then the random suites.
pub fn run_props<S: Scalar>(sc: &Scenario<S>, seed: u64, suite_size: usize) -> PropReport {
    let mut checks = vec![ntu_example_check()];
    checks.extend(scenario_checks(sc));
    checks.extend(suite_checks(seed, suite_size));
    PropReport { checks }
}
