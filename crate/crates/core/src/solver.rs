//! Stable sets by exhaustive enumeration, optimal and assortative matchings,
//! and whole-market reports.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{SequentialProtocol, Test, TestMenu};
use crate::market::{self, Market, Matching, Side};
use crate::num::{self, Scalar};
use crate::stability::{self, Allocation, Concept, DeviationRule, NtuUtilityTable};

/// What a standing pair is worth to itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StandingValue {
    /// Expected surplus under the prior.
    #[default]
    Prior,
    /// The pair may also test its own match against the outside option 0.
    Tested,
}

/// Deviation rule a concept uses given the scenario's menu and protocol.
///
/// Without a protocol, `icps` uses the null test plus the first informative
/// menu test and `endog` the whole menu. With a protocol, `icps` uses its
/// full collapse and `endog` every prefix collapse.
pub fn concept_rule<S: Scalar>(
    concept: Concept,
    menu: &TestMenu<S>,
    protocol: Option<&SequentialProtocol<S>>,
) -> Result<DeviationRule<S>> {
    let rule = match (concept, protocol) {
        (Concept::Bayes, _) => DeviationRule::bayes(),
        (Concept::Icps, Some(p)) => DeviationRule::with_menu(Concept::Icps, TestMenu::new([p.full_collapse()])),
        (Concept::Icps, None) => DeviationRule::with_menu(Concept::Icps, TestMenu::new(menu.informative().take(1).cloned())),
        (Concept::Endog, Some(p)) => DeviationRule::with_menu(Concept::Endog, p.collapsed_menu()),
        (Concept::Endog, None) => DeviationRule::with_menu(Concept::Endog, menu.clone()),
        (Concept::Seq, Some(p)) => DeviationRule::sequential(p.clone()),
        (Concept::Seq, None) => return Err(Error::MissingProtocol("seq")),
        (Concept::Ntu, _) => return Err(Error::UnsupportedConcept("ntu")),
    };
    Ok(rule)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StableMember<S> {
    pub matching: Matching,
    pub witness: Allocation<S>,
    pub welfare: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StableSetReport<S> {
    pub concept: Concept,
    /// In enumeration order.
    pub members: Vec<StableMember<S>>,
    /// Number of matchings examined.
    pub considered: usize,
}

impl<S: Scalar> StableSetReport<S> {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, matching: &Matching) -> bool {
        self.members.iter().any(|m| &m.matching == matching)
    }

    pub fn matchings(&self) -> BTreeSet<Matching> {
        self.members.iter().map(|m| m.matching.clone()).collect()
    }

    /// `(min, max)` welfare over the set.
    pub fn welfare_range(&self) -> Option<(S, S)> {
        let mut it = self.members.iter().map(|m| m.welfare.clone());
        let first = it.next()?;
        Some(it.fold((first.clone(), first), |(lo, hi), w| {
            (num::min(lo, w.clone()), num::max(hi, w))
        }))
    }
}

/// Pair values `[firm][worker]` a standing match would split.
pub fn pair_values<S: Scalar>(market: &Market<S>, rule: &DeviationRule<S>, standing: StandingValue) -> Result<Vec<Vec<S>>> {
    let (n, m) = market.size();
    (0..n)
        .map(|f| {
            (0..m)
                .map(|w| {
                    let dist = market.pair_surplus_distribution(f, w)?;
                    let prior = dist.mean().clone();
                    match standing {
                        StandingValue::Prior => Ok(prior),
                        StandingValue::Tested => Ok(num::max(prior, rule.quote(&dist, f, w, &S::zero())?.value)),
                    }
                })
                .collect()
        })
        .collect()
}

/// Every matching that admits supporting payoffs under the rule's thresholds.
pub fn stable_matchings<S: Scalar>(market: &Market<S>, rule: &DeviationRule<S>) -> Result<StableSetReport<S>> {
    stable_matchings_with(market, rule, StandingValue::Prior)
}

pub fn stable_matchings_with<S: Scalar>(
    market: &Market<S>,
    rule: &DeviationRule<S>,
    standing: StandingValue,
) -> Result<StableSetReport<S>> {
    let all = market::enumerate_matchings(market)?;
    let thresholds = rule.thresholds(market)?;
    let values = pair_values(market, rule, standing)?;
    let members: Vec<StableMember<S>> = all
        .par_iter()
        .filter_map(|mu| {
            let witness = stability::supporting_payoffs(mu, &values, &thresholds)?;
            let welfare = witness.total_payoff();
            Some(StableMember {
                matching: mu.clone(),
                witness,
                welfare,
            })
        })
        .collect();
    Ok(StableSetReport {
        concept: rule.concept,
        members,
        considered: all.len(),
    })
}

/// NTU stable set: matchings with no NTU-blocking pair under `menu`; the
/// witness holds each agent's expected utility.
pub fn ntu_stable_matchings<S: Scalar>(
    market: &Market<S>,
    utilities: &NtuUtilityTable<S>,
    menu: &TestMenu<S>,
) -> Result<StableSetReport<S>> {
    utilities.validate_for(market)?;
    let all = market::enumerate_matchings(market)?;
    let checked: Vec<Option<StableMember<S>>> = all
        .par_iter()
        .map(|mu| {
            if stability::find_ntu_blocking_pair(market, mu, utilities, menu)?.is_some() {
                return Ok(None);
            }
            let (u, v) = stability::ntu_status_quo(market, mu, utilities)?;
            let witness = Allocation::new(mu.clone(), u, v)?;
            let welfare = witness.total_payoff();
            Ok(Some(StableMember {
                matching: mu.clone(),
                witness,
                welfare,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(StableSetReport {
        concept: Concept::Ntu,
        members: checked.into_iter().flatten().collect(),
        considered: all.len(),
    })
}

/// Welfare-maximizing matching (optionally net of a per-pair test cost);
/// ties go to the first matching in enumeration order.
pub fn max_welfare_matching<S: Scalar>(market: &Market<S>, menu_cost: Option<&S>) -> Result<(Matching, S)> {
    let mut best: Option<(Matching, S)> = None;
    for mu in market::enumerate_matchings(market)? {
        let w = market::expected_welfare(market, &mu, menu_cost)?;
        let better = match &best {
            None => true,
            Some((_, b)) => num::gt(&w, b),
        };
        if better {
            best = Some((mu, w));
        }
    }
    Ok(best.expect("the empty matching is always enumerated"))
}

/// Rank-to-rank pairing by descending sort key; ties keep input order.
pub fn assortative_matching<S: Scalar>(market: &Market<S>) -> Result<Matching> {
    let order = |side: Side| -> Result<Vec<usize>> {
        let keys = market.sort_keys(side)?;
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[b].partial_cmp(&keys[a]).expect("comparable keys"));
        Ok(idx)
    };
    let firms = order(Side::Firm)?;
    let workers = order(Side::Worker)?;
    let pairs: Vec<(usize, usize)> = firms.into_iter().zip(workers).collect();
    let (n, m) = market.size();
    Matching::from_pairs(n, m, &pairs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementMagnitude {
    pub all: usize,
    pub bayes: usize,
    pub icps: usize,
    pub endog: usize,
    pub seq: Option<usize>,
    pub bayes_minus_icps: usize,
    pub icps_minus_endog: usize,
    pub endog_minus_seq: Option<usize>,
}

/// Stable-set sizes per concept and their differences. Fails with
/// `InclusionViolated` if `seq ⊆ endog ⊆ icps ⊆ bayes` does not hold.
pub fn refinement_magnitude<S: Scalar>(
    market: &Market<S>,
    menu: &TestMenu<S>,
    protocol: Option<&SequentialProtocol<S>>,
) -> Result<RefinementMagnitude> {
    let set = |c: Concept| -> Result<StableSetReport<S>> { stable_matchings(market, &concept_rule(c, menu, protocol)?) };
    let bayes = set(Concept::Bayes)?;
    let icps = set(Concept::Icps)?;
    let endog = set(Concept::Endog)?;
    let seq = protocol.map(|_| set(Concept::Seq)).transpose()?;

    let check = |inner: &StableSetReport<S>, outer: &StableSetReport<S>| -> Result<usize> {
        let (a, b) = (inner.matchings(), outer.matchings());
        if let Some(extra) = a.difference(&b).next() {
            return Err(Error::InclusionViolated(format!(
                "{} is {}-stable but not {}-stable",
                extra.describe(market),
                inner.concept,
                outer.concept
            )));
        }
        Ok(b.len() - a.len())
    };
    let bayes_minus_icps = check(&icps, &bayes)?;
    let icps_minus_endog = check(&endog, &icps)?;
    let endog_minus_seq = seq.as_ref().map(|s| check(s, &endog)).transpose()?;
    Ok(RefinementMagnitude {
        all: bayes.considered,
        bayes: bayes.count(),
        icps: icps.count(),
        endog: endog.count(),
        seq: seq.as_ref().map(StableSetReport::count),
        bayes_minus_icps,
        icps_minus_endog,
        endog_minus_seq,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoneWolfReport {
    pub holds: bool,
    /// Two stable matchings with different unmatched sets.
    pub witness: Option<(Matching, Matching)>,
}

pub fn lone_wolf_report<S: Scalar>(report: &StableSetReport<S>) -> Result<LoneWolfReport> {
    let first = report.members.first().ok_or(Error::EmptyStableSet)?;
    let base = first.matching.unmatched();
    for other in &report.members[1..] {
        if other.matching.unmatched() != base {
            return Ok(LoneWolfReport {
                holds: false,
                witness: Some((first.matching.clone(), other.matching.clone())),
            });
        }
    }
    Ok(LoneWolfReport {
        holds: true,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport<S> {
    pub delta: Option<S>,
    pub power_condition: bool,
    /// A feasible menu test with `π·Δ > c`.
    pub power_test: Option<Test<S>>,
    pub stable_count: usize,
    pub unique: bool,
    pub matches_assortative: bool,
    pub assortative: Matching,
}

/// Whether the menu has enough test power, and whether the stable set under
/// the whole menu is exactly the assortative matching.
pub fn uniqueness_report<S: Scalar>(market: &Market<S>, menu: &TestMenu<S>) -> Result<UniquenessReport<S>> {
    if !market.distinct_types() {
        return Err(Error::NoDistinctTypes);
    }
    let delta = market::test_power_delta(market.surplus());
    let power_test = delta.as_ref().and_then(|d| {
        menu.informative()
            .find(|t| {
                t.finite_cost()
                    .is_some_and(|c| num::gt(&(t.accuracy().clone() * d.clone()), c))
            })
            .cloned()
    });
    let report = stable_matchings(market, &DeviationRule::with_menu(Concept::Icps, menu.clone()))?;
    let assortative = assortative_matching(market)?;
    let unique = report.count() == 1;
    let matches_assortative = unique && report.members[0].matching == assortative;
    Ok(UniquenessReport {
        delta,
        power_condition: power_test.is_some(),
        power_test,
        stable_count: report.count(),
        unique,
        matches_assortative,
        assortative,
    })
}
