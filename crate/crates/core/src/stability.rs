//! Blocking-pair search, individual rationality, supporting payoffs, NTU
//! blocking and improvement dynamics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::DifferenceSystem;
use crate::info::{self, DeviationQuote, Instrument, SequentialProtocol, Test, TestMenu};
use crate::market::{self, Market, Matching, PairSurplusDistribution};
use crate::num::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Concept {
    /// Priors only: the null test.
    Bayes,
    /// A single exogenous test alongside the null test.
    Icps,
    /// Best test from a menu.
    Endog,
    /// Staged testing with optimal stopping.
    Seq,
    /// Non-transferable utility.
    Ntu,
}

impl Concept {
    pub fn name(self) -> &'static str {
        match self {
            Concept::Bayes => "bayes",
            Concept::Icps => "icps",
            Concept::Endog => "endog",
            Concept::Seq => "seq",
            Concept::Ntu => "ntu",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a deviating pair may do before deciding to block.
#[derive(Debug, Clone)]
pub struct DeviationRule<S> {
    pub concept: Concept,
    pub menu: TestMenu<S>,
    pub protocol: Option<SequentialProtocol<S>>,
    /// Per-pair protocol replacing `protocol`, keyed by (firm, worker).
    pub protocol_overrides: BTreeMap<(usize, usize), SequentialProtocol<S>>,
}

impl<S: Scalar> DeviationRule<S> {
    pub fn bayes() -> Self {
        Self::with_menu(Concept::Bayes, TestMenu::null_only())
    }

    pub fn with_menu(concept: Concept, menu: TestMenu<S>) -> Self {
        Self {
            concept,
            menu,
            protocol: None,
            protocol_overrides: BTreeMap::new(),
        }
    }

    pub fn sequential(protocol: SequentialProtocol<S>) -> Self {
        Self {
            concept: Concept::Seq,
            menu: TestMenu::null_only(),
            protocol: Some(protocol),
            protocol_overrides: BTreeMap::new(),
        }
    }

    fn protocol_for(&self, firm: usize, worker: usize) -> Result<&SequentialProtocol<S>> {
        self.protocol_overrides
            .get(&(firm, worker))
            .or(self.protocol.as_ref())
            .ok_or(Error::MissingProtocol("seq"))
    }

    /// The concept's best deviation quote for a pair at status quo `Π`.
    pub fn quote(
        &self,
        dist: &PairSurplusDistribution<S>,
        firm: usize,
        worker: usize,
        status_quo: &S,
    ) -> Result<DeviationQuote<S>> {
        match self.concept {
            Concept::Bayes => Ok(info::deviation_value(dist, &Test::null(), status_quo)),
            Concept::Icps | Concept::Endog => Ok(info::best_quote(dist, &self.menu, status_quo)),
            Concept::Seq => Ok(info::sequential_value(dist, self.protocol_for(firm, worker)?, status_quo)),
            Concept::Ntu => Err(Error::UnsupportedConcept("ntu")),
        }
    }

    /// The concept's blocking threshold `Π*` for a pair.
    pub fn threshold(&self, dist: &PairSurplusDistribution<S>, firm: usize, worker: usize) -> Result<S> {
        match self.concept {
            Concept::Bayes => Ok(info::blocking_threshold(dist, &Test::null())),
            Concept::Icps | Concept::Endog => Ok(info::menu_threshold(dist, &self.menu).0),
            Concept::Seq => Ok(info::sequential_threshold(dist, self.protocol_for(firm, worker)?)),
            Concept::Ntu => Err(Error::UnsupportedConcept("ntu")),
        }
    }

    /// Thresholds for every pair, `[firm][worker]`.
    pub fn thresholds(&self, market: &Market<S>) -> Result<Vec<Vec<S>>> {
        let (n, m) = market.size();
        (0..n)
            .map(|f| {
                (0..m)
                    .map(|w| self.threshold(&market.pair_surplus_distribution(f, w)?, f, w))
                    .collect()
            })
            .collect()
    }
}

/// A matching with a payoff profile; transfers are implicit in the split.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation<S> {
    matching: Matching,
    firm_payoffs: Vec<S>,
    worker_payoffs: Vec<S>,
}

impl<S: Scalar> Allocation<S> {
    pub fn new(matching: Matching, firm_payoffs: Vec<S>, worker_payoffs: Vec<S>) -> Result<Self> {
        let (n, m) = matching.size();
        if firm_payoffs.len() != n || worker_payoffs.len() != m {
            return Err(Error::InvalidAllocation("payoff vector sizes do not match".into()));
        }
        let (uf, uw) = matching.unmatched();
        if uf.iter().any(|&f| !firm_payoffs[f].is_zero_tol()) || uw.iter().any(|&w| !worker_payoffs[w].is_zero_tol()) {
            return Err(Error::InvalidAllocation("unmatched agents must receive 0".into()));
        }
        Ok(Self {
            matching,
            firm_payoffs,
            worker_payoffs,
        })
    }

    /// Each matched pair splits its expected (or realized) surplus equally.
    pub fn equal_split(market: &Market<S>, matching: Matching) -> Result<Self> {
        let (n, m) = market.size();
        let mut u = vec![S::zero(); n];
        let mut v = vec![S::zero(); m];
        let two = S::from_int(2);
        for (f, w) in matching.pairs() {
            let half = market.pair_surplus_distribution(f, w)?.mean().clone() / two.clone();
            u[f] = half.clone();
            v[w] = half;
        }
        Self::new(matching, u, v)
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn firm_payoffs(&self) -> &[S] {
        &self.firm_payoffs
    }

    pub fn worker_payoffs(&self) -> &[S] {
        &self.worker_payoffs
    }

    /// Joint status-quo payoff `Π = u_f + v_w` of a pair.
    pub fn status_quo(&self, firm: usize, worker: usize) -> S {
        self.firm_payoffs[firm].clone() + self.worker_payoffs[worker].clone()
    }

    pub fn total_payoff(&self) -> S {
        num::sum(self.firm_payoffs.iter().chain(&self.worker_payoffs).cloned())
    }

    /// Checks that each matched pair's payoffs add up to its expected surplus.
    pub fn check_consistent(&self, market: &Market<S>) -> Result<()> {
        if !self.matching.fits(market) {
            return Err(Error::InvalidAllocation("matching does not fit the market".into()));
        }
        for (f, w) in self.matching.pairs() {
            let value = market.pair_surplus_distribution(f, w)?.mean().clone();
            if !num::approx_eq(&self.status_quo(f, w), &value) {
                return Err(Error::InvalidAllocation(format!(
                    "payoffs of {}-{} sum to {}, pair surplus is {}",
                    market.firms()[f].name,
                    market.workers()[w].name,
                    self.status_quo(f, w).render(),
                    value.render()
                )));
            }
        }
        Ok(())
    }
}

pub fn check_individual_rationality<S: Scalar>(alloc: &Allocation<S>) -> bool {
    alloc
        .firm_payoffs
        .iter()
        .chain(&alloc.worker_payoffs)
        .all(|x| num::ge(x, &S::zero()))
}

/// Per-side payoffs and values behind an NTU block.
#[derive(Debug, Clone, PartialEq)]
pub struct NtuGains<S> {
    pub firm_status_quo: S,
    pub worker_status_quo: S,
    pub firm_value: S,
    pub worker_value: S,
}

/// Witness of a profitable deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockingCertificate<S> {
    pub firm: usize,
    pub worker: usize,
    pub concept: Concept,
    pub instrument: Instrument<S>,
    pub status_quo: S,
    pub deviation_value: S,
    /// Strictly positive. For NTU, the smaller of the two individual gains.
    pub gain: S,
    pub ntu: Option<NtuGains<S>>,
}

/// Scans pairs in (firm, worker) order and returns the first one whose best
/// deviation under the concept beats its joint status quo strictly.
pub fn find_blocking_pair<S: Scalar>(
    market: &Market<S>,
    alloc: &Allocation<S>,
    rule: &DeviationRule<S>,
) -> Result<Option<BlockingCertificate<S>>> {
    let (n, m) = market.size();
    for f in 0..n {
        for w in 0..m {
            let dist = market.pair_surplus_distribution(f, w)?;
            let pi = alloc.status_quo(f, w);
            let quote = rule.quote(&dist, f, w, &pi)?;
            if num::gt(&quote.gain, &S::zero()) {
                return Ok(Some(BlockingCertificate {
                    firm: f,
                    worker: w,
                    concept: rule.concept,
                    instrument: quote.instrument,
                    status_quo: pi,
                    deviation_value: quote.value,
                    gain: quote.gain,
                    ntu: None,
                }));
            }
        }
    }
    Ok(None)
}

/// Recomputes a certificate's deviation value from scratch.
pub fn verify_certificate<S: Scalar>(
    market: &Market<S>,
    alloc: &Allocation<S>,
    cert: &BlockingCertificate<S>,
) -> Result<bool> {
    let dist = market.pair_surplus_distribution(cert.firm, cert.worker)?;
    let pi = alloc.status_quo(cert.firm, cert.worker);
    let value = match &cert.instrument {
        Instrument::Test(t) => info::deviation_value(&dist, t, &pi).value,
        Instrument::Sequential { .. } => return Ok(num::gt(&cert.gain, &S::zero())),
    };
    Ok(num::approx_eq(&value, &cert.deviation_value)
        && num::approx_eq(&(value - pi), &cert.gain)
        && num::gt(&cert.gain, &S::zero()))
}

/// Payoffs supporting `matching` against per-pair thresholds: `u, v >= 0`,
/// matched pairs split `values[f][w]`, unmatched agents get 0, and
/// `u_f + v_w >= thresholds[f][w]` for every pair. Returns the midpoint of
/// the extreme firm-optimal and worker-optimal solutions.
pub fn supporting_payoffs<S: Scalar>(
    matching: &Matching,
    values: &[Vec<S>],
    thresholds: &[Vec<S>],
) -> Option<Allocation<S>> {
    let (n, m) = matching.size();
    let mut sys = DifferenceSystem::new(n);
    let value_of = |f: usize| -> S {
        match matching.firm_partner(f) {
            Some(w) => values[f][w].clone(),
            None => S::zero(),
        }
    };
    for f in 0..n {
        let vf = value_of(f);
        sys.lower(f, S::zero());
        sys.upper(f, vf);
    }
    for f in 0..n {
        for w in 0..m {
            let t = thresholds[f][w].clone();
            match (matching.firm_partner(f), matching.worker_partner(w)) {
                (Some(pw), _) if pw == w => sys.constant_nonneg(&(value_of(f) - t)),
                (Some(_), Some(g)) => sys.diff_le(g, f, value_of(g) - t),
                (Some(_), None) => sys.lower(f, t),
                (None, Some(g)) => sys.upper(g, value_of(g) - t),
                (None, None) => sys.constant_nonneg(&(-t)),
            }
        }
    }
    let u = sys.solve_midpoint()?;
    let mut firm = vec![S::zero(); n];
    let mut worker = vec![S::zero(); m];
    for (f, w) in matching.pairs() {
        firm[f] = u[f].clone();
        worker[w] = values[f][w].clone() - u[f].clone();
    }
    Allocation::new(matching.clone(), firm, worker).ok()
}

/// Utilities by type profile for NTU markets.
#[derive(Debug, Clone, PartialEq)]
pub struct NtuUtilityTable<S> {
    /// `[firm grade][worker grade]`.
    pub firm_utility: Vec<Vec<S>>,
    pub worker_utility: Vec<Vec<S>>,
    /// Share of a test's cost borne by the firm; the worker bears the rest.
    pub firm_cost_share: S,
}

impl<S: Scalar> NtuUtilityTable<S> {
    pub fn new(firm_utility: Vec<Vec<S>>, worker_utility: Vec<Vec<S>>) -> Self {
        Self {
            firm_utility,
            worker_utility,
            firm_cost_share: S::ratio(1, 2),
        }
    }

    pub fn with_firm_cost_share(mut self, share: S) -> Result<Self> {
        if share < S::zero() || share > S::one() {
            return Err(Error::InvalidTest("cost share outside [0,1]".into()));
        }
        self.firm_cost_share = share;
        Ok(self)
    }

    pub fn validate_for<T>(&self, market: &Market<T>) -> Result<()>
    where
        T: Scalar,
    {
        let n = market.surplus().grades(market::Side::Firm).len();
        let m = market.surplus().grades(market::Side::Worker).len();
        let ok = |t: &Vec<Vec<S>>| t.len() == n && t.iter().all(|r| r.len() == m);
        if ok(&self.firm_utility) && ok(&self.worker_utility) {
            Ok(())
        } else {
            Err(Error::InvalidMarket(format!("NTU utility tables must be {n}x{m}")))
        }
    }

    /// `(probability, firm utility, worker utility)` per type profile.
    pub fn profiles(&self, market: &Market<S>, firm: usize, worker: usize) -> Result<Vec<NtuProfile<S>>> {
        Ok(market
            .pair_type_distribution(firm, worker)?
            .into_iter()
            .map(|((fg, wg), p)| NtuProfile {
                prob: p,
                firm_utility: self.firm_utility[fg][wg].clone(),
                worker_utility: self.worker_utility[fg][wg].clone(),
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NtuProfile<S> {
    pub prob: S,
    pub firm_utility: S,
    pub worker_utility: S,
}

/// Expected utilities of each side at its standing match (0 if unmatched).
pub fn ntu_status_quo<S: Scalar>(
    market: &Market<S>,
    matching: &Matching,
    utilities: &NtuUtilityTable<S>,
) -> Result<(Vec<S>, Vec<S>)> {
    let (n, m) = market.size();
    let mut firm = vec![S::zero(); n];
    let mut worker = vec![S::zero(); m];
    for (f, w) in matching.pairs() {
        for p in utilities.profiles(market, f, w)? {
            firm[f] = firm[f].clone() + p.prob.clone() * p.firm_utility;
            worker[w] = worker[w].clone() + p.prob * p.worker_utility;
        }
    }
    Ok((firm, worker))
}

/// Each side's expected utility from deviating with `test`: on revelation the
/// pair consummates only on profiles that strictly improve both sides, on
/// silence only if both prior expectations strictly improve. Each side pays
/// its cost share. `None` for infeasible tests.
pub fn ntu_deviation<S: Scalar>(
    profiles: &[NtuProfile<S>],
    firm_status_quo: &S,
    worker_status_quo: &S,
    test: &Test<S>,
    firm_cost_share: &S,
) -> Option<(S, S)> {
    let cost = test.finite_cost()?.clone();
    let acc = test.accuracy().clone();
    let one = S::one();
    let mut rev_f = S::zero();
    let mut rev_w = S::zero();
    let mut prior_f = S::zero();
    let mut prior_w = S::zero();
    for p in profiles {
        prior_f = prior_f + p.prob.clone() * p.firm_utility.clone();
        prior_w = prior_w + p.prob.clone() * p.worker_utility.clone();
        let both = num::gt(&p.firm_utility, firm_status_quo) && num::gt(&p.worker_utility, worker_status_quo);
        let (uf, uw) = if both {
            (p.firm_utility.clone(), p.worker_utility.clone())
        } else {
            (firm_status_quo.clone(), worker_status_quo.clone())
        };
        rev_f = rev_f + p.prob.clone() * uf;
        rev_w = rev_w + p.prob.clone() * uw;
    }
    let prior_both = num::gt(&prior_f, firm_status_quo) && num::gt(&prior_w, worker_status_quo);
    let (sil_f, sil_w) = if prior_both {
        (prior_f, prior_w)
    } else {
        (firm_status_quo.clone(), worker_status_quo.clone())
    };
    let firm = acc.clone() * rev_f + (one.clone() - acc.clone()) * sil_f - firm_cost_share.clone() * cost.clone();
    let worker = acc.clone() * rev_w + (one.clone() - acc) * sil_w - (one - firm_cost_share.clone()) * cost;
    Some((firm, worker))
}

/// NTU blocking search in (firm, worker) order; a certificate needs both
/// sides strictly better off under some menu test.
pub fn find_ntu_blocking_pair<S: Scalar>(
    market: &Market<S>,
    matching: &Matching,
    utilities: &NtuUtilityTable<S>,
    menu: &TestMenu<S>,
) -> Result<Option<BlockingCertificate<S>>> {
    utilities.validate_for(market)?;
    let (sq_f, sq_w) = ntu_status_quo(market, matching, utilities)?;
    let (n, m) = market.size();
    for f in 0..n {
        for w in 0..m {
            let profiles = utilities.profiles(market, f, w)?;
            for test in menu.tests() {
                let Some((vf, vw)) = ntu_deviation(&profiles, &sq_f[f], &sq_w[w], test, &utilities.firm_cost_share)
                else {
                    continue;
                };
                let gf = vf.clone() - sq_f[f].clone();
                let gw = vw.clone() - sq_w[w].clone();
                if num::gt(&gf, &S::zero()) && num::gt(&gw, &S::zero()) {
                    return Ok(Some(BlockingCertificate {
                        firm: f,
                        worker: w,
                        concept: Concept::Ntu,
                        instrument: Instrument::Test(test.clone()),
                        status_quo: sq_f[f].clone() + sq_w[w].clone(),
                        deviation_value: vf.clone() + vw.clone(),
                        gain: num::min(gf, gw),
                        ntu: Some(NtuGains {
                            firm_status_quo: sq_f[f].clone(),
                            worker_status_quo: sq_w[w].clone(),
                            firm_value: vf,
                            worker_value: vw,
                        }),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Joint expected utility change a TU planner could realize with `test`
/// (accepting on profiles raising the joint utility), for reporting blocks
/// that NTU forgoes.
pub fn ntu_joint_gain<S: Scalar>(
    profiles: &[NtuProfile<S>],
    firm_status_quo: &S,
    worker_status_quo: &S,
    test: &Test<S>,
) -> Option<S> {
    let joint: Vec<(S, S)> = profiles
        .iter()
        .map(|p| (p.firm_utility.clone() + p.worker_utility.clone(), p.prob.clone()))
        .collect();
    let dist = PairSurplusDistribution::from_atoms(joint).ok()?;
    let pi = firm_status_quo.clone() + worker_status_quo.clone();
    let q = info::deviation_value(&dist, test, &pi);
    (!q.infeasible).then_some(q.gain)
}

/// One entry of an improvement path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathStep<S> {
    pub allocation: Allocation<S>,
    /// The deviation executed from this allocation; `None` on the final step.
    pub certificate: Option<BlockingCertificate<S>>,
    /// Sum of all payoffs.
    pub payoff_total: S,
    /// Initial payoff total plus every executed joint-payoff increase, the
    /// welfare accounting that ignores jilted partners.
    pub ledger_welfare: S,
}

/// Repeatedly executes the first blocking deviation. The deviators become
/// partners at joint value `max(Π*, V)`, the level beyond which the pair can
/// no longer profitably re-deviate, each receiving half of the increase over
/// their previous payoffs. Former partners become unmatched with payoff 0.
pub fn improvement_path<S: Scalar>(
    market: &Market<S>,
    start: &Allocation<S>,
    rule: &DeviationRule<S>,
) -> Result<Vec<PathStep<S>>> {
    if !check_individual_rationality(start) {
        return Err(Error::NonIrStart);
    }
    if !start.matching.fits(market) {
        return Err(Error::InvalidAllocation("matching does not fit the market".into()));
    }
    let (n, m) = market.size();
    let max_atoms = (0..n)
        .flat_map(|f| (0..m).map(move |w| (f, w)))
        .map(|(f, w)| market.pair_surplus_distribution(f, w).map(|d| d.atoms().len()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    let step_cap = (market::matching_count(n, m) as usize)
        .saturating_mul(max_atoms + 2)
        .saturating_mul((n * m).max(1));

    let two = S::from_int(2);
    let mut trace = Vec::new();
    let mut alloc = start.clone();
    let mut ledger = alloc.total_payoff();
    loop {
        let cert = find_blocking_pair(market, &alloc, rule)?;
        let total = alloc.total_payoff();
        let Some(cert) = cert else {
            trace.push(PathStep {
                allocation: alloc,
                certificate: None,
                payoff_total: total,
                ledger_welfare: ledger,
            });
            return Ok(trace);
        };
        if trace.len() >= step_cap {
            return Err(Error::PathDidNotTerminate(step_cap));
        }
        let (f, w) = (cert.firm, cert.worker);
        let dist = market.pair_surplus_distribution(f, w)?;
        let joint = num::max(rule.threshold(&dist, f, w)?, cert.deviation_value.clone());
        let increase = joint - cert.status_quo.clone();

        let mut u = alloc.firm_payoffs.clone();
        let mut v = alloc.worker_payoffs.clone();
        let mut partners: Vec<Option<usize>> = alloc.matching.firm_partners().to_vec();
        if let Some(old_w) = alloc.matching.firm_partner(f) {
            if old_w != w {
                v[old_w] = S::zero();
            }
        }
        if let Some(old_f) = alloc.matching.worker_partner(w) {
            if old_f != f {
                u[old_f] = S::zero();
                partners[old_f] = None;
            }
        }
        partners[f] = Some(w);
        u[f] = u[f].clone() + increase.clone() / two.clone();
        v[w] = v[w].clone() + increase.clone() / two.clone();
        let next = Allocation::new(Matching::from_firm_partners(partners, m)?, u, v)?;

        trace.push(PathStep {
            allocation: alloc,
            certificate: Some(cert),
            payoff_total: total,
            ledger_welfare: ledger.clone(),
        });
        ledger = ledger + increase;
        alloc = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{Agent, Mode, SurplusTable};
    use crate::num::Exact;

    fn q(n: i64, d: i64) -> Exact {
        Exact::ratio(n, d)
    }

    fn one_by_one() -> Market<Exact> {
        Market::new(
            vec![Agent::new("f", q(1, 2))],
            vec![Agent::new("w", q(1, 2))],
            SurplusTable::two_grade(q(4, 1), q(2, 1), q(1, 1)).unwrap(),
            q(0, 1),
            Mode::ExAnte,
            false,
        )
        .unwrap()
    }

    fn perfect_menu() -> TestMenu<Exact> {
        TestMenu::new([Test::new(q(1, 1), q(0, 1)).unwrap()])
    }

    /// 1x2 market where f is matched to w2 and pays the (f, w1) pair jointly Π.
    fn alloc_with_status_quo(pi: Exact) -> (Market<Exact>, Allocation<Exact>) {
        let market = Market::new(
            vec![Agent::new("f", q(1, 2))],
            vec![Agent::new("w1", q(1, 2)), Agent::new("w2", q(1, 2))],
            SurplusTable::two_grade(q(4, 1), q(2, 1), q(1, 1)).unwrap(),
            q(0, 1),
            Mode::ExAnte,
            false,
        )
        .unwrap();
        // f gets Π, w1 is unmatched; f-w2 carries the payoff implicitly.
        let matching = Matching::from_pairs(1, 2, &[(0, 1)]).unwrap();
        let alloc = Allocation::new(matching, vec![pi], vec![q(0, 1), q(0, 1)]).unwrap();
        (market, alloc)
    }

    #[test]
    fn individual_rationality() {
        let empty = Allocation::<Exact>::new(Matching::empty(1, 1), vec![q(0, 1)], vec![q(0, 1)]).unwrap();
        assert!(check_individual_rationality(&empty));
        let m = Matching::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let bad = Allocation::new(m.clone(), vec![q(-1, 2)], vec![q(11, 4)]).unwrap();
        assert!(!check_individual_rationality(&bad));
        let split = Allocation::equal_split(&one_by_one(), m).unwrap();
        assert!(check_individual_rationality(&split));
        assert_eq!(split.firm_payoffs()[0], q(9, 8));
    }

    #[test]
    fn unmatched_payoff_must_be_zero() {
        assert!(Allocation::<Exact>::new(Matching::empty(1, 1), vec![q(1, 1)], vec![q(0, 1)]).is_err());
    }

    #[test]
    fn bayes_rule_does_not_block_above_mean() {
        let (market, alloc) = alloc_with_status_quo(q(23, 10));
        let rule = DeviationRule::bayes();
        // Pair (f, w1) has Π = 2.3 > 2.25; (f, w2) is the standing pair at 2.3.
        assert_eq!(find_blocking_pair(&market, &alloc, &rule).unwrap(), None);
    }

    #[test]
    fn perfect_test_blocks_above_mean() {
        let (market, alloc) = alloc_with_status_quo(q(23, 10));
        let rule = DeviationRule::with_menu(Concept::Icps, perfect_menu());
        let cert = find_blocking_pair(&market, &alloc, &rule).unwrap().unwrap();
        assert_eq!((cert.firm, cert.worker), (0, 0));
        assert_eq!(cert.gain, q(17, 40));
        assert!(verify_certificate(&market, &alloc, &cert).unwrap());
    }

    #[test]
    fn no_block_at_max_surplus() {
        let (market, alloc) = alloc_with_status_quo(q(4, 1));
        for rule in [
            DeviationRule::bayes(),
            DeviationRule::with_menu(Concept::Endog, perfect_menu()),
        ] {
            assert_eq!(find_blocking_pair(&market, &alloc, &rule).unwrap(), None);
        }
    }

    #[test]
    fn seq_rule_needs_protocol() {
        let (market, alloc) = alloc_with_status_quo(q(2, 1));
        let mut rule = DeviationRule::bayes();
        rule.concept = Concept::Seq;
        assert_eq!(find_blocking_pair(&market, &alloc, &rule), Err(Error::MissingProtocol("seq")));
    }

    #[test]
    fn supporting_payoffs_examples() {
        let values = vec![vec![q(9, 4)]];
        let matched = Matching::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let w = supporting_payoffs(&matched, &values, &[vec![q(9, 4)]]).unwrap();
        assert_eq!(w.firm_payoffs(), &[q(9, 8)]);
        assert_eq!(w.worker_payoffs(), &[q(9, 8)]);
        assert!(supporting_payoffs(&Matching::empty(1, 1), &values, &[vec![q(9, 4)]]).is_none());
        // Perfect test threshold 4 exceeds what the pair produces.
        assert!(supporting_payoffs(&matched, &values, &[vec![q(4, 1)]]).is_none());
    }

    #[test]
    fn supporting_payoffs_cross_pair_infeasible() {
        // f1-w1 and f2-w2 each worth 1; cross pairs need 3 jointly.
        let values = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let thr = vec![vec![q(1, 1), q(3, 1)], vec![q(3, 1), q(1, 1)]];
        let m = Matching::from_pairs(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(supporting_payoffs(&m, &values, &thr).is_none());
    }

    #[test]
    fn ntu_split_preferences_no_block_under_perfect_test() {
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
        let perfect = Test::new(q(1, 1), q(0, 1)).unwrap();
        let (vf, vw) = ntu_deviation(&profiles, &q(4, 1), &q(4, 1), &perfect, &q(1, 2)).unwrap();
        assert_eq!((vf, vw), (q(4, 1), q(4, 1)));
        // Joint surplus rises from 8 to 10 under TU.
        let gain = ntu_joint_gain(&profiles, &q(4, 1), &q(4, 1), &perfect).unwrap();
        assert_eq!(gain, q(2, 1));
    }

    #[test]
    fn ntu_mutual_improvement_blocks() {
        let profiles = vec![
            NtuProfile {
                prob: q(1, 2),
                firm_utility: q(6, 1),
                worker_utility: q(6, 1),
            },
            NtuProfile {
                prob: q(1, 2),
                firm_utility: q(1, 1),
                worker_utility: q(1, 1),
            },
        ];
        let perfect = Test::new(q(1, 1), q(0, 1)).unwrap();
        let (vf, vw) = ntu_deviation(&profiles, &q(4, 1), &q(4, 1), &perfect, &q(1, 2)).unwrap();
        assert_eq!((vf, vw), (q(5, 1), q(5, 1)));
    }

    #[test]
    fn ntu_one_sided_prior_gain_insufficient() {
        let profiles = vec![NtuProfile {
            prob: q(1, 1),
            firm_utility: q(5, 1),
            worker_utility: q(3, 1),
        }];
        let (vf, vw) = ntu_deviation(&profiles, &q(4, 1), &q(4, 1), &Test::null(), &q(1, 2)).unwrap();
        assert_eq!((vf, vw), (q(4, 1), q(4, 1)));
    }

    #[test]
    fn improvement_path_from_stable_start_has_length_one() {
        let market = one_by_one();
        let m = Matching::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let start = Allocation::equal_split(&market, m).unwrap();
        let trace = improvement_path(&market, &start, &DeviationRule::bayes()).unwrap();
        assert_eq!(trace.len(), 1);
        assert!(trace[0].certificate.is_none());
    }

    #[test]
    fn improvement_path_rejects_non_ir_start() {
        let market = one_by_one();
        let m = Matching::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let start = Allocation::new(m, vec![q(-1, 1)], vec![q(13, 4)]).unwrap();
        assert_eq!(
            improvement_path(&market, &start, &DeviationRule::bayes()),
            Err(Error::NonIrStart)
        );
    }

    #[test]
    fn improvement_path_perfect_test_raises_pair_to_threshold() {
        let market = one_by_one();
        let m = Matching::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let start = Allocation::equal_split(&market, m).unwrap();
        let rule = DeviationRule::with_menu(Concept::Icps, perfect_menu());
        let trace = improvement_path(&market, &start, &rule).unwrap();
        assert_eq!(trace.len(), 2);
        let last = trace.last().unwrap();
        assert_eq!(last.payoff_total, q(4, 1));
        assert_eq!(last.ledger_welfare, q(4, 1));
    }
}
