//! Value of information for a deviating pair.
//!
//! A test `(accuracy, cost)` reveals both types perfectly with probability
//! `accuracy` and nothing otherwise. On the revealing branch the pair deviates
//! iff the realized surplus is at least the status quo `Π`; on the silent
//! branch it deviates iff `E[S] >= Π`. The cost is sunk either way, so
//!
//! ```text
//! value(Π) = accuracy * (Π + E[(S - Π)+]) + (1 - accuracy) * max(E[S], Π) - cost
//! ```
//!
//! Gains `value(Π) - Π` are continuous, convex, piecewise linear and
//! nonincreasing in `Π`, which makes blocking thresholds exact roots.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::market::PairSurplusDistribution;
use crate::num::{self, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Cost<S> {
    Finite(S),
    /// The technology exists but cannot be bought (`c = ∞`).
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Test<S> {
    accuracy: S,
    cost: Cost<S>,
}

impl<S: Scalar> Test<S> {
    pub fn new(accuracy: S, cost: S) -> Result<Self> {
        Self::check_accuracy(&accuracy)?;
        if cost < S::zero() {
            return Err(Error::InvalidTest(format!("negative cost {}", cost.render())));
        }
        Ok(Self {
            accuracy,
            cost: Cost::Finite(cost),
        })
    }

    pub fn infeasible(accuracy: S) -> Result<Self> {
        Self::check_accuracy(&accuracy)?;
        Ok(Self {
            accuracy,
            cost: Cost::Infeasible,
        })
    }

    fn check_accuracy(accuracy: &S) -> Result<()> {
        if *accuracy < S::zero() || *accuracy > S::one() {
            return Err(Error::InvalidTest(format!(
                "accuracy {} outside [0,1]",
                accuracy.render()
            )));
        }
        Ok(())
    }

    /// No information at no cost.
    pub fn null() -> Self {
        Self {
            accuracy: S::zero(),
            cost: Cost::Finite(S::zero()),
        }
    }

    pub fn accuracy(&self) -> &S {
        &self.accuracy
    }

    pub fn cost(&self) -> &Cost<S> {
        &self.cost
    }

    pub fn finite_cost(&self) -> Option<&S> {
        match &self.cost {
            Cost::Finite(c) => Some(c),
            Cost::Infeasible => None,
        }
    }

    pub fn is_null(&self) -> bool {
        self.accuracy == S::zero() && self.cost == Cost::Finite(S::zero())
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.cost, Cost::Finite(_))
    }

    pub fn describe(&self) -> String {
        match &self.cost {
            Cost::Finite(c) => format!("({}, {})", self.accuracy.render(), c.render()),
            Cost::Infeasible => format!("({}, inf)", self.accuracy.render()),
        }
    }

    /// Tie-break order: cheaper first (infeasible last), then less accurate.
    fn preference(&self, other: &Self) -> Ordering {
        let cost = match (&self.cost, &other.cost) {
            (Cost::Finite(a), Cost::Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            (Cost::Finite(_), Cost::Infeasible) => Ordering::Less,
            (Cost::Infeasible, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Infeasible, Cost::Infeasible) => Ordering::Equal,
        };
        cost.then_with(|| {
            self.accuracy
                .partial_cmp(&other.accuracy)
                .unwrap_or(Ordering::Equal)
        })
    }
}

/// Finite set of tests; the null test is always present.
#[derive(Debug, Clone, PartialEq)]
pub struct TestMenu<S> {
    tests: Vec<Test<S>>,
}

impl<S: Scalar> TestMenu<S> {
    pub fn new(tests: impl IntoIterator<Item = Test<S>>) -> Self {
        let mut all = vec![Test::null()];
        for t in tests {
            if !all.contains(&t) {
                all.push(t);
            }
        }
        Self { tests: all }
    }

    pub fn null_only() -> Self {
        Self::new([])
    }

    pub fn tests(&self) -> &[Test<S>] {
        &self.tests
    }

    /// Tests other than the null test.
    pub fn informative(&self) -> impl Iterator<Item = &Test<S>> {
        self.tests.iter().filter(|t| !t.is_null())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageAction {
    Continue,
    Stop,
}

/// Staged testing: `accuracy` is cumulative, `cost` is the stage increment.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialProtocol<S> {
    stages: Vec<(S, S)>,
}

impl<S: Scalar> SequentialProtocol<S> {
    pub fn new(stages: Vec<(S, S)>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidProtocol("no stages".into()));
        }
        let mut prev = S::zero();
        for (k, (acc, cost)) in stages.iter().enumerate() {
            if *acc <= prev || *acc > S::one() {
                return Err(Error::InvalidProtocol(format!(
                    "stage {} accuracy {} must exceed {} and be at most 1",
                    k + 1,
                    acc.render(),
                    prev.render()
                )));
            }
            if *cost <= S::zero() {
                return Err(Error::InvalidProtocol(format!(
                    "stage {} cost must be positive",
                    k + 1
                )));
            }
            prev = acc.clone();
        }
        Ok(Self { stages })
    }

    pub fn stages(&self) -> &[(S, S)] {
        &self.stages
    }

    /// One-shot tests obtained by running the first `k` stages for a lump
    /// sum: `(accuracy_k, cost_1 + ... + cost_k)`.
    pub fn collapsed_tests(&self) -> Vec<Test<S>> {
        let mut total = S::zero();
        self.stages
            .iter()
            .map(|(acc, cost)| {
                total = total.clone() + cost.clone();
                Test::new(acc.clone(), total.clone()).expect("validated stage")
            })
            .collect()
    }

    pub fn collapsed_menu(&self) -> TestMenu<S> {
        TestMenu::new(self.collapsed_tests())
    }

    /// The full protocol as a single lump-sum test.
    pub fn full_collapse(&self) -> Test<S> {
        self.collapsed_tests().pop().expect("nonempty protocol")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instrument<S> {
    Test(Test<S>),
    Sequential {
        /// Decision when still uninformed before each stage.
        policy: Vec<StageAction>,
        expected_cost: S,
    },
}

impl<S: Scalar> Instrument<S> {
    pub fn describe(&self) -> String {
        match self {
            Instrument::Test(t) => format!("test {}", t.describe()),
            Instrument::Sequential {
                policy,
                expected_cost,
            } => {
                let steps: Vec<&str> = policy
                    .iter()
                    .map(|a| match a {
                        StageAction::Continue => "continue",
                        StageAction::Stop => "stop",
                    })
                    .collect();
                format!(
                    "sequential [{}], expected cost {}",
                    steps.join(", "),
                    expected_cost.render()
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationQuote<S> {
    pub value: S,
    pub gain: S,
    pub instrument: Instrument<S>,
    /// The test could not be bought; value falls back to the status quo.
    pub infeasible: bool,
}

/// `E[(S - Π)+]`.
pub fn option_value<S: Scalar>(dist: &PairSurplusDistribution<S>, status_quo: &S) -> S {
    num::sum(
        dist.atoms()
            .iter()
            .map(|(s, p)| num::pos_part(s.clone() - status_quo.clone()) * p.clone()),
    )
}

/// `E[max(S, Π)]`: value of deciding after perfect revelation.
fn revealed_value<S: Scalar>(dist: &PairSurplusDistribution<S>, status_quo: &S) -> S {
    status_quo.clone() + option_value(dist, status_quo)
}

/// `max(E[S], Π)`: value of deciding on priors alone.
fn prior_value<S: Scalar>(dist: &PairSurplusDistribution<S>, status_quo: &S) -> S {
    num::max(dist.mean().clone(), status_quo.clone())
}

pub fn deviation_value<S: Scalar>(
    dist: &PairSurplusDistribution<S>,
    test: &Test<S>,
    status_quo: &S,
) -> DeviationQuote<S> {
    let Some(cost) = test.finite_cost() else {
        return DeviationQuote {
            value: status_quo.clone(),
            gain: S::zero(),
            instrument: Instrument::Test(test.clone()),
            infeasible: true,
        };
    };
    let acc = test.accuracy().clone();
    let value = acc.clone() * revealed_value(dist, status_quo)
        + (S::one() - acc) * prior_value(dist, status_quo)
        - cost.clone();
    DeviationQuote {
        gain: value.clone() - status_quo.clone(),
        value,
        instrument: Instrument::Test(test.clone()),
        infeasible: false,
    }
}

fn one_shot_gain<S: Scalar>(dist: &PairSurplusDistribution<S>, test: &Test<S>, status_quo: &S) -> S {
    deviation_value(dist, test, status_quo).gain
}

/// Smallest `Π >= 0` at which the test yields no strictly positive gain.
/// `Π*` itself is not blocking. Exact: the root is interpolated on the linear
/// segment between consecutive breakpoints (atoms and the mean).
pub fn blocking_threshold<S: Scalar>(dist: &PairSurplusDistribution<S>, test: &Test<S>) -> S {
    if !test.is_feasible() {
        return S::zero();
    }
    let zero = S::zero();
    let mut breaks: Vec<S> = dist
        .atoms()
        .iter()
        .map(|(s, _)| s.clone())
        .chain(std::iter::once(dist.mean().clone()))
        .filter(|b| *b > zero)
        .collect();
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("comparable"));
    breaks.dedup();

    let mut lo = zero.clone();
    let mut g_lo = one_shot_gain(dist, test, &lo);
    if g_lo <= zero {
        return zero;
    }
    for b in breaks {
        let g_b = one_shot_gain(dist, test, &b);
        if g_b <= zero {
            // Linear on [lo, b]: root at lo + g_lo (b - lo) / (g_lo - g_b).
            return lo.clone() + g_lo.clone() * (b - lo) / (g_lo - g_b);
        }
        lo = b;
        g_lo = g_b;
    }
    // Unreachable for valid distributions: the gain at max S is -cost <= 0.
    lo
}

/// Highest threshold over the menu with its test. Ties go to the cheaper,
/// then less accurate test.
pub fn menu_threshold<S: Scalar>(dist: &PairSurplusDistribution<S>, menu: &TestMenu<S>) -> (S, Test<S>) {
    let mut best: Option<(S, &Test<S>)> = None;
    for t in menu.tests() {
        let th = blocking_threshold(dist, t);
        best = match best {
            None => Some((th, t)),
            Some((bth, bt)) => {
                let better = num::gt(&th, &bth)
                    || (num::approx_eq(&th, &bth) && t.preference(bt) == Ordering::Less);
                if better {
                    Some((th, t))
                } else {
                    Some((bth, bt))
                }
            }
        };
    }
    let (th, t) = best.expect("menu contains the null test");
    (th, t.clone())
}

/// Best one-shot quote over the menu at status quo `Π` (the endogenous
/// choice `max_i V(i)`); ties as in [`menu_threshold`].
pub fn best_quote<S: Scalar>(
    dist: &PairSurplusDistribution<S>,
    menu: &TestMenu<S>,
    status_quo: &S,
) -> DeviationQuote<S> {
    let mut best: Option<(DeviationQuote<S>, &Test<S>)> = None;
    for t in menu.tests() {
        let q = deviation_value(dist, t, status_quo);
        best = match best {
            None => Some((q, t)),
            Some((bq, bt)) => {
                let better = num::gt(&q.value, &bq.value)
                    || (num::approx_eq(&q.value, &bq.value) && t.preference(bt) == Ordering::Less);
                if better {
                    Some((q, t))
                } else {
                    Some((bq, bt))
                }
            }
        };
    }
    best.expect("menu contains the null test").0
}

/// Backward-induction solution of a sequential protocol at status quo `Π`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialSolution<S> {
    pub value: S,
    /// Right derivative of `value` with respect to `Π`.
    pub slope: S,
    pub policy: Vec<StageAction>,
    pub expected_cost: S,
}

pub fn solve_sequential<S: Scalar>(
    dist: &PairSurplusDistribution<S>,
    protocol: &SequentialProtocol<S>,
    status_quo: &S,
) -> SequentialSolution<S> {
    let one = S::one();
    let revealed = revealed_value(dist, status_quo);
    let revealed_slope = one.clone() - dist.prob_above(status_quo);
    let prior = prior_value(dist, status_quo);
    let prior_slope = if *status_quo >= *dist.mean() {
        one.clone()
    } else {
        S::zero()
    };

    let stages = protocol.stages();
    let k_max = stages.len();
    // Uninformed continuation value after k completed stages.
    let mut value = prior.clone();
    let mut slope = prior_slope.clone();
    let mut policy = vec![StageAction::Stop; k_max];
    for k in (0..k_max).rev() {
        let prev_acc = if k == 0 { S::zero() } else { stages[k - 1].0.clone() };
        let (acc, cost) = &stages[k];
        let reveal = (acc.clone() - prev_acc.clone()) / (one.clone() - prev_acc);
        let cont = reveal.clone() * revealed.clone() + (one.clone() - reveal.clone()) * value.clone()
            - cost.clone();
        let cont_slope = reveal.clone() * revealed_slope.clone() + (one.clone() - reveal) * slope.clone();
        if num::gt(&cont, &prior) {
            value = cont;
            slope = cont_slope;
            policy[k] = StageAction::Continue;
        } else {
            if num::approx_eq(&cont, &prior) && cont_slope > prior_slope {
                slope = cont_slope;
            } else {
                slope = prior_slope.clone();
            }
            value = prior.clone();
            policy[k] = StageAction::Stop;
        }
    }
    // Expected spend along the uninformed path.
    let mut expected_cost = S::zero();
    let mut unrevealed = one.clone();
    let mut prev_acc = S::zero();
    for (k, (acc, cost)) in stages.iter().enumerate() {
        if policy[k] == StageAction::Stop {
            break;
        }
        expected_cost = expected_cost + unrevealed.clone() * cost.clone();
        let reveal = (acc.clone() - prev_acc.clone()) / (one.clone() - prev_acc.clone());
        unrevealed = unrevealed * (one.clone() - reveal);
        prev_acc = acc.clone();
    }
    // Stages after the first stop are never reached.
    if let Some(first_stop) = policy.iter().position(|a| *a == StageAction::Stop) {
        for a in &mut policy[first_stop..] {
            *a = StageAction::Stop;
        }
    }
    SequentialSolution {
        value,
        slope,
        policy,
        expected_cost,
    }
}

pub fn sequential_value<S: Scalar>(
    dist: &PairSurplusDistribution<S>,
    protocol: &SequentialProtocol<S>,
    status_quo: &S,
) -> DeviationQuote<S> {
    let sol = solve_sequential(dist, protocol, status_quo);
    DeviationQuote {
        gain: sol.value.clone() - status_quo.clone(),
        value: sol.value,
        instrument: Instrument::Sequential {
            policy: sol.policy,
            expected_cost: sol.expected_cost,
        },
        infeasible: false,
    }
}

/// Blocking threshold under a sequential protocol. The gain is convex and
/// piecewise linear, so Newton steps along right derivatives from the left
/// land in a new linear piece each time and reach the exact root.
pub fn sequential_threshold<S: Scalar>(dist: &PairSurplusDistribution<S>, protocol: &SequentialProtocol<S>) -> S {
    let zero = S::zero();
    let cap = dist.max_value().clone();
    let mut x = zero.clone();
    for _ in 0..10_000 {
        let sol = solve_sequential(dist, protocol, &x);
        let gain = sol.value - x.clone();
        if gain <= S::tolerance() {
            return x;
        }
        let dgain = sol.slope - S::one();
        if dgain >= zero {
            // Flat positive gain cannot occur below max S; guard anyway.
            return cap;
        }
        let next = x.clone() - gain / dgain;
        x = if next > cap { cap.clone() } else { next };
    }
    x
}

/// `(E[S 1_A], P(A))` for an acceptance event over `(surplus, probability)`
/// realizations.
pub fn acceptance_moments<S: Scalar>(realizations: &[(S, S)], accept: &[bool]) -> (S, S) {
    let mut weighted = S::zero();
    let mut prob = S::zero();
    for ((s, p), &a) in realizations.iter().zip(accept) {
        if a {
            weighted = weighted + s.clone() * p.clone();
            prob = prob + p.clone();
        }
    }
    (weighted, prob)
}

/// An acceptance event is a threshold rule when it is an upper set in surplus:
/// every accepted realization has surplus at least that of every rejected one.
pub fn is_threshold_rule<S: Scalar>(realizations: &[(S, S)], accept: &[bool]) -> bool {
    realizations.iter().zip(accept).all(|((s, _), &a)| {
        !a || realizations
            .iter()
            .zip(accept)
            .all(|((t, _), &b)| b || *t <= *s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Exact;

    fn q(n: i64, d: i64) -> Exact {
        Exact::ratio(n, d)
    }

    fn standard() -> PairSurplusDistribution<Exact> {
        PairSurplusDistribution::from_atoms(vec![(q(1, 1), q(1, 4)), (q(2, 1), q(1, 2)), (q(4, 1), q(1, 4))]).unwrap()
    }

    fn t(a: Exact, c: Exact) -> Test<Exact> {
        Test::new(a, c).unwrap()
    }

    #[test]
    fn option_value_examples() {
        let d = standard();
        assert_eq!(option_value(&d, &q(2, 1)), q(1, 2));
        assert_eq!(option_value(&d, &q(0, 1)), q(9, 4));
        assert_eq!(option_value(&d, &q(5, 1)), q(0, 1));
    }

    #[test]
    fn deviation_value_examples() {
        let d = standard();
        let pi = q(2, 1);
        let perfect = deviation_value(&d, &t(q(1, 1), q(0, 1)), &pi);
        assert_eq!((perfect.value, perfect.gain), (q(5, 2), q(1, 2)));
        let null = deviation_value(&d, &Test::null(), &pi);
        assert_eq!((null.value, null.gain), (q(9, 4), q(1, 4)));
        let mid = deviation_value(&d, &t(q(1, 2), q(3, 10)), &pi);
        assert_eq!((mid.value, mid.gain), (q(83, 40), q(3, 40)));
    }

    #[test]
    fn infeasible_test_is_flagged() {
        let d = standard();
        let quote = deviation_value(&d, &Test::infeasible(q(1, 1)).unwrap(), &q(2, 1));
        assert!(quote.infeasible);
        assert_eq!(quote.value, q(2, 1));
        assert_eq!(quote.gain, q(0, 1));
        assert_eq!(blocking_threshold(&d, &Test::infeasible(q(1, 1)).unwrap()), q(0, 1));
    }

    #[test]
    fn invalid_tests_rejected() {
        assert!(Test::new(q(3, 2), q(0, 1)).is_err());
        assert!(Test::new(q(1, 2), q(-1, 1)).is_err());
    }

    #[test]
    fn thresholds_examples() {
        let d = standard();
        assert_eq!(blocking_threshold(&d, &Test::null()), q(9, 4));
        assert_eq!(blocking_threshold(&d, &t(q(1, 1), q(0, 1))), q(4, 1));
        assert_eq!(blocking_threshold(&d, &t(q(1, 2), q(3, 10))), q(53, 25));
    }

    #[test]
    fn threshold_zero_when_test_never_pays() {
        let d = standard();
        // Cost above the whole value at Π = 0.
        assert_eq!(blocking_threshold(&d, &t(q(1, 1), q(3, 1))), q(0, 1));
    }

    #[test]
    fn menu_threshold_examples() {
        let d = standard();
        let (th, test) = menu_threshold(&d, &TestMenu::new([t(q(1, 2), q(3, 10))]));
        assert_eq!(th, q(9, 4));
        assert!(test.is_null());
        let (th, test) = menu_threshold(&d, &TestMenu::new([t(q(1, 1), q(0, 1))]));
        assert_eq!((th, test), (q(4, 1), t(q(1, 1), q(0, 1))));
        let (th, test) = menu_threshold(&d, &TestMenu::null_only());
        assert_eq!(th, q(9, 4));
        assert!(test.is_null());
    }

    #[test]
    fn menu_tie_prefers_cheaper() {
        let d = standard();
        // (1, 0) and (1, 0.5) differ; two tests with equal thresholds: the null
        // test and a zero-accuracy paid test never tie. Build an exact tie:
        // perfect free test vs. the same test listed twice is deduplicated.
        let menu = TestMenu::new([t(q(1, 1), q(0, 1)), t(q(1, 1), q(0, 1))]);
        assert_eq!(menu.tests().len(), 2);
        let (_, chosen) = menu_threshold(&d, &menu);
        assert_eq!(chosen, t(q(1, 1), q(0, 1)));
        // Point mass: every free test has threshold = the atom; null wins.
        let point = PairSurplusDistribution::point_mass(q(3, 1));
        let (th, chosen) = menu_threshold(&point, &TestMenu::new([t(q(1, 1), q(0, 1))]));
        assert_eq!(th, q(3, 1));
        assert!(chosen.is_null());
    }

    #[test]
    fn sequential_examples() {
        let d = standard();
        let proto = SequentialProtocol::new(vec![(q(1, 2), q(1, 10)), (q(1, 1), q(1, 10))]).unwrap();
        let sol = solve_sequential(&d, &proto, &q(2, 1));
        assert_eq!(sol.value, q(47, 20));
        assert_eq!(sol.expected_cost, q(3, 20));
        assert_eq!(sol.policy, vec![StageAction::Continue, StageAction::Continue]);
        let one_shot = deviation_value(&d, &t(q(1, 1), q(1, 5)), &q(2, 1));
        assert_eq!(one_shot.value, q(23, 10));
    }

    #[test]
    fn single_stage_matches_one_shot_when_testing_pays() {
        let d = standard();
        let proto = SequentialProtocol::new(vec![(q(1, 1), q(1, 10))]).unwrap();
        let seq = sequential_value(&d, &proto, &q(2, 1));
        let one = deviation_value(&d, &t(q(1, 1), q(1, 10)), &q(2, 1));
        assert_eq!(seq.value, one.value);
    }

    #[test]
    fn sequential_stops_when_testing_is_too_expensive() {
        let d = standard();
        let proto = SequentialProtocol::new(vec![(q(1, 1), q(2, 1))]).unwrap();
        let sol = solve_sequential(&d, &proto, &q(2, 1));
        assert_eq!(sol.value, q(9, 4));
        assert_eq!(sol.policy, vec![StageAction::Stop]);
        assert_eq!(sol.expected_cost, q(0, 1));
    }

    #[test]
    fn protocol_validation() {
        assert!(SequentialProtocol::<Exact>::new(vec![]).is_err());
        assert!(SequentialProtocol::new(vec![(q(1, 2), q(1, 10)), (q(1, 2), q(1, 10))]).is_err());
        assert!(SequentialProtocol::new(vec![(q(1, 2), q(0, 1))]).is_err());
        assert!(SequentialProtocol::new(vec![(q(0, 1), q(1, 10))]).is_err());
    }

    #[test]
    fn sequential_threshold_single_stage_matches_menu() {
        let d = standard();
        for (a, c) in [(q(1, 2), q(3, 10)), (q(1, 1), q(1, 10)), (q(9, 10), q(1, 20))] {
            let proto = SequentialProtocol::new(vec![(a.clone(), c.clone())]).unwrap();
            let expected = menu_threshold(&d, &TestMenu::new([t(a, c)])).0;
            assert_eq!(sequential_threshold(&d, &proto), expected);
        }
    }

    #[test]
    fn threshold_rule_detection() {
        let r = vec![(q(1, 1), q(1, 4)), (q(2, 1), q(1, 4)), (q(2, 1), q(1, 4)), (q(4, 1), q(1, 4))];
        assert!(is_threshold_rule(&r, &[false, true, true, true]));
        assert!(is_threshold_rule(&r, &[false, false, false, false]));
        assert!(!is_threshold_rule(&r, &[true, false, false, false]));
        // Ties on value 2: accepting one copy only still an upper set in value.
        assert!(is_threshold_rule(&r, &[false, true, false, true]));
        let (w, p) = acceptance_moments(&r, &[false, false, false, true]);
        assert_eq!((w, p), (q(1, 1), q(1, 4)));
    }
}
