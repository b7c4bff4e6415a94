mod common;

use common::{random_market, random_menu};
use icps_core::info::{Test, TestMenu};
use icps_core::market::{self, Agent, Market, Matching, Mode, SurplusTable};
use icps_core::solver::{self, StandingValue};
use icps_core::stability::{self, Allocation, Concept, DeviationRule};
use icps_core::{Exact, Scalar};
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest uniform slack `t` with `u_f + v_w >= threshold + t` for every pair,
/// matched pairs splitting their value and unmatched agents at zero.
fn lp_slack(matching: &Matching, values: &[Vec<f64>], thresholds: &[Vec<f64>]) -> Option<f64> {
    let (n, m) = matching.size();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let fixed = |matched: bool| if matched { (0.0, f64::INFINITY) } else { (0.0, 0.0) };
    let u: Vec<_> = (0..n).map(|f| lp.add_var(0.0, fixed(matching.firm_partner(f).is_some()))).collect();
    let v: Vec<_> = (0..m).map(|w| lp.add_var(0.0, fixed(matching.worker_partner(w).is_some()))).collect();
    let t = lp.add_var(1.0, (-1e3, 1.0));
    for (f, w) in matching.pairs() {
        lp.add_constraint(&[(u[f], 1.0), (v[w], 1.0)], ComparisonOp::Eq, values[f][w]);
    }
    for f in 0..n {
        for w in 0..m {
            lp.add_constraint(&[(u[f], 1.0), (v[w], 1.0), (t, -1.0)], ComparisonOp::Ge, thresholds[f][w]);
        }
    }
    lp.solve().ok().map(|s| s[t])
}

fn to_f64(x: &[Vec<Exact>]) -> Vec<Vec<f64>> {
    x.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect()
}

#[test]
fn supporting_payoffs_agree_with_lp() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for i in 0..120 {
        let mode = if i % 2 == 0 { Mode::ExAnte } else { Mode::Realized };
        let market: Market<Exact> = random_market(&mut rng, 3, mode);
        let menu = random_menu(&mut rng);
        let rule = DeviationRule::with_menu(Concept::Icps, menu);
        let thresholds = rule.thresholds(&market).unwrap();
        let values = solver::pair_values(&market, &rule, StandingValue::Prior).unwrap();
        let (tf, vf) = (to_f64(&thresholds), to_f64(&values));
        for mu in market::enumerate_matchings(&market).unwrap() {
            let ours = stability::supporting_payoffs(&mu, &values, &thresholds);
            let slack = lp_slack(&mu, &vf, &tf);
            let lp_feasible = slack.is_some_and(|t| t >= -1e-7);
            assert_eq!(ours.is_some(), lp_feasible, "market {i}, {}: slack {slack:?}", mu.describe(&market));
            if let Some(alloc) = ours {
                alloc.check_consistent(&market).unwrap();
                assert!(stability::check_individual_rationality(&alloc));
                assert_eq!(stability::find_blocking_pair(&market, &alloc, &rule).unwrap(), None);
            }
            checked += 1;
        }
    }
    assert!(checked > 500);
}

/// Random payoff split of each matched pair's expected surplus, sometimes
/// pushing one side below zero.
fn random_allocation(rng: &mut ChaCha8Rng, market: &Market<Exact>) -> Allocation<Exact> {
    let all = market::enumerate_matchings(market).unwrap();
    let mu = all[rng.gen_range(0..all.len())].clone();
    let (n, m) = market.size();
    let mut u = vec![Exact::zero(); n];
    let mut v = vec![Exact::zero(); m];
    for (f, w) in mu.pairs() {
        let s = market.pair_surplus_distribution(f, w).unwrap().mean().clone();
        let share = Exact::ratio(rng.gen_range(-2..=12), 10);
        u[f] = s.clone() * share;
        v[w] = s - u[f].clone();
    }
    Allocation::new(mu, u, v).unwrap()
}

#[test]
fn bayes_blocking_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..500 {
        let mode = if i % 3 == 0 { Mode::Realized } else { Mode::ExAnte };
        let market: Market<Exact> = random_market(&mut rng, 3, mode);
        let alloc = random_allocation(&mut rng, &market);
        let (n, m) = market.size();
        let mut oracle = false;
        for f in 0..n {
            for w in 0..m {
                // Expected surplus straight from the type cells.
                let mean = market
                    .pair_type_distribution(f, w)
                    .unwrap()
                    .into_iter()
                    .fold(Exact::zero(), |acc, ((x, y), p)| acc + p * market.surplus().get(x, y).clone());
                oracle |= mean > alloc.status_quo(f, w);
            }
        }
        let found = stability::find_blocking_pair(&market, &alloc, &DeviationRule::bayes()).unwrap();
        assert_eq!(found.is_some(), oracle, "allocation {i}");
        if let Some(cert) = found {
            assert!(stability::verify_certificate(&market, &alloc, &cert).unwrap());
        }
    }
}

#[test]
fn certificates_round_trip_and_reject_tampering() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = 0;
    for _ in 0..200 {
        let market: Market<Exact> = random_market(&mut rng, 3, Mode::ExAnte);
        let alloc = random_allocation(&mut rng, &market);
        let rule = DeviationRule::with_menu(Concept::Endog, random_menu(&mut rng));
        let Some(cert) = stability::find_blocking_pair(&market, &alloc, &rule).unwrap() else { continue };
        seen += 1;
        assert!(stability::verify_certificate(&market, &alloc, &cert).unwrap());
        let mut forged = cert.clone();
        forged.deviation_value = forged.deviation_value + Exact::one();
        assert!(!stability::verify_certificate(&market, &alloc, &forged).unwrap());
        let mut forged = cert;
        forged.gain = -forged.gain;
        assert!(!stability::verify_certificate(&market, &alloc, &forged).unwrap());
    }
    assert!(seen > 50);
}

#[test]
fn icps_refines_bayes_on_random_markets() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let mode = if rng.gen_bool(0.5) { Mode::Realized } else { Mode::ExAnte };
        let market: Market<Exact> = random_market(&mut rng, 3, mode);
        let menu = random_menu(&mut rng);
        let bayes = solver::stable_matchings(&market, &DeviationRule::bayes()).unwrap().matchings();
        let icps = solver::stable_matchings(&market, &DeviationRule::with_menu(Concept::Icps, menu)).unwrap().matchings();
        assert!(icps.is_subset(&bayes));
    }
}

/// Two-grade realized 2x2 market with distinct types on each side.
fn high_low(alpha: i64, beta: i64, gamma: Exact) -> Market<Exact> {
    let table = SurplusTable::two_grade(Exact::from_int(alpha), Exact::from_int(beta), gamma).unwrap();
    let half = Exact::ratio(1, 2);
    let agents = |p: &str| vec![Agent::new(format!("{p}1"), half.clone()).with_realized(1), Agent::new(format!("{p}2"), half.clone()).with_realized(0)];
    Market::new(agents("f"), agents("w"), table, Exact::zero(), Mode::Realized, true).unwrap()
}

#[test]
fn submodular_surplus_breaks_assortative_uniqueness() {
    // 3 + 1/2 < 2 + 2: mixing the pairs beats sorting them.
    let market = high_low(3, 2, Exact::ratio(1, 2));
    assert!(!market.surplus().is_supermodular());
    let menu = TestMenu::new([Test::new(Exact::one(), Exact::zero()).unwrap()]);
    let r = solver::uniqueness_report(&market, &menu).unwrap();
    assert!(r.power_condition);
    assert!(r.unique);
    assert!(!r.matches_assortative);

    let sorted = high_low(4, 2, Exact::one());
    let r = solver::uniqueness_report(&sorted, &menu).unwrap();
    assert!(r.unique && r.matches_assortative);
}
