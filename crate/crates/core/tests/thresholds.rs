use icps_core::info::{self, SequentialProtocol, Test};
use icps_core::market::{build_joint_distribution, PairSurplusDistribution, SurplusTable};
use icps_core::{Exact, Scalar};
use proptest::prelude::*;

/// Plain-float gain of a one-shot test, straight from the atoms.
fn oracle_gain(atoms: &[(f64, f64)], acc: f64, cost: f64, pi: f64) -> f64 {
    let mean: f64 = atoms.iter().map(|(s, p)| s * p).sum();
    let revealed: f64 = atoms.iter().map(|(s, p)| s.max(pi) * p).sum();
    acc * revealed + (1.0 - acc) * mean.max(pi) - cost - pi
}

/// Best "run the first k stages" value; after a revelation the pair stops,
/// so the only choice on the silent path is how far to go.
fn oracle_sequential(atoms: &[(f64, f64)], stages: &[(f64, f64)], pi: f64) -> f64 {
    let mean: f64 = atoms.iter().map(|(s, p)| s * p).sum();
    let revealed: f64 = atoms.iter().map(|(s, p)| s.max(pi) * p).sum();
    let prior = mean.max(pi);
    let mut best = prior;
    let mut spent = 0.0;
    let mut prev = 0.0;
    for &(acc, cost) in stages {
        spent += (1.0 - prev) * cost;
        best = best.max(acc * revealed + (1.0 - acc) * prior - spent);
        prev = acc;
    }
    best
}

/// Smallest root of a decreasing-to-nonpositive gain on [0, hi], to 1e-6.
fn bisect(g: impl Fn(f64) -> f64, hi: f64) -> f64 {
    if g(0.0) <= 1e-12 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, hi);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 1e-12 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn standard<S: Scalar>() -> PairSurplusDistribution<S> {
    let table = SurplusTable::two_grade(S::from_int(4), S::from_int(2), S::from_int(1)).unwrap();
    let j = build_joint_distribution(S::ratio(1, 2), S::zero()).unwrap();
    PairSurplusDistribution::from_atoms((0..2).flat_map(|x| (0..2).map(move |y| (x, y))).map(|(x, y)| {
        (table.get(x, y).clone(), j.cell(x, y).clone())
    }))
    .unwrap()
}

fn to_f64(d: &PairSurplusDistribution<Exact>) -> Vec<(f64, f64)> {
    d.atoms().iter().map(|(s, p)| (s.to_f64(), p.to_f64())).collect()
}

#[test]
fn standard_thresholds_exact() {
    let d = standard::<Exact>();
    let tests = [
        (Test::null(), Exact::ratio(9, 4)),
        (Test::new(Exact::one(), Exact::zero()).unwrap(), Exact::from_int(4)),
        (Test::new(Exact::ratio(1, 2), Exact::ratio(3, 10)).unwrap(), Exact::ratio(53, 25)),
    ];
    for (t, want) in tests {
        assert_eq!(info::blocking_threshold(&d, &t), want, "{}", t.describe());
    }
}

#[test]
fn standard_thresholds_float_match_bisection() {
    let d = standard::<f64>();
    let atoms: Vec<(f64, f64)> = d.atoms().to_vec();
    for (acc, cost, want) in [(0.0, 0.0, 2.25), (1.0, 0.0, 4.0), (0.5, 0.3, 2.12)] {
        let t = Test::new(acc, cost).unwrap();
        let th = info::blocking_threshold(&d, &t);
        let b = bisect(|x| oracle_gain(&atoms, acc, cost, x), 10.0);
        assert!((th - b).abs() <= 2e-6, "({acc},{cost}): {th} vs bisection {b}");
        assert!((th - want).abs() <= 1e-9);
    }
}

#[test]
fn sequential_two_stage_example() {
    let d = standard::<Exact>();
    let q = Exact::ratio;
    let protocol = SequentialProtocol::new(vec![(q(1, 2), q(1, 10)), (Exact::one(), q(1, 10))]).unwrap();
    let pi = Exact::from_int(2);
    let seq = info::sequential_value(&d, &protocol, &pi).value;
    assert_eq!(seq, q(47, 20));
    let collapsed = info::deviation_value(&d, &protocol.full_collapse(), &pi).value;
    assert_eq!(collapsed, q(23, 10));
    assert!(seq >= collapsed);
}

fn dist_strategy() -> impl Strategy<Value = PairSurplusDistribution<Exact>> {
    prop::collection::vec((0i64..40, 1i64..10), 1..6).prop_map(|raw| {
        let total: i64 = raw.iter().map(|r| r.1).sum();
        PairSurplusDistribution::from_atoms(raw.into_iter().map(|(v, w)| (Exact::ratio(v, 2), Exact::ratio(w, total))))
            .unwrap()
    })
}

fn protocol_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    // Strictly increasing accuracies in twentieths ending at 1, positive costs in twentieths.
    prop::collection::btree_set(1i64..20, 0..3).prop_flat_map(|accs| {
        let mut accs: Vec<i64> = accs.into_iter().collect();
        accs.push(20);
        let k = accs.len();
        prop::collection::vec(1i64..6, k).prop_map(move |costs| accs.iter().copied().zip(costs).collect())
    })
}

proptest! {
    #[test]
    fn exact_threshold_is_the_root(d in dist_strategy(), a in 0i64..=4, c in 0i64..=8) {
        let t = Test::new(Exact::ratio(a, 4), Exact::ratio(c, 10)).unwrap();
        let th = info::blocking_threshold(&d, &t);
        let gain = |x: &Exact| info::deviation_value(&d, &t, x).gain;
        prop_assert!(gain(&th) <= Exact::zero());
        if th > Exact::zero() {
            prop_assert_eq!(gain(&th), Exact::zero());
            prop_assert!(gain(&(th.clone() - Exact::ratio(1, 1000))) > Exact::zero());
        }
    }

    #[test]
    fn float_threshold_matches_bisection(d in dist_strategy(), a in 0i64..=4, c in 0i64..=8) {
        let atoms = to_f64(&d);
        let fd = PairSurplusDistribution::from_atoms(atoms.clone()).unwrap();
        let (acc, cost) = (a as f64 / 4.0, c as f64 / 10.0);
        let th = info::blocking_threshold(&fd, &Test::new(acc, cost).unwrap());
        let b = bisect(|x| oracle_gain(&atoms, acc, cost, x), 30.0);
        prop_assert!((th - b).abs() <= 2e-6, "{} vs {}", th, b);
    }

    #[test]
    fn sequential_value_matches_policy_enumeration(d in dist_strategy(), stages in protocol_strategy(), k in 0i64..40) {
        let q = |n: i64| Exact::ratio(n, 20);
        let protocol = SequentialProtocol::new(stages.iter().map(|&(a, c)| (q(a), q(c))).collect()).unwrap();
        let pi = Exact::ratio(k, 2);
        let seq = info::sequential_value(&d, &protocol, &pi).value;
        let fstages: Vec<(f64, f64)> = stages.iter().map(|&(a, c)| (a as f64 / 20.0, c as f64 / 20.0)).collect();
        let oracle = oracle_sequential(&to_f64(&d), &fstages, pi.to_f64());
        prop_assert!((seq.to_f64() - oracle).abs() <= 1e-9);
        for t in protocol.collapsed_tests() {
            prop_assert!(seq >= info::deviation_value(&d, &t, &pi).value);
        }
    }

    #[test]
    fn sequential_threshold_matches_bisection(d in dist_strategy(), stages in protocol_strategy()) {
        let q = |n: i64| Exact::ratio(n, 20);
        let protocol = SequentialProtocol::new(stages.iter().map(|&(a, c)| (q(a), q(c))).collect()).unwrap();
        let th = info::sequential_threshold(&d, &protocol).to_f64();
        let fstages: Vec<(f64, f64)> = stages.iter().map(|&(a, c)| (a as f64 / 20.0, c as f64 / 20.0)).collect();
        let atoms = to_f64(&d);
        let b = bisect(|x| oracle_sequential(&atoms, &fstages, x) - x, 30.0);
        prop_assert!((th - b).abs() <= 2e-6, "{} vs {}", th, b);
    }
}
