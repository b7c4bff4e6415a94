#![allow(dead_code)]

use icps_core::info::{Test, TestMenu};
use icps_core::market::{Agent, Market, Mode, SurplusTable};
use icps_core::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Two-grade market with integer surpluses `alpha > beta > gamma >= 0`,
/// priors in tenths and independent types.
pub fn random_market<S: Scalar>(rng: &mut ChaCha8Rng, max_side: usize, mode: Mode) -> Market<S> {
    let n = rng.gen_range(1..=max_side);
    let m = rng.gen_range(1..=max_side);
    let gamma = rng.gen_range(0..4);
    let beta = gamma + rng.gen_range(1..4);
    let alpha = beta + rng.gen_range(1..5);
    let table = SurplusTable::two_grade(S::from_int(alpha), S::from_int(beta), S::from_int(gamma)).unwrap();
    let mut agent = |prefix: &str, i: usize| {
        let a = Agent::new(format!("{prefix}{i}"), S::ratio(rng.gen_range(1..10), 10));
        if mode == Mode::Realized {
            a.with_realized(rng.gen_range(0..2))
        } else {
            a
        }
    };
    let firms = (0..n).map(|i| agent("f", i)).collect();
    let workers = (0..m).map(|i| agent("w", i)).collect();
    Market::new(firms, workers, table, S::zero(), mode, false).unwrap()
}

pub fn random_test<S: Scalar>(rng: &mut ChaCha8Rng) -> Test<S> {
    Test::new(S::ratio(rng.gen_range(1..=4), 4), S::ratio(rng.gen_range(0..=8), 10)).unwrap()
}

pub fn random_menu<S: Scalar>(rng: &mut ChaCha8Rng) -> TestMenu<S> {
    let k = rng.gen_range(1..=2);
    TestMenu::new((0..k).map(|_| random_test(rng)))
}
