use icps_core::info::{self, Test};
use icps_core::market::{build_pair_joint, PairSurplusDistribution, SurplusTable};
use icps_core::{Exact, Scalar};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Exact {
    Exact::ratio(n, d)
}

fn dist_strategy() -> impl Strategy<Value = PairSurplusDistribution<Exact>> {
    prop::collection::vec((0i64..40, 1i64..10), 1..6).prop_map(|raw| {
        let total: i64 = raw.iter().map(|r| r.1).sum();
        PairSurplusDistribution::from_atoms(raw.into_iter().map(|(v, w)| (q(v, 2), q(w, total)))).unwrap()
    })
}

proptest! {
    #[test]
    fn joint_cells_reproduce_marginals(pf in 1i64..20, pw in 1i64..20, r in -10i64..=10) {
        let (pf, pw) = (q(pf, 20), q(pw, 20));
        let rho = q(r, 10);
        // Common prior keeps the covariance rational; the other case uses rho = 0.
        for (a, b, rho) in [(pf.clone(), pf.clone(), rho), (pf.clone(), pw.clone(), Exact::zero())] {
            let Ok(j) = build_pair_joint(a.clone(), b.clone(), rho.clone()) else { continue };
            prop_assert_eq!(j.hh.clone() + j.hl.clone(), a.clone());
            prop_assert_eq!(j.hh.clone() + j.lh.clone(), b.clone());
            prop_assert_eq!(j.hh.clone() + j.hl.clone() + j.lh.clone() + j.ll.clone(), Exact::one());
            if rho == Exact::zero() {
                prop_assert_eq!(j.hh, a.clone() * b.clone());
                prop_assert_eq!(j.ll, (Exact::one() - a) * (Exact::one() - b));
            }
        }
    }

    #[test]
    fn infeasible_correlation_is_rejected_not_clamped(p in 1i64..20, r in -10i64..=10) {
        let (p, rho) = (q(p, 20), q(r, 10));
        let one = Exact::one();
        let v = p.clone() * (one.clone() - p.clone());
        let cells = [
            p.clone() * p.clone() + rho.clone() * v.clone(),
            v.clone() * (one.clone() - rho.clone()),
            (one.clone() - p.clone()) * (one - p.clone()) + rho.clone() * v,
        ];
        let feasible = cells.iter().all(|c| *c >= Exact::zero());
        prop_assert_eq!(build_pair_joint(p.clone(), p, rho).is_ok(), feasible);
    }

    #[test]
    fn two_grade_mean_closed_form(pf in 1i64..20, pw in 1i64..20, g in 0i64..5, db in 1i64..5, da in 1i64..5) {
        let (pf, pw) = (q(pf, 20), q(pw, 20));
        let (gamma, beta) = (Exact::from_int(g), Exact::from_int(g + db));
        let alpha = beta.clone() + Exact::from_int(da);
        let table = SurplusTable::two_grade(alpha.clone(), beta.clone(), gamma.clone()).unwrap();
        let j = build_pair_joint(pf.clone(), pw.clone(), Exact::zero()).unwrap();
        let mut mean = Exact::zero();
        for x in 0..2 {
            for y in 0..2 {
                mean = mean + j.cell(x, y).clone() * table.get(x, y).clone();
            }
        }
        let one = Exact::one();
        let closed = pf.clone() * pw.clone() * alpha
            + (pf.clone() * (one.clone() - pw.clone()) + (one.clone() - pf.clone()) * pw.clone()) * beta
            + (one.clone() - pf) * (one - pw) * gamma;
        prop_assert_eq!(mean, closed);
    }

    #[test]
    fn option_value_is_decreasing_convex_and_anchored(d in dist_strategy(), k in 0i64..40) {
        let at = |x: Exact| info::option_value(&d, &x);
        prop_assert_eq!(at(Exact::zero()), d.mean().clone());
        prop_assert_eq!(at(d.max_value().clone()), Exact::zero());
        let h = q(1, 4);
        let x = q(k, 2);
        let (a, b, c) = (at(x.clone()), at(x.clone() + h.clone()), at(x.clone() + h.clone() + h.clone()));
        prop_assert!(b <= a);
        prop_assert!(a + c >= b.clone() + b);
    }

    #[test]
    fn free_accuracy_never_hurts(d in dist_strategy(), a in 0i64..=10, b in 0i64..=10, k in 0i64..40) {
        let (lo, hi) = (a.min(b), a.max(b));
        let pi = q(k, 2);
        let v = |acc: i64| info::deviation_value(&d, &Test::new(q(acc, 10), Exact::zero()).unwrap(), &pi).value;
        prop_assert!(v(hi) >= v(lo));
        prop_assert!(v(lo) >= num_max(d.mean().clone(), pi.clone()));
    }

    #[test]
    fn decomposition_identity_holds_with_prior_mean(d in dist_strategy(), a in 0i64..=10) {
        // Averaging the informed and uninformed branches without conditioning
        // returns the prior mean on both sides.
        let pi = q(a, 10);
        let lhs = pi.clone() * d.mean().clone() + (Exact::one() - pi) * d.mean().clone();
        prop_assert_eq!(lhs, d.mean().clone());
    }
}

fn num_max(a: Exact, b: Exact) -> Exact {
    if a >= b { a } else { b }
}
