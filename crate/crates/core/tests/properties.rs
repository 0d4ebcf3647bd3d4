mod common;

use common::strategies::instance;
use common::{is_half_integral, max_nonneg, oracle_ordered_w_p, oracle_w_f, oracle_w_p, q};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use roommate_core::rational::{decimal, exact, parse_rational};
use roommate_core::roommate::brute_force_optimum;
use roommate_core::stability::dual_certificate;
use roommate_core::transport::fractional_surplus;
use roommate_core::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn symmetrize_is_idempotent(inst in instance(4, 3, 12, false)) {
        let (once, _) = symmetrize(&inst);
        let (twice, _) = symmetrize(&once);
        prop_assert!(once.exchangeable);
        prop_assert_eq!(&once, &twice);
        if inst.exchangeable {
            prop_assert_eq!(&once, &inst);
        }
    }

    #[test]
    fn document_round_trip(inst in instance(5, 4, 20, false)) {
        let again = parse_instance(&inst.to_json()).unwrap();
        prop_assert_eq!(&again, &inst);
        prop_assert_eq!(again.to_json(), inst.to_json());
    }

    #[test]
    fn transport_matches_dp_oracle(inst in instance(4, 4, 16, true)) {
        let sol = solve_transportation(&inst).unwrap();
        prop_assert_eq!(&sol.value, &oracle_w_f(&inst));
        prop_assert!(sol.certificate_violations(&inst).is_empty(), "{:?}", sol.certificate_violations(&inst));
        let frac = half_integral_optimum(&inst).unwrap();
        prop_assert!(frac.is_half_integral());
        prop_assert!(frac.mu.iter().flatten().all(is_half_integral));
        prop_assert_eq!(fractional_surplus(&frac.mu, &inst), sol.value);
    }

    #[test]
    fn dual_certificate_is_tight(inst in instance(4, 4, 16, true)) {
        let cert = dual_certificate(&inst).unwrap();
        prop_assert!(cert.violations(&inst).is_empty());
        prop_assert_eq!(&cert.objective, &oracle_w_f(&inst));
    }

    #[test]
    fn branch_and_bound_matches_oracles(inst in instance(4, 4, 12, true)) {
        let (m, v) = solve_integer_optimum(&inst).unwrap();
        prop_assert!(m.violations(&inst).is_empty());
        prop_assert_eq!(&v, &oracle_w_p(&inst));
        let (bm, bv) = brute_force_optimum(&inst).unwrap();
        prop_assert_eq!(&bv, &v);
        // both break ties toward the same matching
        prop_assert_eq!(bm, m);
    }

    #[test]
    fn verdict_agrees_with_gap_and_verifies(inst in instance(4, 4, 16, true)) {
        let verdict = decide_stability(&inst).unwrap();
        let gap = oracle_w_f(&inst) - oracle_w_p(&inst);
        prop_assert!(!gap.is_negative());
        prop_assert_eq!(verdict.stable, gap.is_zero());
        prop_assert_eq!(&verdict.gap, &gap);
        match &verdict.outcome {
            Some(o) => prop_assert!(verify_outcome(&inst, o).unwrap().is_empty()),
            None => prop_assert!(!verdict.stable),
        }
        let d = diagnose_matching(&inst, &verdict.optimum).unwrap();
        prop_assert_eq!(d.stabilizable, verdict.stable);
        prop_assert_eq!(d.reasons.is_empty(), verdict.stable);
    }

    #[test]
    fn even_counts_are_stable(inst in instance(5, 2, 10, true)) {
        let even = inst.with_counts(inst.counts.iter().map(|&c| 2 * c as u64).collect());
        let v = decide_stability(&even).unwrap();
        prop_assert!(v.stable);
        prop_assert!(verify_outcome(&even, v.outcome.as_ref().unwrap()).unwrap().is_empty());
    }

    #[test]
    fn cloning_scales_fractional_value(inst in instance(4, 3, 9, true), k in 1u64..4) {
        let w = oracle_w_f(&inst);
        let cloned = clone(&inst, k).unwrap();
        let sol = solve_transportation(&cloned).unwrap();
        prop_assert_eq!(sol.value, w * q(k as i64));
        prop_assert!(decide_stability(&clone(&inst, 2).unwrap()).unwrap().stable);
    }

    #[test]
    fn removal_invariants(inst in instance(5, 4, 14, true)) {
        let plan = stabilize_by_removal(&inst).unwrap();
        prop_assert!(plan.reduced_verdict.stable);
        prop_assert!(plan.removed.iter().sum::<u64>() <= inst.num_types() as u64);
        prop_assert!(plan.reduced.counts.iter().all(|c| c % 2 == 0));
        prop_assert!(plan.compensation.iter().all(|c| !c.is_negative()));
        prop_assert!(plan.total_cost <= plan.cost_bound);
        prop_assert_eq!(&plan.cost_bound, &(q(inst.num_types() as i64) * max_nonneg(&inst)));
        // a removed individual cannot profitably rejoin with anyone still present
        let u = &plan.reduced_verdict.outcome.as_ref().unwrap().payoffs;
        for x in 0..inst.num_types() {
            if plan.removed[x] == 1 {
                for y in (0..inst.num_types()).filter(|&y| plan.reduced.counts[y] > 0) {
                    prop_assert!(&plan.compensation[x] + &u[y] >= inst.surplus[x][y]);
                }
            }
        }
    }

    #[test]
    fn ordered_recovery(inst in instance(4, 3, 10, false)) {
        let (om, verdict) = recover_ordered_matching(&inst).unwrap();
        prop_assert_eq!(&om.value, &oracle_ordered_w_p(&inst));
        for x in 0..inst.num_types() {
            for y in 0..inst.num_types() {
                if om.pi[x][y] > 0 {
                    prop_assert!(inst.surplus[x][y] >= inst.surplus[y][x]);
                }
            }
        }
        if let Some(o) = &verdict.outcome {
            prop_assert!(interventions::verify_ordered_outcome(&inst, &om, &o.payoffs).is_empty());
        }
    }

    #[test]
    fn decimal_rendering_is_close(n in -10i64.pow(15)..10i64.pow(15), d in 1i64..10i64.pow(9)) {
        let r = q(n) / q(d);
        let back = parse_rational(&decimal(&r)).unwrap();
        let err = (back - &r).abs();
        prop_assert!(err <= r.abs() * q(1) / q(10i64.pow(11)) + q(1) / q(10i64.pow(15)));
        prop_assert_eq!(parse_rational(&exact(&r)).unwrap(), r);
    }
}
