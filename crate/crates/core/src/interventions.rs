//! Stability-restoring interventions (cloning, parity-based removal with
//! compensation) and recovery of ordered-role matchings for markets whose
//! partners are not exchangeable.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{symmetrize, Instance};
use crate::rational::Rational;
use crate::stability::{decide_stability, StabilityVerdict, Violation};

/// Same types and surplus, every count multiplied by `factor`.
pub fn clone(inst: &Instance, factor: u64) -> Result<Instance> {
    if factor == 0 {
        return Err(Error::ZeroFactor);
    }
    inst.ensure_valid()?;
    Ok(inst.with_counts(inst.counts_u64().iter().map(|c| c * factor).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalPlan {
    /// 1 for each type that had an odd count and lost one individual.
    pub removed: Vec<u64>,
    pub reduced: Instance,
    /// Payment owed to the removed individual of each type (0 where nobody was removed).
    pub compensation: Vec<Rational>,
    pub total_cost: Rational,
    /// `|X| · max(Φ̄, 0)`.
    pub cost_bound: Rational,
    pub reduced_verdict: StabilityVerdict,
}

/// Removes one individual from every odd-count type and prices their exit.
///
/// A removed individual whose type is still present in the reduced market is
/// paid that type's stable payoff. If the type disappears, it is paid the
/// least amount that deters it from re-entering and pairing with anyone still
/// present: `max(0, max_y Φ_xy − u_y)`. Nobody is owed anything when the
/// reduced market is empty.
pub fn stabilize_by_removal(inst: &Instance) -> Result<RemovalPlan> {
    inst.ensure_exchangeable()?;
    let m = inst.num_types();
    let counts = inst.counts_u64();
    let removed: Vec<u64> = counts.iter().map(|c| c % 2).collect();
    let reduced = inst.with_counts(counts.iter().zip(&removed).map(|(c, r)| c - r).collect());
    let reduced_verdict = decide_stability(&reduced)?;
    let payoffs = match &reduced_verdict.outcome {
        Some(o) => o.payoffs.clone(),
        // even counts always admit a stable outcome
        None => unreachable!("reduced market with even counts has a stable outcome"),
    };

    let present: Vec<usize> = (0..m).filter(|&y| reduced.count(y) > 0).collect();
    let compensation: Vec<Rational> = (0..m)
        .map(|x| {
            if removed[x] == 0 || present.is_empty() {
                Rational::zero()
            } else if reduced.count(x) > 0 {
                payoffs[x].clone()
            } else {
                present.iter().map(|&y| inst.phi(x, y) - &payoffs[y]).fold(Rational::zero(), |a, b| a.max(b))
            }
        })
        .collect();
    let total_cost = compensation.iter().sum();
    let cost_bound = Rational::from_integer(BigInt::from(m)) * inst.max_surplus_nonneg();
    Ok(RemovalPlan { removed, reduced, compensation, total_cost, cost_bound, reduced_verdict })
}

/// Matching with ordered roles: `pi[x][y]` pairs where type `x` takes the first role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedMatching {
    pub pi: Vec<Vec<u64>>,
    pub singles: Vec<u64>,
    pub value: Rational,
}

/// Solves a (possibly nonexchangeable) market through its role-optimized
/// symmetric version and orients every matched pair to a maximizing order.
/// Ties go to the lower type index in the first role.
pub fn recover_ordered_matching(inst: &Instance) -> Result<(OrderedMatching, StabilityVerdict)> {
    inst.ensure_valid()?;
    let (sym, pref) = symmetrize(inst);
    let verdict = decide_stability(&sym)?;
    let m = inst.num_types();
    let mu = &verdict.optimum.mu;
    let mut pi = vec![vec![0u64; m]; m];
    for x in 0..m {
        pi[x][x] = mu[x][x];
        for y in x + 1..m {
            if pref.attains(x, y) {
                pi[x][y] = mu[x][y];
            } else {
                pi[y][x] = mu[x][y];
            }
        }
    }
    let value = ordered_value(inst, &pi);
    let om = OrderedMatching { pi, singles: verdict.optimum.singles.clone(), value };
    Ok((om, verdict))
}

/// `Σ π_xy Φ_xy`.
pub fn ordered_value(inst: &Instance, pi: &[Vec<u64>]) -> Rational {
    let mut total = Rational::zero();
    for (x, row) in pi.iter().enumerate() {
        for (y, &k) in row.iter().enumerate() {
            if k > 0 {
                total += Rational::from_integer(BigInt::from(k)) * inst.phi(x, y);
            }
        }
    }
    total
}

/// Stability check for an ordered-role outcome, by direct arithmetic.
/// Any two types may block in either role order.
pub fn verify_ordered_outcome(inst: &Instance, om: &OrderedMatching, payoffs: &[Rational]) -> Vec<Violation> {
    let m = inst.num_types();
    let mut out = Vec::new();
    for x in 0..m {
        let used: u64 = 2 * om.pi[x][x]
            + (0..m).filter(|&y| y != x).map(|y| om.pi[x][y] + om.pi[y][x]).sum::<u64>()
            + om.singles[x];
        if used != inst.count(x) {
            out.push(Violation::InfeasibleMatching {
                detail: format!("type {} accounts for {used} of {} individuals", inst.labels[x], inst.count(x)),
            });
        }
    }
    let surplus = ordered_value(inst, &om.pi);
    let distributed: Rational =
        payoffs.iter().enumerate().map(|(x, u)| Rational::from_integer(BigInt::from(inst.count(x))) * u).sum();
    if surplus != distributed {
        out.push(Violation::SurplusMismatch { distributed, surplus });
    }
    for x in 0..m {
        if payoffs[x].is_negative() {
            out.push(Violation::IndividualRationality { type_index: x, payoff: payoffs[x].clone() });
        }
        for y in x..m {
            let best = inst.phi(x, y).max(inst.phi(y, x)).clone();
            let payoff_sum = &payoffs[x] + &payoffs[y];
            if payoff_sum < best {
                let deficit = &best - &payoff_sum;
                out.push(Violation::BlockingPair { first: x, second: y, surplus: best, payoff_sum, deficit });
            }
        }
    }
    out
}
