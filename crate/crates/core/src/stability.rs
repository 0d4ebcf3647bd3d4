//! Existence of stable outcomes, their construction, dual certificates and a
//! solver-independent verifier.
//!
//! A stable matching exists iff the integer optimum `W_P` equals the
//! fractional optimum `W_F` (the value of the associated bipartite problem).
//! Payoffs are read off the bipartite duals as `u_x = v_x + w_x`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::roommate::{raw_surplus, solve_integer_optimum_with_limit, RoommateMatching, DEFAULT_NODE_LIMIT};
use crate::transport::{solve_transportation, BipartiteSolution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub matching: RoommateMatching,
    pub payoffs: Vec<Rational>,
}

/// Feasible point of the dual program `min Σ n_x u_x` s.t. `u ≥ 0`,
/// `u_x + u_y ≥ Φ_xy + A_xy`, `A` antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub payoffs: Vec<Rational>,
    pub multipliers: Vec<Vec<Rational>>,
    pub objective: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub w_p: Rational,
    pub w_f: Rational,
    pub gap: Rational,
    /// The surplus-maximizing integer matching behind `w_p`.
    pub optimum: RoommateMatching,
    pub outcome: Option<Outcome>,
    pub certificate: Certificate,
}

impl Certificate {
    /// `u_x = v_x + w_x` and `A_xy = (v_y − w_y) − (v_x − w_x)` from bipartite
    /// duals of the `Φ/2` problem.
    pub fn from_duals(inst: &Instance, v: &[Rational], w: &[Rational]) -> Certificate {
        let m = inst.num_types();
        let payoffs: Vec<Rational> = (0..m).map(|x| &v[x] + &w[x]).collect();
        let skew: Vec<Rational> = (0..m).map(|x| &v[x] - &w[x]).collect();
        let multipliers = (0..m).map(|x| (0..m).map(|y| &skew[y] - &skew[x]).collect()).collect();
        let objective = weighted_total(inst, &payoffs);
        Certificate { payoffs, multipliers, objective }
    }

    /// Dual-feasibility failures; empty iff the certificate is feasible.
    pub fn violations(&self, inst: &Instance) -> Vec<String> {
        let m = inst.num_types();
        let mut out = Vec::new();
        for x in 0..m {
            if self.payoffs[x].is_negative() {
                out.push(format!("u[{x}] = {} < 0", self.payoffs[x]));
            }
            for y in 0..m {
                if self.multipliers[x][y] != -self.multipliers[y][x].clone() {
                    out.push(format!("A not antisymmetric at ({x},{y})"));
                }
                let lhs = &self.payoffs[x] + &self.payoffs[y];
                let rhs = inst.phi(x, y) + &self.multipliers[x][y];
                if lhs < rhs {
                    out.push(format!("u[{x}] + u[{y}] = {lhs} < Φ + A = {rhs}"));
                }
            }
        }
        if self.objective != weighted_total(inst, &self.payoffs) {
            out.push("objective differs from Σ n_x u_x".into());
        }
        out
    }
}

fn weighted_total(inst: &Instance, payoffs: &[Rational]) -> Rational {
    payoffs.iter().enumerate().map(|(x, u)| Rational::from_integer(BigInt::from(inst.count(x))) * u).sum()
}

pub fn dual_certificate(inst: &Instance) -> Result<Certificate> {
    let sol = solve_transportation(inst)?;
    Ok(Certificate::from_duals(inst, &sol.duals_v, &sol.duals_w))
}

pub fn decide_stability(inst: &Instance) -> Result<StabilityVerdict> {
    decide_stability_with_limit(inst, DEFAULT_NODE_LIMIT)
}

pub fn decide_stability_with_limit(inst: &Instance, node_limit: u64) -> Result<StabilityVerdict> {
    let bipartite = solve_transportation(inst)?;
    let (optimum, w_p, _) = solve_integer_optimum_with_limit(inst, node_limit)?;
    Ok(assemble(inst, &bipartite, optimum, w_p))
}

fn assemble(
    inst: &Instance,
    bipartite: &BipartiteSolution,
    optimum: RoommateMatching,
    w_p: Rational,
) -> StabilityVerdict {
    let certificate = Certificate::from_duals(inst, &bipartite.duals_v, &bipartite.duals_w);
    let w_f = bipartite.value.clone();
    let gap = &w_f - &w_p;
    let stable = gap.is_zero();
    let outcome = stable.then(|| Outcome { matching: optimum.clone(), payoffs: certificate.payoffs.clone() });
    debug_assert!(outcome.as_ref().is_none_or(|o| verify_outcome(inst, o).is_ok_and(|v| v.is_empty())));
    StabilityVerdict { stable, w_p, w_f, gap, optimum, outcome, certificate }
}

/// A stable outcome, or `None` when the market has no stable matching.
pub fn construct_stable_outcome(inst: &Instance) -> Result<Option<Outcome>> {
    Ok(decide_stability(inst)?.outcome)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The matching does not account for the population.
    InfeasibleMatching { detail: String },
    /// `Σ n_x u_x` differs from the surplus the matching creates.
    SurplusMismatch {
        #[serde(serialize_with = "crate::report::ser_exact")]
        distributed: Rational,
        #[serde(serialize_with = "crate::report::ser_exact")]
        surplus: Rational,
    },
    /// A type would rather stay single.
    IndividualRationality {
        type_index: usize,
        #[serde(serialize_with = "crate::report::ser_exact")]
        payoff: Rational,
    },
    /// Two types (possibly the same type twice) would jointly do better together.
    BlockingPair {
        first: usize,
        second: usize,
        #[serde(serialize_with = "crate::report::ser_exact")]
        surplus: Rational,
        #[serde(serialize_with = "crate::report::ser_exact")]
        payoff_sum: Rational,
        #[serde(serialize_with = "crate::report::ser_exact")]
        deficit: Rational,
    },
}

/// Checks an outcome by direct arithmetic, without calling any solver.
///
/// Returns an empty list iff the outcome is stable. Blocking conditions are
/// checked for every pair of types, including a type with itself.
pub fn verify_outcome(inst: &Instance, outcome: &Outcome) -> Result<Vec<Violation>> {
    let m = inst.num_types();
    if outcome.payoffs.len() != m {
        return Err(Error::Dimension(format!("{} payoffs for {m} types", outcome.payoffs.len())));
    }
    if outcome.matching.mu.len() != m || outcome.matching.singles.len() != m {
        return Err(Error::Dimension(format!("matching dimensions do not match {m} types")));
    }
    let mut out = Vec::new();
    let infeasible = outcome.matching.violations(inst);
    if !infeasible.is_empty() {
        out.push(Violation::InfeasibleMatching { detail: infeasible.join("; ") });
    } else {
        let surplus = raw_surplus(&outcome.matching.mu, inst);
        let distributed = weighted_total(inst, &outcome.payoffs);
        if surplus != distributed {
            out.push(Violation::SurplusMismatch { distributed, surplus });
        }
    }
    let u = &outcome.payoffs;
    for x in 0..m {
        if u[x].is_negative() {
            out.push(Violation::IndividualRationality { type_index: x, payoff: u[x].clone() });
        }
    }
    for x in 0..m {
        for y in x..m {
            let surplus = inst.phi(x, y).max(inst.phi(y, x)).clone();
            let payoff_sum = &u[x] + &u[y];
            if payoff_sum < surplus {
                let deficit = &surplus - &payoff_sum;
                out.push(Violation::BlockingPair { first: x, second: y, surplus, payoff_sum, deficit });
            }
        }
    }
    Ok(out)
}

/// Why a particular matching cannot be supported by stable payoffs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockingReason {
    /// Matched partners cannot be paid nonnegative amounts that add up to their surplus.
    Unsupportable { detail: String },
    /// The pair blocks under every payoff split consistent with the matching.
    Pair {
        first: usize,
        second: usize,
        #[serde(serialize_with = "crate::report::ser_exact")]
        surplus: Rational,
        #[serde(serialize_with = "crate::report::ser_exact")]
        best_payoff_sum: Rational,
        #[serde(serialize_with = "crate::report::ser_exact")]
        deficit: Rational,
    },
    /// Either pair alone can be deterred, but not both: one needs the
    /// anchor's payoff at least `needs_at_least`, the other at most `needs_at_most`.
    Joint {
        anchor: usize,
        raising: (usize, usize),
        #[serde(serialize_with = "crate::report::ser_exact")]
        needs_at_least: Rational,
        lowering: (usize, usize),
        #[serde(serialize_with = "crate::report::ser_exact")]
        needs_at_most: Rational,
    },
    /// Residual case: some fractional matching beats this one by `shortfall`.
    Fractional {
        #[serde(serialize_with = "crate::report::ser_exact")]
        shortfall: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingDiagnosis {
    pub matching: RoommateMatching,
    pub surplus: Rational,
    pub stabilizable: bool,
    pub reasons: Vec<BlockingReason>,
    /// Supporting payoffs when the matching is stabilizable.
    pub payoffs: Option<Vec<Rational>>,
}

/// Payoff of type `x` as `offset + slope · t` in its component's parameter.
#[derive(Debug, Clone)]
struct Affine {
    comp: usize,
    slope: i32,
    offset: Rational,
}

#[derive(Debug, Clone)]
struct Component {
    root: usize,
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Component {
    fn admits(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| t >= l) && self.hi.as_ref().is_none_or(|h| t <= h)
    }
}

/// Explains whether (and why not) `matching` can be part of a stable outcome.
///
/// A matching is stabilizable iff its surplus equals the fractional optimum.
/// For unstabilizable matchings the payoff equalities it imposes are solved
/// parametrically to find pairs that block under every split, then pairs
/// of constraints that cannot hold together.
pub fn diagnose_matching(inst: &Instance, matching: &RoommateMatching) -> Result<MatchingDiagnosis> {
    let bipartite = solve_transportation(inst)?;
    let surplus = crate::roommate::surplus_of(matching, inst)?;
    let shortfall = &bipartite.value - &surplus;
    if shortfall.is_zero() {
        let certificate = Certificate::from_duals(inst, &bipartite.duals_v, &bipartite.duals_w);
        return Ok(MatchingDiagnosis {
            matching: matching.clone(),
            surplus,
            stabilizable: true,
            reasons: Vec::new(),
            payoffs: Some(certificate.payoffs),
        });
    }
    let mut reasons = match payoff_parametrization(inst, matching) {
        Err(detail) => vec![BlockingReason::Unsupportable { detail }],
        Ok((affine, comps)) => blocking_reasons(inst, &affine, &comps),
    };
    if reasons.is_empty() {
        reasons.push(BlockingReason::Fractional { shortfall });
    }
    Ok(MatchingDiagnosis { matching: matching.clone(), surplus, stabilizable: false, reasons, payoffs: None })
}

/// Solves the equalities a matching imposes on payoffs (`u_x = 0` for types
/// with singles, `u_x + u_y = Φ_xy` on matched pairs) together with `u ≥ 0`.
/// Types with no individuals are left free in `[0, ∞)`.
fn payoff_parametrization(
    inst: &Instance,
    matching: &RoommateMatching,
) -> std::result::Result<(Vec<Affine>, Vec<Component>), String> {
    let m = inst.num_types();
    let mut affine: Vec<Option<Affine>> = vec![None; m];
    let mut comps: Vec<Component> = Vec::new();
    let mut fixed: Vec<Option<Rational>> = Vec::new();

    for root in 0..m {
        if affine[root].is_some() {
            continue;
        }
        let c = comps.len();
        comps.push(Component { root, lo: None, hi: None });
        fixed.push(None);
        affine[root] = Some(Affine { comp: c, slope: 1, offset: Rational::zero() });
        let mut queue = VecDeque::from([root]);
        let mut members = Vec::new();
        while let Some(x) = queue.pop_front() {
            members.push(x);
            let ax = affine[x].clone().expect("visited");
            let mut pin = |value: Rational, why: String| -> std::result::Result<(), String> {
                match &fixed[c] {
                    Some(t) if *t != value => Err(why),
                    _ => {
                        fixed[c] = Some(value);
                        Ok(())
                    }
                }
            };
            if matching.singles[x] > 0 {
                // u_x = 0
                let t = -ax.offset.clone() / Rational::from_integer(BigInt::from(ax.slope));
                pin(
                    t,
                    format!("type {} has singles but its matched partners force a positive payoff", inst.labels[x]),
                )?;
            }
            for y in 0..m {
                if matching.mu[x][y] == 0 {
                    continue;
                }
                let phi = inst.phi(x, y).clone();
                match &affine[y] {
                    None => {
                        affine[y] = Some(Affine { comp: c, slope: -ax.slope, offset: &phi - &ax.offset });
                        queue.push_back(y);
                    }
                    Some(ay) => {
                        let slope = ax.slope + ay.slope;
                        let rest = &phi - &ax.offset - &ay.offset;
                        let why = format!(
                            "matched pairs around types {} and {} impose inconsistent payoffs",
                            inst.labels[x], inst.labels[y]
                        );
                        if slope == 0 {
                            if !rest.is_zero() {
                                return Err(why);
                            }
                        } else {
                            pin(rest / Rational::from_integer(BigInt::from(slope)), why)?;
                        }
                    }
                }
            }
        }
        // nonnegativity of every member
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for &x in &members {
            let a = affine[x].as_ref().expect("visited");
            let bound = -a.offset.clone() / Rational::from_integer(BigInt::from(a.slope));
            if a.slope > 0 {
                lo = Some(lo.map_or(bound.clone(), |l: Rational| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h: Rational| h.min(bound)));
            }
        }
        if let Some(t) = &fixed[c] {
            if lo.as_ref().is_some_and(|l| t < l) || hi.as_ref().is_some_and(|h| t > h) {
                return Err("matched partners cannot all receive nonnegative payoffs".into());
            }
            lo = Some(t.clone());
            hi = Some(t.clone());
        } else if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return Err("matched partners cannot all receive nonnegative payoffs".into());
            }
        }
        comps[c].lo = lo;
        comps[c].hi = hi;
    }
    Ok((affine.into_iter().map(|a| a.expect("all visited")).collect(), comps))
}

/// Maximum of `slope · t` over the component interval, `None` if unbounded.
fn max_term(slope: i32, comp: &Component) -> Option<Rational> {
    let s = Rational::from_integer(BigInt::from(slope));
    match slope.signum() {
        0 => Some(Rational::zero()),
        1 => comp.hi.as_ref().map(|h| s * h),
        _ => comp.lo.as_ref().map(|l| s * l),
    }
}

fn blocking_reasons(inst: &Instance, affine: &[Affine], comps: &[Component]) -> Vec<BlockingReason> {
    let m = inst.num_types();
    let mut reasons = Vec::new();
    // (component, pair, bound) for constraints that bind a single parameter
    let mut lowers: Vec<(usize, (usize, usize), Rational)> = Vec::new();
    let mut uppers: Vec<(usize, (usize, usize), Rational)> = Vec::new();

    for x in 0..m {
        for y in x..m {
            let phi = inst.phi(x, y).max(inst.phi(y, x)).clone();
            let (ax, ay) = (&affine[x], &affine[y]);
            let consts = &ax.offset + &ay.offset;
            // the best split for this pair
            let best = if ax.comp == ay.comp {
                max_term(ax.slope + ay.slope, &comps[ax.comp]).map(|t| t + &consts)
            } else {
                match (max_term(ax.slope, &comps[ax.comp]), max_term(ay.slope, &comps[ay.comp])) {
                    (Some(a), Some(b)) => Some(a + b + &consts),
                    _ => None,
                }
            };
            if let Some(best) = best {
                if best < phi {
                    let deficit = &phi - &best;
                    reasons.push(BlockingReason::Pair {
                        first: x,
                        second: y,
                        surplus: phi,
                        best_payoff_sum: best,
                        deficit,
                    });
                    continue;
                }
            }
            // constraint as slope · t ≥ rhs on a single component parameter
            let single = if ax.comp == ay.comp {
                Some((ax.comp, ax.slope + ay.slope))
            } else if comps[ay.comp].lo.is_some() && comps[ay.comp].lo == comps[ay.comp].hi {
                Some((ax.comp, ax.slope))
            } else if comps[ax.comp].lo.is_some() && comps[ax.comp].lo == comps[ax.comp].hi {
                Some((ay.comp, ay.slope))
            } else {
                None
            };
            let Some((c, slope)) = single else { continue };
            if slope == 0 || comps[c].lo.is_some() && comps[c].lo == comps[c].hi {
                continue;
            }
            let fixed_part = if ax.comp == ay.comp {
                consts.clone()
            } else if ax.comp == c {
                let t = comps[ay.comp].lo.clone().expect("fixed");
                &consts + Rational::from_integer(BigInt::from(ay.slope)) * t
            } else {
                let t = comps[ax.comp].lo.clone().expect("fixed");
                &consts + Rational::from_integer(BigInt::from(ax.slope)) * t
            };
            let bound = (&phi - fixed_part) / Rational::from_integer(BigInt::from(slope));
            if slope > 0 {
                lowers.push((c, (x, y), bound));
            } else {
                uppers.push((c, (x, y), bound));
            }
        }
    }

    for (c, raising, lo) in &lowers {
        for (c2, lowering, hi) in &uppers {
            if c != c2 || lo <= hi {
                continue;
            }
            if !comps[*c].admits(lo) || !comps[*c].admits(hi) {
                continue;
            }
            reasons.push(BlockingReason::Joint {
                anchor: comps[*c].root,
                raising: *raising,
                needs_at_least: lo.clone(),
                lowering: *lowering,
                needs_at_most: hi.clone(),
            });
        }
    }
    reasons
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn example1() -> Instance {
        Instance::from_integers(&[1, 1, 1], &[&[0, 6, 8], &[6, 0, 5], &[8, 5, 0]]).unwrap()
    }

    fn cloned() -> Instance {
        Instance::from_integers(&[2, 2, 2], &[&[2, 6, 8], &[6, 2, 5], &[8, 5, 2]]).unwrap()
    }

    #[test]
    fn example_one_is_unstable() {
        let v = decide_stability(&example1()).unwrap();
        assert!(!v.stable);
        assert_eq!(v.w_p, int(8));
        assert_eq!(v.w_f, ratio(19, 2));
        assert_eq!(v.gap, ratio(3, 2));
        assert!(v.outcome.is_none());
        assert!(v.certificate.violations(&example1()).is_empty());
        assert_eq!(v.certificate.objective, ratio(19, 2));
    }

    #[test]
    fn cloned_example_is_stable() {
        let inst = cloned();
        let v = decide_stability(&inst).unwrap();
        assert!(v.stable);
        assert_eq!(v.w_p, int(19));
        assert_eq!(v.w_f, int(19));
        let o = v.outcome.unwrap();
        assert_eq!(o.payoffs, vec![ratio(9, 2), ratio(3, 2), ratio(7, 2)]);
        assert_eq!(o.matching.upper_triangle(), vec![0, 1, 1, 0, 1, 0]);
        assert!(verify_outcome(&inst, &o).unwrap().is_empty());
    }

    #[test]
    fn single_type_pair_splits_evenly() {
        let inst = Instance::from_integers(&[2], &[&[4]]).unwrap();
        let o = construct_stable_outcome(&inst).unwrap().unwrap();
        assert_eq!(o.payoffs, vec![int(2)]);
        let cert = dual_certificate(&inst).unwrap();
        assert_eq!(cert.multipliers, vec![vec![int(0)]]);
    }

    #[test]
    fn negative_market_pays_nothing() {
        let inst = Instance::from_integers(&[3, 1], &[&[-2, -1], &[-1, -7]]).unwrap();
        let o = construct_stable_outcome(&inst).unwrap().unwrap();
        assert_eq!(o.payoffs, vec![int(0), int(0)]);
        assert_eq!(o.matching.singles, vec![3, 1]);
    }

    #[test]
    fn certificate_payoffs_for_example_one() {
        let inst = example1();
        let cert = dual_certificate(&inst).unwrap();
        assert_eq!(cert.payoffs, vec![ratio(9, 2), ratio(3, 2), ratio(7, 2)]);
        assert_eq!(cert.objective, ratio(19, 2));
        assert!(cert.violations(&inst).is_empty());

        let sym = vec![ratio(9, 4), ratio(3, 4), ratio(7, 4)];
        let cert = Certificate::from_duals(&inst, &sym, &sym);
        assert!(cert.multipliers.iter().flatten().all(Zero::is_zero));
        assert_eq!(cert.objective, ratio(19, 2));
        assert!(cert.violations(&inst).is_empty());
    }

    #[test]
    fn cloned_certificate_objective() {
        let cert = dual_certificate(&cloned()).unwrap();
        assert_eq!(cert.payoffs, vec![ratio(9, 2), ratio(3, 2), ratio(7, 2)]);
        assert_eq!(cert.objective, int(19));
    }

    #[test]
    fn verify_flags_blocking_pair() {
        let inst = example1();
        let matching = RoommateMatching::from_pairs(&inst, &[(0, 2, 1)]).unwrap();
        let o = Outcome { matching, payoffs: vec![int(4), int(0), int(4)] };
        let v = verify_outcome(&inst, &o).unwrap();
        assert!(v.contains(&Violation::BlockingPair {
            first: 0,
            second: 1,
            surplus: int(6),
            payoff_sum: int(4),
            deficit: int(2),
        }));
    }

    #[test]
    fn verify_flags_negative_payoff_and_mismatch() {
        let inst = example1();
        let o = Outcome { matching: RoommateMatching::empty(&inst), payoffs: vec![int(-1), int(0), int(0)] };
        let v = verify_outcome(&inst, &o).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::IndividualRationality { type_index: 0, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::SurplusMismatch { .. })));
        let short = Outcome { matching: RoommateMatching::empty(&inst), payoffs: vec![int(0)] };
        assert!(matches!(verify_outcome(&inst, &short), Err(Error::Dimension(_))));
    }

    #[test]
    fn diagnoses_for_example_one_candidates() {
        let inst = example1();
        let d12 = diagnose_matching(&inst, &RoommateMatching::from_pairs(&inst, &[(0, 1, 1)]).unwrap()).unwrap();
        assert!(!d12.stabilizable);
        assert_eq!(
            d12.reasons,
            vec![BlockingReason::Pair {
                first: 0,
                second: 2,
                surplus: int(8),
                best_payoff_sum: int(6),
                deficit: int(2)
            }]
        );

        let d23 = diagnose_matching(&inst, &RoommateMatching::from_pairs(&inst, &[(1, 2, 1)]).unwrap()).unwrap();
        let pairs: Vec<(usize, usize)> = d23
            .reasons
            .iter()
            .map(|r| match r {
                BlockingReason::Pair { first, second, .. } => (*first, *second),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2)]);

        let d13 = diagnose_matching(&inst, &RoommateMatching::from_pairs(&inst, &[(0, 2, 1)]).unwrap()).unwrap();
        assert_eq!(
            d13.reasons,
            vec![BlockingReason::Joint {
                anchor: 0,
                raising: (0, 1),
                needs_at_least: int(6),
                lowering: (1, 2),
                needs_at_most: int(3),
            }]
        );
    }

    #[test]
    fn diagnosis_of_stable_matching() {
        let inst = cloned();
        let m = RoommateMatching::from_pairs(&inst, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap();
        let d = diagnose_matching(&inst, &m).unwrap();
        assert!(d.stabilizable);
        assert_eq!(d.payoffs.unwrap(), vec![ratio(9, 2), ratio(3, 2), ratio(7, 2)]);
    }

    #[test]
    fn diagnosis_of_individually_irrational_match() {
        let inst = Instance::from_integers(&[1, 1], &[&[0, -3], &[-3, 0]]).unwrap();
        let m = RoommateMatching::from_pairs(&inst, &[(0, 1, 1)]).unwrap();
        let d = diagnose_matching(&inst, &m).unwrap();
        assert!(matches!(d.reasons[0], BlockingReason::Unsupportable { .. }));
    }
}
