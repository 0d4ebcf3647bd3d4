//! Integer roommate matchings: evaluation, the exact optimum by
//! branch-and-bound over the type-level program, and an individual-level
//! brute-force oracle for small populations.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{common_denominator, scaled_integer, Rational};
use crate::transport::solve_flow;

pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000;
pub const ORACLE_LIMIT: u64 = 12;

/// Type-level roommate matching: `mu[x][y]` pairs between types `x` and `y`
/// (symmetric) and `singles[x]` unmatched individuals of type `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RoommateMatching {
    pub mu: Vec<Vec<u64>>,
    pub singles: Vec<u64>,
}

impl RoommateMatching {
    /// Everyone single.
    pub fn empty(inst: &Instance) -> Self {
        let m = inst.num_types();
        RoommateMatching { mu: vec![vec![0; m]; m], singles: inst.counts_u64() }
    }

    /// Builds a matching from unordered pair counts, filling in singles.
    pub fn from_pairs(inst: &Instance, pairs: &[(usize, usize, u64)]) -> Result<Self> {
        let m = inst.num_types();
        let mut mu = vec![vec![0u64; m]; m];
        for &(x, y, k) in pairs {
            if x >= m || y >= m {
                return Err(Error::Dimension(format!("pair ({x},{y}) outside {m} types")));
            }
            mu[x][y] += k;
            if x != y {
                mu[y][x] += k;
            }
        }
        let mut singles = Vec::with_capacity(m);
        for x in 0..m {
            let used = used_by(&mu, x);
            if used > inst.count(x) {
                return Err(Error::InfeasibleMatching(format!(
                    "type {} needs {used} individuals but has {}",
                    inst.labels[x],
                    inst.count(x)
                )));
            }
            singles.push(inst.count(x) - used);
        }
        Ok(RoommateMatching { mu, singles })
    }

    /// Upper-triangular entries read row-major, the order used for tie-breaking.
    pub fn upper_triangle(&self) -> Vec<u64> {
        let m = self.mu.len();
        (0..m).flat_map(|x| (x..m).map(move |y| (x, y))).map(|(x, y)| self.mu[x][y]).collect()
    }

    pub fn pair_count(&self) -> u64 {
        self.upper_triangle().iter().sum()
    }

    /// Reasons this matching is not feasible for `inst`; empty when it is.
    pub fn violations(&self, inst: &Instance) -> Vec<String> {
        let m = inst.num_types();
        let mut out = Vec::new();
        if self.mu.len() != m || self.mu.iter().any(|r| r.len() != m) || self.singles.len() != m {
            out.push(format!("matching dimensions do not match {m} types"));
            return out;
        }
        for x in 0..m {
            for y in 0..m {
                if self.mu[x][y] != self.mu[y][x] {
                    out.push(format!("asymmetric entry ({x},{y})"));
                }
            }
            let total = used_by(&self.mu, x) + self.singles[x];
            if total != inst.count(x) {
                out.push(format!(
                    "type {} accounts for {total} individuals, expected {}",
                    inst.labels[x],
                    inst.count(x)
                ));
            }
        }
        out
    }
}

fn used_by(mu: &[Vec<u64>], x: usize) -> u64 {
    2 * mu[x][x] + (0..mu.len()).filter(|&y| y != x).map(|y| mu[x][y]).sum::<u64>()
}

/// Total surplus `Σ_x μ_xx Φ_xx + Σ_{x<y} μ_xy Φ_xy` of a feasible matching.
pub fn surplus_of(matching: &RoommateMatching, inst: &Instance) -> Result<Rational> {
    inst.ensure_valid()?;
    let v = matching.violations(inst);
    if !v.is_empty() {
        return Err(Error::InfeasibleMatching(v.join("; ")));
    }
    Ok(raw_surplus(&matching.mu, inst))
}

pub(crate) fn raw_surplus(mu: &[Vec<u64>], inst: &Instance) -> Rational {
    let m = mu.len();
    let mut total = Rational::zero();
    for x in 0..m {
        for y in x..m {
            if mu[x][y] > 0 {
                total += Rational::from_integer(BigInt::from(mu[x][y])) * inst.phi(x, y);
            }
        }
    }
    total
}

/// Search statistics from the last branch-and-bound run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Maximum-surplus integer roommate matching.
///
/// Among optimal matchings the lexicographically largest upper triangle of
/// `μ` (read row-major) is returned.
pub fn solve_integer_optimum(inst: &Instance) -> Result<(RoommateMatching, Rational)> {
    solve_integer_optimum_with_limit(inst, DEFAULT_NODE_LIMIT).map(|(m, v, _)| (m, v))
}

pub fn solve_integer_optimum_with_limit(
    inst: &Instance,
    node_limit: u64,
) -> Result<(RoommateMatching, Rational, SearchStats)> {
    inst.ensure_exchangeable()?;
    let problem = BranchProblem::new(inst);
    let (mu, stats) = problem.search(node_limit)?;
    let matching = RoommateMatching::from_pairs(
        inst,
        &problem.coords.iter().zip(&mu).filter(|(_, &k)| k > 0).map(|(&(x, y), &k)| (x, y, k)).collect::<Vec<_>>(),
    )?;
    let value = raw_surplus(&matching.mu, inst);
    Ok((matching, value, stats))
}

/// The type-level integer program with an exactly perturbed objective.
///
/// Coordinate `k` (an unordered pair `x ≤ y`) carries weight
/// `Φ_k · D · R + r_k` where `D` clears the denominators of `Φ`, `R` is the
/// product of all `(upper_k + 1)` and `r_k` the product over later
/// coordinates. Distinct feasible integer matchings then have distinct
/// objectives, ordered first by surplus and then lexicographically.
struct BranchProblem<'a> {
    inst: &'a Instance,
    coords: Vec<(usize, usize)>,
    upper: Vec<u64>,
    weight: Vec<BigInt>,
    cell_weight: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone)]
struct Node {
    lower: Vec<u64>,
    upper: Vec<u64>,
}

enum Relaxation {
    Infeasible,
    /// Doubled objective and doubled coordinates (`2μ_k`).
    Solved {
        bound: BigInt,
        twice: Vec<u64>,
    },
}

impl<'a> BranchProblem<'a> {
    fn new(inst: &'a Instance) -> Self {
        let m = inst.num_types();
        let coords: Vec<(usize, usize)> = (0..m).flat_map(|x| (x..m).map(move |y| (x, y))).collect();
        let upper: Vec<u64> = coords
            .iter()
            .map(|&(x, y)| if x == y { inst.count(x) / 2 } else { inst.count(x).min(inst.count(y)) })
            .collect();
        let denom = common_denominator(inst.surplus.iter().flatten());
        let mut radix = vec![BigInt::one(); coords.len() + 1];
        for k in (0..coords.len()).rev() {
            radix[k] = &radix[k + 1] * BigInt::from(upper[k] + 1);
        }
        let weight: Vec<BigInt> = coords
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| scaled_integer(inst.phi(x, y), &denom) * &radix[0] + &radix[k + 1])
            .collect();
        let mut cell_weight = vec![vec![BigInt::zero(); m]; m];
        for (k, &(x, y)) in coords.iter().enumerate() {
            cell_weight[x][y] = weight[k].clone();
            cell_weight[y][x] = weight[k].clone();
        }
        BranchProblem { inst, coords, upper, weight, cell_weight }
    }

    fn objective(&self, mu: &[u64]) -> BigInt {
        mu.iter().zip(&self.weight).map(|(&k, w)| w * BigInt::from(k)).sum()
    }

    fn relax(&self, node: &Node) -> Relaxation {
        let m = self.inst.num_types();
        let mut residual: Vec<i64> = (0..m).map(|x| self.inst.count(x) as i64).collect();
        let mut caps = vec![vec![0u64; m]; m];
        for (k, &(x, y)) in self.coords.iter().enumerate() {
            let lo = node.lower[k] as i64;
            if x == y {
                residual[x] -= 2 * lo;
                caps[x][x] = 2 * (node.upper[k] - node.lower[k]);
            } else {
                residual[x] -= lo;
                residual[y] -= lo;
                caps[x][y] = node.upper[k] - node.lower[k];
                caps[y][x] = caps[x][y];
            }
        }
        if residual.iter().any(|&r| r < 0) {
            return Relaxation::Infeasible;
        }
        let residual: Vec<u64> = residual.into_iter().map(|r| r as u64).collect();
        let flow = solve_flow(&residual, &residual, &self.cell_weight, Some(&caps));
        let twice: Vec<u64> = self
            .coords
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| {
                let extra = if x == y { flow.flow[x][x] } else { flow.flow[x][y] + flow.flow[y][x] };
                2 * node.lower[k] + extra
            })
            .collect();
        let bound = self.objective(&node.lower) * 2 + flow.value;
        Relaxation::Solved { bound, twice }
    }

    /// Fractional coordinate with the largest surplus, ties to the first in row-major order.
    fn branch_coordinate(&self, twice: &[u64]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, &t) in twice.iter().enumerate() {
            if t % 2 == 1 {
                let (x, y) = self.coords[k];
                let better = match best {
                    None => true,
                    Some(b) => {
                        let (bx, by) = self.coords[b];
                        self.inst.phi(x, y) > self.inst.phi(bx, by)
                    }
                };
                if better {
                    best = Some(k);
                }
            }
        }
        best
    }

    fn search(&self, node_limit: u64) -> Result<(Vec<u64>, SearchStats)> {
        let k = self.coords.len();
        let mut stats = SearchStats::default();
        let mut best: Vec<u64> = vec![0; k];
        let mut best_twice = BigInt::zero();
        let mut stack = vec![Node { lower: vec![0; k], upper: self.upper.clone() }];

        while let Some(node) = stack.pop() {
            if stats.nodes >= node_limit {
                return Err(Error::NodeLimit(node_limit));
            }
            stats.nodes += 1;
            let (bound, twice) = match self.relax(&node) {
                Relaxation::Infeasible => continue,
                Relaxation::Solved { bound, twice } => (bound, twice),
            };
            if bound <= best_twice {
                continue;
            }
            // rounding every coordinate down stays feasible
            let floor: Vec<u64> = twice.iter().map(|t| t / 2).collect();
            let floor_twice = self.objective(&floor) * 2;
            if floor_twice > best_twice {
                best_twice = floor_twice;
                best = floor;
            }
            let Some(b) = self.branch_coordinate(&twice) else {
                continue; // integral: the floor above is the node optimum
            };
            let down = twice[b] / 2;
            let mut lo = node.clone();
            lo.upper[b] = down;
            let mut hi = node;
            hi.lower[b] = down + 1;
            stack.push(lo);
            stack.push(hi);
        }
        Ok((best, stats))
    }
}

/// Individual-level exhaustive search over all partitions into pairs and
/// singles; ties go to the lexicographically largest type-level matching.
pub fn brute_force_optimum(inst: &Instance) -> Result<(RoommateMatching, Rational)> {
    inst.ensure_exchangeable()?;
    let population = inst.population();
    if population > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge { population, limit: ORACLE_LIMIT });
    }
    let mut best: Option<(Rational, Vec<u64>, RoommateMatching)> = None;
    for matching in individual_matchings(inst) {
        let value = raw_surplus(&matching.mu, inst);
        let key = matching.upper_triangle();
        let better = match &best {
            None => true,
            Some((bv, bk, _)) => value > *bv || (value == *bv && key > *bk),
        };
        if better {
            best = Some((value, key, matching));
        }
    }
    let (value, _, matching) = best.expect("the empty matching always exists");
    Ok((matching, value))
}

/// Distinct type-level matchings reachable by pairing individuals; every
/// individual is enumerated separately, duplicates are removed afterwards.
fn individual_matchings(inst: &Instance) -> Vec<RoommateMatching> {
    let m = inst.num_types();
    let people: Vec<usize> = (0..m).flat_map(|x| std::iter::repeat_n(x, inst.count(x) as usize)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut assigned = vec![false; people.len()];
    let mut mu = vec![vec![0u64; m]; m];
    fn rec(
        i: usize,
        people: &[usize],
        assigned: &mut [bool],
        mu: &mut Vec<Vec<u64>>,
        seen: &mut HashSet<Vec<Vec<u64>>>,
        out: &mut Vec<Vec<Vec<u64>>>,
    ) {
        let Some(i) = (i..people.len()).find(|&j| !assigned[j]) else {
            if seen.insert(mu.clone()) {
                out.push(mu.clone());
            }
            return;
        };
        assigned[i] = true;
        rec(i + 1, people, assigned, mu, seen, out);
        for j in i + 1..people.len() {
            if assigned[j] {
                continue;
            }
            assigned[j] = true;
            let (a, b) = (people[i], people[j]);
            mu[a][b] += 1;
            if a != b {
                mu[b][a] += 1;
            }
            rec(i + 1, people, assigned, mu, seen, out);
            mu[a][b] -= 1;
            if a != b {
                mu[b][a] -= 1;
            }
            assigned[j] = false;
        }
        assigned[i] = false;
    }
    let mut raw = Vec::new();
    rec(0, &people, &mut assigned, &mut mu, &mut seen, &mut raw);
    for mu in raw {
        let singles = (0..m).map(|x| inst.count(x) - used_by(&mu, x)).collect();
        out.push(RoommateMatching { mu, singles });
    }
    out
}

/// Every feasible type-level matching in which no two singles could still
/// pair up (so at most one single per type). Intended for small instances.
pub fn maximal_matchings(inst: &Instance) -> Vec<RoommateMatching> {
    let m = inst.num_types();
    let coords: Vec<(usize, usize)> = (0..m).flat_map(|x| (x..m).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    let mut mu = vec![vec![0u64; m]; m];
    let mut left: Vec<u64> = inst.counts_u64();
    fn rec(
        k: usize,
        coords: &[(usize, usize)],
        mu: &mut Vec<Vec<u64>>,
        left: &mut Vec<u64>,
        out: &mut Vec<RoommateMatching>,
    ) {
        if k == coords.len() {
            let singles_types = left.iter().filter(|&&s| s > 0).count();
            if left.iter().all(|&s| s <= 1) && singles_types <= 1 {
                out.push(RoommateMatching { mu: mu.clone(), singles: left.clone() });
            }
            return;
        }
        let (x, y) = coords[k];
        let max = if x == y { left[x] / 2 } else { left[x].min(left[y]) };
        for c in (0..=max).rev() {
            mu[x][y] = c;
            mu[y][x] = c;
            if x == y {
                left[x] -= 2 * c;
            } else {
                left[x] -= c;
                left[y] -= c;
            }
            rec(k + 1, coords, mu, left, out);
            if x == y {
                left[x] += 2 * c;
            } else {
                left[x] += c;
                left[y] += c;
            }
        }
        mu[x][y] = 0;
        mu[y][x] = 0;
    }
    rec(0, &coords, &mut mu, &mut left, &mut out);
    out
}
