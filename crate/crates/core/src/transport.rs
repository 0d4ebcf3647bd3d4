//! The associated bipartite (transportation) problem and the half-integral
//! fractional roommate optimum derived from it.
//!
//! Two copies of the population face each other with surplus `Φ/2`. The
//! problem is solved as a min-cost flow by successive shortest augmenting
//! paths over exact integers (the surplus matrix is rescaled by the common
//! denominator of its entries), which yields an integral primal and, from the
//! final residual potentials, exact optimal dual potentials.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::instance::Instance;
use crate::rational::{common_denominator, scaled_integer, Rational};

/// Integral optimum of the bipartite problem with exact optimal duals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSolution {
    pub nu: Vec<Vec<u64>>,
    pub duals_v: Vec<Rational>,
    pub duals_w: Vec<Rational>,
    pub value: Rational,
}

/// Symmetric fractional roommate matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    pub mu: Vec<Vec<Rational>>,
    pub value: Rational,
}

impl FractionalMatching {
    pub fn is_half_integral(&self) -> bool {
        let two = BigInt::from(2);
        self.mu.iter().flatten().all(|m| m.denom() == &BigInt::from(1) || m.denom() == &two)
    }

    pub fn is_integral(&self) -> bool {
        self.mu.iter().flatten().all(|m| m.is_integer())
    }
}

/// Maximizes `Σ ν_xy Φ_xy / 2` over integer `ν` with row and column sums at most `n`.
pub fn solve_transportation(inst: &Instance) -> Result<BipartiteSolution> {
    inst.ensure_exchangeable()?;
    let m = inst.num_types();
    let scale = common_denominator(inst.surplus.iter().flatten());
    let weights: Vec<Vec<BigInt>> =
        inst.surplus.iter().map(|row| row.iter().map(|v| scaled_integer(v, &scale)).collect()).collect();
    let counts = inst.counts_u64();
    let sol = solve_flow(&counts, &counts, &weights, None);

    // Potentials are in units of Φ·scale; the bipartite surplus is Φ/2.
    let unit = Rational::from_integer(scale * 2);
    let to_rational = |b: &BigInt| Rational::from_integer(b.clone()) / &unit;
    let out = BipartiteSolution {
        nu: sol.flow,
        duals_v: sol.row_duals.iter().map(to_rational).collect(),
        duals_w: sol.col_duals.iter().map(to_rational).collect(),
        value: to_rational(&sol.value),
    };
    debug_assert_eq!(out.nu.len(), m);
    Ok(out)
}

impl BipartiteSolution {
    /// Symmetrizes the bipartite optimum into a fractional roommate matching:
    /// `μ_xy = (ν_xy + ν_yx)/2` off the diagonal and `μ_xx = ν_xx/2`.
    pub fn symmetrized(&self, inst: &Instance) -> FractionalMatching {
        let m = self.nu.len();
        let half = |k: u64| Rational::new(BigInt::from(k), BigInt::from(2));
        let mut mu = vec![vec![Rational::zero(); m]; m];
        for x in 0..m {
            for y in 0..m {
                mu[x][y] = if x == y { half(self.nu[x][x]) } else { half(self.nu[x][y] + self.nu[y][x]) };
            }
        }
        let value = fractional_surplus(&mu, inst);
        FractionalMatching { mu, value }
    }

    /// Every violated primal/dual optimality condition, described in words.
    /// Empty iff `nu` and the duals certify each other's optimality.
    pub fn certificate_violations(&self, inst: &Instance) -> Vec<String> {
        let m = inst.num_types();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let mut out = Vec::new();
        let mut primal = Rational::zero();
        for x in 0..m {
            let row: u64 = self.nu[x].iter().sum();
            let col: u64 = (0..m).map(|z| self.nu[z][x]).sum();
            if row > inst.count(x) {
                out.push(format!("row {x} uses {row} > n = {}", inst.count(x)));
            }
            if col > inst.count(x) {
                out.push(format!("column {x} uses {col} > n = {}", inst.count(x)));
            }
            if self.duals_v[x].is_negative() || self.duals_w[x].is_negative() {
                out.push(format!("negative dual at type {x}"));
            }
            if row < inst.count(x) && !self.duals_v[x].is_zero() {
                out.push(format!("row {x} has slack but v = {}", self.duals_v[x]));
            }
            if col < inst.count(x) && !self.duals_w[x].is_zero() {
                out.push(format!("column {x} has slack but w = {}", self.duals_w[x]));
            }
            for y in 0..m {
                let target = inst.phi(x, y) * &half;
                let lhs = &self.duals_v[x] + &self.duals_w[y];
                if lhs < target {
                    out.push(format!("dual constraint ({x},{y}) violated: {lhs} < {target}"));
                }
                if self.nu[x][y] > 0 && lhs != target {
                    out.push(format!("complementary slackness fails at ({x},{y})"));
                }
                primal += Rational::from_integer(BigInt::from(self.nu[x][y])) * &target;
            }
        }
        let dual: Rational = (0..m)
            .map(|x| Rational::from_integer(BigInt::from(inst.count(x))) * (&self.duals_v[x] + &self.duals_w[x]))
            .sum();
        if primal != self.value {
            out.push(format!("reported value {} differs from Σν·Φ/2 = {}", self.value, primal));
        }
        if dual != self.value {
            out.push(format!("dual objective {} differs from value {}", dual, self.value));
        }
        out
    }
}

/// Half-integral optimum of the fractional roommate relaxation.
pub fn half_integral_optimum(inst: &Instance) -> Result<FractionalMatching> {
    let sol = solve_transportation(inst)?;
    Ok(sol.symmetrized(inst))
}

/// `Σ_x μ_xx Φ_xx + Σ_{x≠y} μ_xy Φ_xy / 2`.
pub fn fractional_surplus(mu: &[Vec<Rational>], inst: &Instance) -> Rational {
    let m = mu.len();
    let two = Rational::from_integer(BigInt::from(2));
    let mut total = Rational::zero();
    for x in 0..m {
        for y in 0..m {
            if x == y {
                total += &mu[x][x] * inst.phi(x, x);
            } else {
                total += &mu[x][y] * inst.phi(x, y) / &two;
            }
        }
    }
    total
}

/// Optimal integral flow with its objective and dual potentials, all in the
/// integer units of the supplied weights.
#[derive(Debug, Clone)]
pub(crate) struct FlowSolution {
    pub flow: Vec<Vec<u64>>,
    pub value: BigInt,
    pub row_duals: Vec<BigInt>,
    pub col_duals: Vec<BigInt>,
}

/// Maximizes `Σ ν_xy weight_xy` subject to row sums `≤ rows`, column sums
/// `≤ cols` and optional per-cell caps. Cells with nonpositive weight are
/// never used. Dual potentials are only meaningful when `caps` is `None`.
pub(crate) fn solve_flow(
    rows: &[u64],
    cols: &[u64],
    weight: &[Vec<BigInt>],
    caps: Option<&[Vec<u64>]>,
) -> FlowSolution {
    let m = rows.len();
    let big: i64 = rows.iter().chain(cols).sum::<u64>() as i64 + 1;
    // node layout: source, rows, columns, sink
    let source = 0;
    let row = |x: usize| 1 + x;
    let col = |y: usize| 1 + m + y;
    let sink = 1 + 2 * m;
    let mut net = Network::new(sink + 1);

    for x in 0..m {
        net.add_arc(source, row(x), rows[x] as i64, BigInt::zero());
    }
    let mut cell_arc = vec![vec![None; m]; m];
    for x in 0..m {
        for y in 0..m {
            let cap = caps.map_or(big, |c| c[x][y] as i64);
            if weight[x][y].is_positive() && cap > 0 {
                cell_arc[x][y] = Some(net.add_arc(row(x), col(y), cap, -weight[x][y].clone()));
            }
        }
    }
    for y in 0..m {
        net.add_arc(col(y), sink, cols[y] as i64, BigInt::zero());
    }
    // row slack: unmatched individuals route straight to the sink at zero cost
    for x in 0..m {
        net.add_arc(row(x), sink, big, BigInt::zero());
    }

    net.successive_shortest_paths(source, sink);

    let mut flow = vec![vec![0u64; m]; m];
    let mut value = BigInt::zero();
    for x in 0..m {
        for y in 0..m {
            if let Some(e) = cell_arc[x][y] {
                let f = net.flow(e);
                flow[x][y] = f as u64;
                value += &weight[x][y] * BigInt::from(f);
            }
        }
    }

    let d = net.potentials();
    let row_duals = (0..m).map(|x| &d[row(x)] - &d[sink]).collect();
    let col_duals = (0..m)
        .map(|y| {
            let w = &d[sink] - &d[col(y)];
            if w.is_negative() {
                BigInt::zero()
            } else {
                w
            }
        })
        .collect();
    FlowSolution { flow, value, row_duals, col_duals }
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    residual: i64,
    cost: BigInt,
}

/// Residual network; arc `e` and `e ^ 1` are mutual reverses.
#[derive(Debug, Clone)]
struct Network {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    original_cap: Vec<i64>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { arcs: Vec::new(), adj: vec![Vec::new(); nodes], original_cap: Vec::new() }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: BigInt) -> usize {
        let e = self.arcs.len();
        self.arcs.push(Arc { to, residual: cap, cost: cost.clone() });
        self.arcs.push(Arc { to: from, residual: 0, cost: -cost });
        self.original_cap.extend([cap, 0]);
        self.adj[from].push(e);
        self.adj[to].push(e + 1);
        e
    }

    fn flow(&self, e: usize) -> i64 {
        self.original_cap[e] - self.arcs[e].residual
    }

    /// Bellman-Ford (queue based) over arcs with positive residual capacity.
    /// `init` seeds every node's label; returns labels and predecessor arcs.
    fn shortest_paths(&self, init: Vec<Option<BigInt>>) -> (Vec<Option<BigInt>>, Vec<Option<usize>>) {
        let n = self.adj.len();
        let mut dist = init;
        let mut pred = vec![None; n];
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        for (v, d) in dist.iter().enumerate() {
            if d.is_some() {
                queue.push_back(v);
                queued[v] = true;
            }
        }
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            let du = dist[u].clone().expect("queued nodes are labelled");
            for &e in &self.adj[u] {
                let arc = &self.arcs[e];
                if arc.residual <= 0 {
                    continue;
                }
                let cand = &du + &arc.cost;
                if dist[arc.to].as_ref().is_none_or(|d| cand < *d) {
                    dist[arc.to] = Some(cand);
                    pred[arc.to] = Some(e);
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        (dist, pred)
    }

    fn successive_shortest_paths(&mut self, source: usize, sink: usize) {
        let n = self.adj.len();
        loop {
            let mut init = vec![None; n];
            init[source] = Some(BigInt::zero());
            let (dist, pred) = self.shortest_paths(init);
            if dist[sink].is_none() {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path to sink");
                bottleneck = bottleneck.min(self.arcs[e].residual);
                v = self.arcs[e ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path to sink");
                self.arcs[e].residual -= bottleneck;
                self.arcs[e ^ 1].residual += bottleneck;
                v = self.arcs[e ^ 1].to;
            }
        }
    }

    /// Feasible potentials for the final residual network (every residual
    /// arc has nonnegative reduced cost), from a virtual root at distance 0.
    fn potentials(&self) -> Vec<BigInt> {
        let n = self.adj.len();
        let (dist, _) = self.shortest_paths(vec![Some(BigInt::zero()); n]);
        dist.into_iter().map(|d| d.expect("all nodes seeded")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn example1() -> Instance {
        Instance::from_integers(&[1, 1, 1], &[&[0, 6, 8], &[6, 0, 5], &[8, 5, 0]]).unwrap()
    }

    #[test]
    fn example_one_bipartite_value() {
        let inst = example1();
        let sol = solve_transportation(&inst).unwrap();
        assert_eq!(sol.value, ratio(19, 2));
        assert!(sol.certificate_violations(&inst).is_empty());
        // an optimal ν is a cyclic permutation
        let cyc1 = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        let cyc2 = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        assert!(sol.nu == cyc1 || sol.nu == cyc2, "{:?}", sol.nu);
    }

    #[test]
    fn single_type_pair() {
        let inst = Instance::from_integers(&[2], &[&[4]]).unwrap();
        let sol = solve_transportation(&inst).unwrap();
        assert_eq!(sol.nu, vec![vec![2]]);
        assert_eq!(sol.value, int(4));
        assert!(sol.certificate_violations(&inst).is_empty());
        assert_eq!(&sol.duals_v[0] + &sol.duals_w[0], int(2));
    }

    #[test]
    fn negative_surplus_leaves_everyone_single() {
        let inst = Instance::from_integers(&[2, 3], &[&[-1, -4], &[-4, -2]]).unwrap();
        let sol = solve_transportation(&inst).unwrap();
        assert_eq!(sol.nu, vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(sol.value, int(0));
        assert!(sol.duals_v.iter().chain(&sol.duals_w).all(Zero::is_zero));
    }

    #[test]
    fn example_one_half_integral_optimum() {
        let f = half_integral_optimum(&example1()).unwrap();
        let h = ratio(1, 2);
        let z = int(0);
        assert_eq!(
            f.mu,
            vec![vec![z.clone(), h.clone(), h.clone()], vec![h.clone(), z.clone(), h.clone()], vec![h.clone(), h, z]]
        );
        assert_eq!(f.value, ratio(19, 2));
        assert!(f.is_half_integral() && !f.is_integral());
    }

    #[test]
    fn cloned_example_is_integral() {
        let inst = Instance::from_integers(&[2, 2, 2], &[&[2, 6, 8], &[6, 2, 5], &[8, 5, 2]]).unwrap();
        let f = half_integral_optimum(&inst).unwrap();
        assert_eq!(f.value, int(19));
        let o = int(1);
        let z = int(0);
        assert_eq!(
            f.mu,
            vec![vec![z.clone(), o.clone(), o.clone()], vec![o.clone(), z.clone(), o.clone()], vec![o.clone(), o, z]]
        );
    }

    #[test]
    fn odd_single_type_is_fractional() {
        let inst = Instance::from_integers(&[3], &[&[4]]).unwrap();
        let f = half_integral_optimum(&inst).unwrap();
        assert_eq!(f.mu[0][0], ratio(3, 2));
        assert_eq!(f.value, int(6));
    }

    #[test]
    fn rational_surplus_duals_are_exact() {
        let inst = Instance::new(
            vec!["a".into(), "b".into()],
            vec![1, 2],
            vec![vec![ratio(1, 3), ratio(7, 4)], vec![ratio(7, 4), ratio(5, 6)]],
        )
        .unwrap();
        let sol = solve_transportation(&inst).unwrap();
        assert!(sol.certificate_violations(&inst).is_empty(), "{:?}", sol.certificate_violations(&inst));
    }

    #[test]
    fn requires_exchangeable() {
        let inst = Instance::from_integers(&[1, 1], &[&[0, 7], &[3, 0]]).unwrap();
        assert!(matches!(solve_transportation(&inst), Err(crate::Error::NotExchangeable)));
    }
}
