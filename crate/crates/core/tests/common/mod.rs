//! Seeded instance generators and independent oracles shared by the
//! integration suites. Nothing here calls the library's solvers.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roommate_core::Instance;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example1() -> Instance {
    Instance::from_integers(&[1, 1, 1], &[&[0, 6, 8], &[6, 0, 5], &[8, 5, 0]]).unwrap()
}

pub fn example1_cloned() -> Instance {
    Instance::from_integers(&[2, 2, 2], &[&[2, 6, 8], &[6, 2, 5], &[8, 5, 2]]).unwrap()
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_types: usize,
    pub max_count: u64,
    pub lo: i64,
    pub hi: i64,
    /// Upper bound on the population, redrawn until met.
    pub max_population: u64,
}

pub const CORPUS: Shape = Shape { max_types: 5, max_count: 4, lo: -5, hi: 10, max_population: u64::MAX };
pub const SMALL: Shape = Shape { max_types: 5, max_count: 4, lo: -5, hi: 10, max_population: 10 };

fn counts(rng: &mut ChaCha8Rng, m: usize, shape: Shape) -> Vec<u64> {
    loop {
        let c: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=shape.max_count)).collect();
        if c.iter().sum::<u64>() <= shape.max_population {
            return c;
        }
    }
}

fn matrix(rng: &mut ChaCha8Rng, m: usize, shape: Shape, symmetric: bool) -> Vec<Vec<i64>> {
    let mut phi = vec![vec![0i64; m]; m];
    for x in 0..m {
        for y in 0..m {
            if !symmetric || y >= x {
                phi[x][y] = rng.gen_range(shape.lo..=shape.hi);
            } else {
                phi[x][y] = phi[y][x];
            }
        }
    }
    phi
}

fn build(counts: &[u64], phi: &[Vec<i64>]) -> Instance {
    let rows: Vec<&[i64]> = phi.iter().map(|r| r.as_slice()).collect();
    Instance::from_integers(counts, &rows).unwrap()
}

pub fn symmetric_instance(rng: &mut ChaCha8Rng, shape: Shape) -> Instance {
    let m = rng.gen_range(1..=shape.max_types);
    let c = counts(rng, m, shape);
    build(&c, &matrix(rng, m, shape, true))
}

pub fn even_instance(rng: &mut ChaCha8Rng, shape: Shape) -> Instance {
    let m = rng.gen_range(1..=shape.max_types);
    let c: Vec<u64> = (0..m).map(|_| 2 * rng.gen_range(0..=shape.max_count / 2)).collect();
    build(&c, &matrix(rng, m, shape, true))
}

pub fn odd_instance(rng: &mut ChaCha8Rng, shape: Shape) -> Instance {
    loop {
        let inst = symmetric_instance(rng, shape);
        if inst.counts.iter().any(|c| c % 2 == 1) {
            return inst;
        }
    }
}

/// Asymmetric surplus (almost surely), possibly with some symmetric entries.
pub fn asymmetric_instance(rng: &mut ChaCha8Rng, shape: Shape) -> Instance {
    loop {
        let m = rng.gen_range(2..=shape.max_types);
        let c = counts(rng, m, shape);
        let mut phi = matrix(rng, m, shape, false);
        // keep a few ties so orientation ties are exercised
        for x in 0..m {
            for y in x + 1..m {
                if rng.gen_bool(0.2) {
                    phi[y][x] = phi[x][y];
                }
            }
        }
        let inst = build(&c, &phi);
        if !inst.exchangeable {
            return inst;
        }
    }
}

fn phi(inst: &Instance, x: usize, y: usize) -> Q {
    inst.surplus[x][y].clone()
}

fn counts_of(inst: &Instance) -> Vec<u64> {
    inst.counts.iter().map(|&c| c as u64).collect()
}

/// Optimal integer roommate value by recursion on the first remaining
/// individual: it stays single or pairs with someone of an equal or later type.
/// `pair_value` gives the surplus of a pair of types.
fn roommate_value_with(counts: Vec<u64>, pair_value: &dyn Fn(usize, usize) -> Q) -> Q {
    fn go(left: &mut Vec<u64>, pv: &dyn Fn(usize, usize) -> Q, memo: &mut HashMap<Vec<u64>, Q>) -> Q {
        let Some(x) = left.iter().position(|&c| c > 0) else { return q(0) };
        if let Some(v) = memo.get(left) {
            return v.clone();
        }
        left[x] -= 1;
        let mut best = go(left, pv, memo);
        for y in x..left.len() {
            if left[y] == 0 {
                continue;
            }
            left[y] -= 1;
            let v = pv(x, y) + go(left, pv, memo);
            left[y] += 1;
            if v > best {
                best = v;
            }
        }
        left[x] += 1;
        memo.insert(left.clone(), best.clone());
        best
    }
    go(&mut counts.clone(), pair_value, &mut HashMap::new())
}

/// Integer optimum of an exchangeable market.
pub fn oracle_w_p(inst: &Instance) -> Q {
    roommate_value_with(counts_of(inst), &|x, y| phi(inst, x, y))
}

/// Integer optimum with ordered roles: each pair picks which partner takes
/// the first role, both orders being enumerated.
pub fn oracle_ordered_w_p(inst: &Instance) -> Q {
    roommate_value_with(counts_of(inst), &|x, y| {
        let a = phi(inst, x, y);
        let b = phi(inst, y, x);
        if a >= b {
            a
        } else {
            b
        }
    })
}

/// Optimum of the bipartite problem between two copies of the population
/// with surplus `Φ/2` (partial assignment allowed), by dynamic programming
/// over rows with the remaining column capacities as state.
pub fn oracle_w_f(inst: &Instance) -> Q {
    let n = counts_of(inst);
    let half = |x: usize, y: usize| phi(inst, x, y) / q(2);
    fn rows(
        x: usize,
        caps: &mut Vec<u64>,
        n: &[u64],
        half: &dyn Fn(usize, usize) -> Q,
        memo: &mut HashMap<(usize, Vec<u64>), Q>,
    ) -> Q {
        if x == n.len() {
            return q(0);
        }
        let key = (x, caps.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut best: Option<Q> = None;
        let mut row = vec![0u64; n.len()];
        fill(0, n[x], x, &mut row, caps, n, half, memo, &mut best);
        let best = best.unwrap();
        memo.insert(key, best.clone());
        best
    }
    #[allow(clippy::too_many_arguments)]
    fn fill(
        y: usize,
        budget: u64,
        x: usize,
        row: &mut Vec<u64>,
        caps: &mut Vec<u64>,
        n: &[u64],
        half: &dyn Fn(usize, usize) -> Q,
        memo: &mut HashMap<(usize, Vec<u64>), Q>,
        best: &mut Option<Q>,
    ) {
        if y == n.len() {
            let here: Q = (0..n.len()).map(|j| q(row[j] as i64) * half(x, j)).sum();
            let v = here + rows(x + 1, caps, n, half, memo);
            if best.as_ref().is_none_or(|b| v > *b) {
                *best = Some(v);
            }
            return;
        }
        for k in 0..=budget.min(caps[y]) {
            row[y] = k;
            caps[y] -= k;
            fill(y + 1, budget - k, x, row, caps, n, half, memo, best);
            caps[y] += k;
        }
        row[y] = 0;
    }
    rows(0, &mut n.clone(), &n, &half, &mut HashMap::new())
}

pub fn max_nonneg(inst: &Instance) -> Q {
    inst.surplus.iter().flatten().cloned().fold(q(0), |a, b| if b > a { b } else { a })
}

pub fn is_half_integral(v: &Q) -> bool {
    let d = v.denom();
    *d == BigInt::from(1) || *d == BigInt::from(2)
}

pub mod strategies {
    use proptest::prelude::*;
    use roommate_core::Instance;

    /// Random instance; `symmetric` mirrors the upper triangle.
    pub fn instance(
        max_types: usize,
        max_count: u64,
        max_population: u64,
        symmetric: bool,
    ) -> impl Strategy<Value = Instance> {
        (1..=max_types)
            .prop_flat_map(move |m| {
                (
                    proptest::collection::vec(0..=max_count, m),
                    proptest::collection::vec(proptest::collection::vec(-5i64..=10, m), m),
                )
            })
            .prop_filter("population bound", move |(c, _)| c.iter().sum::<u64>() <= max_population)
            .prop_map(move |(c, mut phi)| {
                if symmetric {
                    for x in 0..phi.len() {
                        for y in 0..x {
                            phi[x][y] = phi[y][x];
                        }
                    }
                }
                let rows: Vec<&[i64]> = phi.iter().map(|r| r.as_slice()).collect();
                Instance::from_integers(&c, &rows).unwrap()
            })
    }
}
