//! Large-market behaviour under proportional cloning `n^k = k·n`: the
//! per-capita gap `(W_F − W_P)/N` and the per-capita cost of restoring
//! stability by removal.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::interventions::{clone, stabilize_by_removal};
use crate::rational::{decimal, exact, Rational};
use crate::stability::decide_stability;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRow {
    pub k: u64,
    pub population: u64,
    pub w_p: Rational,
    pub w_f: Rational,
    pub per_capita_gap: Rational,
    pub per_capita_cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSeries {
    pub rows: Vec<GapRow>,
    /// Set when a row could not be solved; rows stop before it.
    pub truncated: Option<Truncation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub k: u64,
    pub reason: String,
}

pub const CSV_HEADER: &str =
    "k,N,w_p,w_f,per_capita_gap,per_capita_cost,w_p_decimal,w_f_decimal,per_capita_gap_decimal,per_capita_cost_decimal";

pub fn gap_sequence(base: &Instance, k_max: u64) -> Result<GapSeries> {
    gap_sequence_with(base, k_max, |inst| {
        let verdict = decide_stability(inst)?;
        let plan = stabilize_by_removal(inst)?;
        Ok((verdict.w_p, verdict.w_f, plan.total_cost))
    })
}

/// Drives the series with a caller-supplied row solver returning
/// `(W_P, W_F, total removal cost)`. Solver resource exhaustion truncates the
/// series; any other error is returned.
pub fn gap_sequence_with<F>(base: &Instance, k_max: u64, mut solve: F) -> Result<GapSeries>
where
    F: FnMut(&Instance) -> Result<(Rational, Rational, Rational)>,
{
    if k_max == 0 {
        return Err(Error::ZeroFactor);
    }
    base.ensure_exchangeable()?;
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let inst = clone(base, k)?;
        let population = inst.population();
        let (w_p, w_f, cost) = match solve(&inst) {
            Ok(v) => v,
            Err(e @ Error::NodeLimit(_)) => {
                return Ok(GapSeries { rows, truncated: Some(Truncation { k, reason: e.to_string() }) });
            }
            Err(e) => return Err(e),
        };
        let per_capita = |v: Rational| {
            if population == 0 {
                Rational::zero()
            } else {
                v / Rational::from_integer(BigInt::from(population))
            }
        };
        let per_capita_gap = per_capita(&w_f - &w_p);
        let per_capita_cost = per_capita(cost);
        rows.push(GapRow { k, population, w_p, w_f, per_capita_gap, per_capita_cost });
    }
    Ok(GapSeries { rows, truncated: None })
}

impl GapSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.k,
                r.population,
                exact(&r.w_p),
                exact(&r.w_f),
                exact(&r.per_capita_gap),
                exact(&r.per_capita_cost),
                decimal(&r.w_p),
                decimal(&r.w_f),
                decimal(&r.per_capita_gap),
                decimal(&r.per_capita_cost),
            );
        }
        if let Some(t) = &self.truncated {
            let _ = writeln!(out, "# truncated at k={}: {}", t.k, t.reason);
        }
        out
    }

    /// Whether the gap is non-increasing along odd `k`. Observed, not guaranteed.
    pub fn odd_gap_non_increasing(&self) -> bool {
        let odd: Vec<&Rational> = self.rows.iter().filter(|r| r.k % 2 == 1).map(|r| &r.per_capita_gap).collect();
        odd.windows(2).all(|w| w[1] <= w[0])
    }
}
