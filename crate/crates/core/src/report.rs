//! JSON report documents. Every rational is written as an exact `p/q` string
//! with a sibling `*_decimal` rendering.

use serde::{Serialize, Serializer};

use crate::asymptotics::GapSeries;
use crate::instance::{Instance, InstanceDocument, Orientation, RolePreference};
use crate::interventions::{OrderedMatching, RemovalPlan};
use crate::rational::{decimal, exact, Rational};
use crate::roommate::RoommateMatching;
use crate::stability::{BlockingReason, Certificate, MatchingDiagnosis, Outcome, StabilityVerdict};
use crate::transport::FractionalMatching;

pub fn ser_exact<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&exact(r))
}

fn exacts(v: &[Rational]) -> Vec<String> {
    v.iter().map(exact).collect()
}

fn decimals(v: &[Rational]) -> Vec<String> {
    v.iter().map(decimal).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: InstanceDocument,
    pub max_surplus: String,
    pub max_surplus_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<OptimumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fractional: Option<FractionalReport>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<OutcomeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanations: Option<Vec<DiagnosisReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removal: Option<RemovalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordered: Option<OrderedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl Report {
    pub fn new(command: &str, inst: &Instance) -> Self {
        let max = inst.max_surplus();
        Report {
            command: command.to_string(),
            instance: inst.to_document(),
            max_surplus: exact(&max),
            max_surplus_decimal: decimal(&max),
            factor: None,
            optimum: None,
            fractional: None,
            verdict: None,
            outcome: None,
            certificate: None,
            explanations: None,
            removal: None,
            ordered: None,
            series: None,
            provenance: None,
        }
    }

    /// Fills verdict, outcome and certificate from a stability decision.
    pub fn with_verdict(mut self, v: &StabilityVerdict) -> Self {
        self.verdict = Some(VerdictReport::from(v));
        self.outcome = v.outcome.as_ref().map(OutcomeReport::from);
        self.certificate = Some(CertificateReport::from(&v.certificate));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub argv: Vec<String>,
}

impl Provenance {
    pub fn new(argv: &[String]) -> Self {
        Provenance { tool: "roommate".into(), version: env!("CARGO_PKG_VERSION").into(), argv: argv.to_vec() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchingReport {
    pub pairs: Vec<Vec<u64>>,
    pub singles: Vec<u64>,
}

impl From<&RoommateMatching> for MatchingReport {
    fn from(m: &RoommateMatching) -> Self {
        MatchingReport { pairs: m.mu.clone(), singles: m.singles.clone() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimumReport {
    pub engine: String,
    pub w_p: String,
    pub w_p_decimal: String,
    pub matching: MatchingReport,
}

impl OptimumReport {
    pub fn new(engine: &str, matching: &RoommateMatching, value: &Rational) -> Self {
        OptimumReport {
            engine: engine.into(),
            w_p: exact(value),
            w_p_decimal: decimal(value),
            matching: matching.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FractionalReport {
    pub w_f: String,
    pub w_f_decimal: String,
    pub mu: Vec<Vec<String>>,
}

impl From<&FractionalMatching> for FractionalReport {
    fn from(f: &FractionalMatching) -> Self {
        FractionalReport {
            w_f: exact(&f.value),
            w_f_decimal: decimal(&f.value),
            mu: f.mu.iter().map(|r| exacts(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub stable: bool,
    pub w_p: String,
    pub w_p_decimal: String,
    pub w_f: String,
    pub w_f_decimal: String,
    pub gap: String,
    pub gap_decimal: String,
    pub optimal_matching: MatchingReport,
}

impl From<&StabilityVerdict> for VerdictReport {
    fn from(v: &StabilityVerdict) -> Self {
        VerdictReport {
            stable: v.stable,
            w_p: exact(&v.w_p),
            w_p_decimal: decimal(&v.w_p),
            w_f: exact(&v.w_f),
            w_f_decimal: decimal(&v.w_f),
            gap: exact(&v.gap),
            gap_decimal: decimal(&v.gap),
            optimal_matching: (&v.optimum).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutcomeReport {
    pub matching: MatchingReport,
    pub payoffs: Vec<String>,
    pub payoffs_decimal: Vec<String>,
}

impl From<&Outcome> for OutcomeReport {
    fn from(o: &Outcome) -> Self {
        OutcomeReport {
            matching: (&o.matching).into(),
            payoffs: exacts(&o.payoffs),
            payoffs_decimal: decimals(&o.payoffs),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub payoffs: Vec<String>,
    pub payoffs_decimal: Vec<String>,
    pub multipliers: Vec<Vec<String>>,
    pub multipliers_decimal: Vec<Vec<String>>,
    pub objective: String,
    pub objective_decimal: String,
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        CertificateReport {
            payoffs: exacts(&c.payoffs),
            payoffs_decimal: decimals(&c.payoffs),
            multipliers: c.multipliers.iter().map(|r| exacts(r)).collect(),
            multipliers_decimal: c.multipliers.iter().map(|r| decimals(r)).collect(),
            objective: exact(&c.objective),
            objective_decimal: decimal(&c.objective),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosisReport {
    pub matching: MatchingReport,
    pub surplus: String,
    pub stabilizable: bool,
    pub reasons: Vec<BlockingReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<String>>,
}

impl From<&MatchingDiagnosis> for DiagnosisReport {
    fn from(d: &MatchingDiagnosis) -> Self {
        DiagnosisReport {
            matching: (&d.matching).into(),
            surplus: exact(&d.surplus),
            stabilizable: d.stabilizable,
            reasons: d.reasons.clone(),
            payoffs: d.payoffs.as_deref().map(exacts),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RemovalReport {
    pub removed: Vec<u64>,
    pub reduced_counts: Vec<u64>,
    pub compensation: Vec<String>,
    pub compensation_decimal: Vec<String>,
    pub total_cost: String,
    pub total_cost_decimal: String,
    pub cost_bound: String,
    pub cost_bound_decimal: String,
    pub reduced_verdict: VerdictReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_outcome: Option<OutcomeReport>,
}

impl From<&RemovalPlan> for RemovalReport {
    fn from(p: &RemovalPlan) -> Self {
        RemovalReport {
            removed: p.removed.clone(),
            reduced_counts: p.reduced.counts_u64(),
            compensation: exacts(&p.compensation),
            compensation_decimal: decimals(&p.compensation),
            total_cost: exact(&p.total_cost),
            total_cost_decimal: decimal(&p.total_cost),
            cost_bound: exact(&p.cost_bound),
            cost_bound_decimal: decimal(&p.cost_bound),
            reduced_verdict: (&p.reduced_verdict).into(),
            reduced_outcome: p.reduced_verdict.outcome.as_ref().map(OutcomeReport::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderedReport {
    pub symmetric_surplus: Vec<Vec<String>>,
    /// Orientation for each unordered pair `x ≤ y`, row-major.
    pub orientation: Vec<PairOrientation>,
    pub pi: Vec<Vec<u64>>,
    pub singles: Vec<u64>,
    pub value: String,
    pub value_decimal: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairOrientation {
    pub first: usize,
    pub second: usize,
    pub orientation: Orientation,
}

impl OrderedReport {
    pub fn new(sym: &Instance, pref: &RolePreference, om: &OrderedMatching) -> Self {
        let m = sym.num_types();
        let orientation = (0..m)
            .flat_map(|x| (x..m).map(move |y| (x, y)))
            .map(|(x, y)| PairOrientation { first: x, second: y, orientation: pref.orientation(x, y) })
            .collect();
        OrderedReport {
            symmetric_surplus: sym.surplus.iter().map(|r| exacts(r)).collect(),
            orientation,
            pi: om.pi.clone(),
            singles: om.singles.clone(),
            value: exact(&om.value),
            value_decimal: decimal(&om.value),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub rows: Vec<SeriesRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_reason: Option<String>,
    /// Empirical observation only.
    pub odd_gap_non_increasing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesRow {
    pub k: u64,
    #[serde(rename = "N")]
    pub population: u64,
    pub w_p: String,
    pub w_f: String,
    pub per_capita_gap: String,
    pub per_capita_cost: String,
    pub per_capita_gap_decimal: String,
    pub per_capita_cost_decimal: String,
}

impl From<&GapSeries> for SeriesReport {
    fn from(s: &GapSeries) -> Self {
        SeriesReport {
            rows: s
                .rows
                .iter()
                .map(|r| SeriesRow {
                    k: r.k,
                    population: r.population,
                    w_p: exact(&r.w_p),
                    w_f: exact(&r.w_f),
                    per_capita_gap: exact(&r.per_capita_gap),
                    per_capita_cost: exact(&r.per_capita_cost),
                    per_capita_gap_decimal: decimal(&r.per_capita_gap),
                    per_capita_cost_decimal: decimal(&r.per_capita_cost),
                })
                .collect(),
            truncated_at: s.truncated.as_ref().map(|t| t.k),
            truncation_reason: s.truncated.as_ref().map(|t| t.reason.clone()),
            odd_gap_non_increasing: s.odd_gap_non_increasing(),
        }
    }
}
