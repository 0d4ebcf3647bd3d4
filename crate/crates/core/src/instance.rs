//! Market data model: types, per-type population counts and the exact surplus
//! matrix, together with the JSON instance format and the role-symmetrizing
//! reduction for markets where partners play ordered roles.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::{exact, parse_rational, Rational};

/// A roommate market over a finite set of types.
///
/// Fields are public so that callers can build (possibly invalid) markets by
/// hand; every solver entry point re-runs [`Instance::validate`] first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub labels: Vec<String>,
    /// Individuals per type. Signed only so that a negative count can be
    /// represented and reported by validation.
    pub counts: Vec<i64>,
    /// `surplus[x][y]` is the joint surplus when `x` takes the first role and `y` the second.
    pub surplus: Vec<Vec<Rational>>,
    pub exchangeable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueCode {
    NoTypes,
    DuplicateLabel,
    DimensionMismatch,
    NegativeCount,
    AsymmetricExchangeable,
    AllCountsZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub code: IssueCode,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn has_error(&self, code: IssueCode) -> bool {
        self.errors.iter().any(|i| i.code == code)
    }

    fn error(&mut self, code: IssueCode, message: impl Into<String>) {
        self.errors.push(Issue { code, message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<&str> = self.errors.iter().map(|i| i.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

impl Instance {
    /// Builds and validates an instance; the exchangeable flag is inferred
    /// from matrix symmetry.
    pub fn new(labels: Vec<String>, counts: Vec<u64>, surplus: Vec<Vec<Rational>>) -> Result<Self> {
        let counts = counts.into_iter().map(|c| c as i64).collect();
        let mut inst = Instance { labels, counts, surplus, exchangeable: false };
        inst.exchangeable = inst.is_symmetric();
        inst.ensure_valid()?;
        Ok(inst)
    }

    /// Convenience constructor with labels `1..=|X|` and integer surpluses.
    pub fn from_integers(counts: &[u64], surplus: &[&[i64]]) -> Result<Self> {
        let labels = (1..=counts.len()).map(|i| i.to_string()).collect();
        let surplus = surplus.iter().map(|row| row.iter().map(|&v| crate::rational::int(v)).collect()).collect();
        Self::new(labels, counts.to_vec(), surplus)
    }

    pub fn num_types(&self) -> usize {
        self.labels.len()
    }

    /// Count of type `x` as an unsigned number; only meaningful on a validated instance.
    pub fn count(&self, x: usize) -> u64 {
        self.counts[x].max(0) as u64
    }

    pub fn counts_u64(&self) -> Vec<u64> {
        (0..self.num_types()).map(|x| self.count(x)).collect()
    }

    pub fn population(&self) -> u64 {
        (0..self.num_types()).map(|x| self.count(x)).sum()
    }

    pub fn phi(&self, x: usize, y: usize) -> &Rational {
        &self.surplus[x][y]
    }

    /// Largest surplus entry over all ordered pairs.
    pub fn max_surplus(&self) -> Rational {
        self.surplus.iter().flatten().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// `max(max_surplus, 0)`, the quantity used by the cost and gap bounds.
    pub fn max_surplus_nonneg(&self) -> Rational {
        let m = self.max_surplus();
        if m.is_negative() {
            Rational::zero()
        } else {
            m
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.surplus.len();
        (0..n).all(|x| (0..n).all(|y| self.surplus.get(y).and_then(|r| r.get(x)) == self.surplus[x].get(y)))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.labels.len();
        if n == 0 {
            report.error(IssueCode::NoTypes, "instance has no types");
        }
        let mut seen = HashSet::new();
        for label in &self.labels {
            if !seen.insert(label.as_str()) {
                report.error(IssueCode::DuplicateLabel, format!("type label {label:?} appears more than once"));
            }
        }
        if self.counts.len() != n {
            report.error(IssueCode::DimensionMismatch, format!("{} counts for {} types", self.counts.len(), n));
        }
        if self.surplus.len() != n {
            report.error(
                IssueCode::DimensionMismatch,
                format!("surplus matrix has {} rows for {} types", self.surplus.len(), n),
            );
        }
        for (i, row) in self.surplus.iter().enumerate() {
            if row.len() != self.surplus.len() {
                report.error(
                    IssueCode::DimensionMismatch,
                    format!("surplus row {i} has {} entries, expected {}", row.len(), self.surplus.len()),
                );
            }
        }
        for (i, &c) in self.counts.iter().enumerate() {
            if c < 0 {
                let label = self.labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
                report.error(IssueCode::NegativeCount, format!("type {label:?} has negative count {c}"));
            }
        }
        let square = report.errors.iter().all(|e| e.code != IssueCode::DimensionMismatch);
        if square && self.exchangeable && !self.is_symmetric() {
            report.error(
                IssueCode::AsymmetricExchangeable,
                "instance is flagged exchangeable but its surplus matrix is not symmetric",
            );
        }
        if !self.counts.is_empty() && self.counts.iter().all(|&c| c == 0) {
            report.warnings.push(Issue { code: IssueCode::AllCountsZero, message: "all type counts are zero".into() });
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Validity plus the symmetric-surplus assumption required by the solvers.
    pub fn ensure_exchangeable(&self) -> Result<()> {
        self.ensure_valid()?;
        if self.exchangeable && self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::NotExchangeable)
        }
    }

    pub fn with_counts(&self, counts: Vec<u64>) -> Instance {
        Instance { counts: counts.into_iter().map(|c| c as i64).collect(), ..self.clone() }
    }

    pub fn to_document(&self) -> InstanceDocument {
        InstanceDocument {
            types: self.labels.clone(),
            counts: self.counts.clone(),
            surplus: self.surplus.iter().map(|row| row.iter().map(SurplusEntry::from).collect()).collect(),
            exchangeable: Some(self.exchangeable),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("instance document serializes")
    }
}

/// Serialized form of an [`Instance`].
#[derive(Debug, Clone, Serialize)]
pub struct InstanceDocument {
    pub types: Vec<String>,
    pub counts: Vec<i64>,
    pub surplus: Vec<Vec<SurplusEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exchangeable: Option<bool>,
}

/// Integers are written as JSON numbers, everything else as an exact `"p/q"` string.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SurplusEntry {
    Integer(serde_json::Number),
    Fraction(String),
}

impl From<&Rational> for SurplusEntry {
    fn from(r: &Rational) -> Self {
        if r.is_integer() {
            let n = serde_json::Number::from_str(&r.numer().to_string()).expect("integer literal");
            SurplusEntry::Integer(n)
        } else {
            SurplusEntry::Fraction(exact(r))
        }
    }
}

/// Parses a UTF-8 JSON instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    instance_from_value(&doc)
}

pub fn instance_from_value(doc: &Value) -> Result<Instance> {
    let obj = doc.as_object().ok_or_else(|| Error::Malformed("top level must be an object".into()))?;

    let types =
        obj.get("types").and_then(Value::as_array).ok_or_else(|| Error::Malformed("missing array \"types\"".into()))?;
    let labels = types
        .iter()
        .map(|t| t.as_str().map(str::to_string).ok_or_else(|| Error::Malformed("type labels must be strings".into())))
        .collect::<Result<Vec<_>>>()?;

    let counts_v = obj
        .get("counts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing array \"counts\"".into()))?;
    let mut counts = Vec::with_capacity(counts_v.len());
    for (i, c) in counts_v.iter().enumerate() {
        let label = labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        let r = match c {
            Value::Number(n) => parse_rational(&n.to_string())?,
            _ => return Err(Error::Malformed(format!("count for {label:?} is not a number"))),
        };
        if !r.is_integer() {
            return Err(Error::Malformed(format!("count for {label:?} is not an integer")));
        }
        let count: i64 =
            r.to_integer().try_into().map_err(|_| Error::Malformed(format!("count for {label:?} is out of range")))?;
        if count < 0 {
            return Err(Error::NegativeCount { label, count });
        }
        counts.push(count);
    }

    let rows = obj
        .get("surplus")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing array \"surplus\"".into()))?;
    let mut surplus = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Malformed(format!("surplus row {i} is not an array")))?;
        let parsed = row
            .iter()
            .map(|v| match v {
                Value::Number(n) => parse_rational(&n.to_string()),
                Value::String(s) => parse_rational(s),
                _ => Err(Error::Malformed(format!("surplus row {i} has a non-numeric entry"))),
            })
            .collect::<Result<Vec<_>>>()?;
        surplus.push(parsed);
    }

    if counts.len() != labels.len() {
        return Err(Error::Dimension(format!("{} counts for {} types", counts.len(), labels.len())));
    }
    if surplus.len() != labels.len() || surplus.iter().any(|r| r.len() != labels.len()) {
        return Err(Error::Dimension(format!("surplus matrix must be {n}x{n} for {n} types", n = labels.len())));
    }

    let exchangeable = match obj.get("exchangeable") {
        None | Some(Value::Null) => None,
        Some(Value::Bool(b)) => Some(*b),
        Some(_) => return Err(Error::Malformed("\"exchangeable\" must be a boolean".into())),
    };
    let mut inst = Instance { labels, counts, surplus, exchangeable: false };
    inst.exchangeable = exchangeable.unwrap_or_else(|| inst.is_symmetric());
    inst.ensure_valid()?;
    Ok(inst)
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_instance(s)
    }
}

/// Which ordered role assignment(s) attain the larger surplus for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// The lower-indexed type takes the first role.
    Forward,
    /// The higher-indexed type takes the first role.
    Reverse,
    Both,
}

/// Per-pair role preference recorded by [`symmetrize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RolePreference {
    attains: Vec<Vec<bool>>,
}

impl RolePreference {
    /// True iff the ordered pair `(x, y)` attains `max(Φ_xy, Φ_yx)`.
    pub fn attains(&self, x: usize, y: usize) -> bool {
        self.attains[x][y]
    }

    pub fn orientation(&self, x: usize, y: usize) -> Orientation {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        match (self.attains[a][b], self.attains[b][a]) {
            (true, true) => Orientation::Both,
            (true, false) => Orientation::Forward,
            _ => Orientation::Reverse,
        }
    }
}

/// Replaces `Φ` by the role-optimized symmetric surplus `max(Φ_xy, Φ_yx)`.
pub fn symmetrize(inst: &Instance) -> (Instance, RolePreference) {
    let n = inst.surplus.len();
    let mut surplus = inst.surplus.clone();
    let mut attains = vec![vec![true; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (&inst.surplus[x][y], &inst.surplus[y][x]);
            attains[x][y] = a >= b;
            surplus[x][y] = a.max(b).clone();
        }
    }
    let out = Instance { surplus, exchangeable: true, ..inst.clone() };
    (out, RolePreference { attains })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    const EXAMPLE1: &str = r#"{"types":["1","2","3"],"counts":[1,1,1],"surplus":[[0,6,8],[6,0,5],[8,5,0]]}"#;

    #[test]
    fn parses_example_one() {
        let inst = parse_instance(EXAMPLE1).unwrap();
        assert_eq!(inst.labels, vec!["1", "2", "3"]);
        assert_eq!(inst.counts, vec![1, 1, 1]);
        assert_eq!(inst.surplus[0][1], int(6));
        assert_eq!(inst.surplus[2][0], int(8));
        assert!(inst.exchangeable);
        assert_eq!(inst.max_surplus(), int(8));
        assert!(inst.validate().is_ok());
    }

    #[test]
    fn decimal_and_fraction_entries_are_exact() {
        let inst = parse_instance(r#"{"types":["a"],"counts":[2],"surplus":[[2.5]]}"#).unwrap();
        assert_eq!(inst.surplus[0][0], ratio(5, 2));
        let inst = parse_instance(r#"{"types":["a"],"counts":[2],"surplus":[["1/3"]]}"#).unwrap();
        assert_eq!(inst.surplus[0][0], ratio(1, 3));
        let inst = parse_instance(r#"{"types":["a"],"counts":[2],"surplus":[[0.1]]}"#).unwrap();
        assert_eq!(inst.surplus[0][0], ratio(1, 10));
    }

    #[test]
    fn asymmetric_matrix_infers_nonexchangeable() {
        let inst = parse_instance(r#"{"types":["1","2"],"counts":[1,1],"surplus":[[0,7],[3,0]]}"#).unwrap();
        assert!(!inst.exchangeable);
    }

    #[test]
    fn explicit_exchangeable_with_asymmetric_matrix_is_rejected() {
        let err = parse_instance(r#"{"types":["1","2"],"counts":[1,1],"surplus":[[0,7],[3,0]],"exchangeable":true}"#)
            .unwrap_err();
        match err {
            Error::Invalid(r) => assert!(r.has_error(IssueCode::AsymmetricExchangeable)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_instance("{"), Err(Error::Malformed(_))));
        assert!(matches!(parse_instance("[]"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_instance(r#"{"types":["a","b"],"counts":[1],"surplus":[[0,0],[0,0]]}"#),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            parse_instance(r#"{"types":["a"],"counts":[-1],"surplus":[[0]]}"#),
            Err(Error::NegativeCount { count: -1, .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"types":["a"],"counts":[1],"surplus":[["inf"]]}"#),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            parse_instance(r#"{"types":["a"],"counts":[1.5],"surplus":[[0]]}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_instance(r#"{"types":["a","a"],"counts":[1,1],"surplus":[[0,0],[0,0]]}"#),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn validation_reports() {
        let ok = parse_instance(EXAMPLE1).unwrap();
        assert!(ok.validate().errors.is_empty());

        let mut bad = ok.clone();
        bad.counts = vec![1, 1];
        assert!(bad.validate().has_error(IssueCode::DimensionMismatch));

        let mut bad = ok.clone();
        bad.counts[1] = -1;
        assert!(bad.validate().has_error(IssueCode::NegativeCount));

        let mut zero = ok.clone();
        zero.counts = vec![0, 0, 0];
        let r = zero.validate();
        assert!(r.is_ok());
        assert_eq!(r.warnings[0].code, IssueCode::AllCountsZero);

        let empty = Instance { labels: vec![], counts: vec![], surplus: vec![], exchangeable: true };
        assert!(empty.validate().has_error(IssueCode::NoTypes));
    }

    #[test]
    fn symmetrize_takes_pairwise_max() {
        let inst = parse_instance(r#"{"types":["1","2"],"counts":[1,1],"surplus":[[0,7],[3,0]]}"#).unwrap();
        let (sym, pref) = symmetrize(&inst);
        assert_eq!(sym.surplus, vec![vec![int(0), int(7)], vec![int(7), int(0)]]);
        assert!(sym.exchangeable);
        assert_eq!(pref.orientation(0, 1), Orientation::Forward);
        assert_eq!(pref.orientation(1, 0), Orientation::Forward);
        assert!(pref.attains(0, 1) && !pref.attains(1, 0));
    }

    #[test]
    fn symmetrize_on_symmetric_input_is_identity() {
        let inst = parse_instance(EXAMPLE1).unwrap();
        let (sym, pref) = symmetrize(&inst);
        assert_eq!(sym, inst);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(pref.orientation(x, y), Orientation::Both);
            }
        }
        let tie = Instance::from_integers(&[1, 1], &[&[0, 5], &[5, 0]]).unwrap();
        let (sym, pref) = symmetrize(&tie);
        assert_eq!(sym, tie);
        assert_eq!(pref.orientation(0, 1), Orientation::Both);
    }

    #[test]
    fn emit_then_parse_round_trips() {
        let inst = Instance::new(
            vec!["a".into(), "b".into()],
            vec![3, 0],
            vec![vec![ratio(5, 2), int(-4)], vec![ratio(-1, 3), int(0)]],
        )
        .unwrap();
        let back = parse_instance(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
    }
}
