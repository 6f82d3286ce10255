use std::cmp::Ordering;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::codes::{BoundKind, SupportWeightResult};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Interval, PRECISION_LADDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueKind {
    Exact,
    LowerBound,
    UpperBound,
    MonteCarlo,
}

impl From<BoundKind> for ValueKind {
    fn from(k: BoundKind) -> Self {
        match k {
            BoundKind::Exact => ValueKind::Exact,
            BoundKind::LowerBound => ValueKind::LowerBound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intermediate {
    pub name: String,
    pub value: Value,
    pub kind: ValueKind,
    /// Half-width of the confidence interval for Monte Carlo values.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "==")]
    Eq,
}

/// A rational enclosure, serialized as reduced fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lo: String,
    pub hi: String,
}

impl Bounds {
    fn from_interval(i: &Interval) -> Self {
        Bounds {
            lo: format_rational(&i.lo),
            hi: format_rational(&i.hi),
        }
    }

    fn to_interval(&self) -> Result<Interval> {
        let lo = parse_rational(&self.lo)?;
        let hi = parse_rational(&self.hi)?;
        if lo > hi {
            return Err(Error::input(format!(
                "inverted bounds [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(Interval { lo, hi })
    }
}

/// An asserted relation between two enclosed quantities. The outcome is a
/// pure function of the recorded bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: Bounds,
    pub relation: Relation,
    pub rhs: Bounds,
    pub outcome: Verdict,
}

fn evaluate(lhs: &Interval, relation: Relation, rhs: &Interval) -> Verdict {
    // diff = rhs - lhs for <=, <; lhs - rhs for >=, >
    let diff = match relation {
        Relation::Le | Relation::Lt | Relation::Eq => rhs.sub(lhs),
        Relation::Ge | Relation::Gt => lhs.sub(rhs),
    };
    let zero = BigRational::from_integer(0.into());
    match relation {
        Relation::Le | Relation::Ge => {
            if diff.lo >= zero {
                Verdict::Pass
            } else if diff.hi < zero {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            }
        }
        Relation::Lt | Relation::Gt => {
            if diff.lo > zero {
                Verdict::Pass
            } else if diff.hi <= zero {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            }
        }
        Relation::Eq => {
            if diff.is_exact() && diff.lo == zero {
                Verdict::Pass
            } else if diff.sign().is_some_and(|s| s != Ordering::Equal) {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            }
        }
    }
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        lhs: &Interval,
        relation: Relation,
        rhs: &Interval,
    ) -> Self {
        Check {
            name: name.into(),
            lhs: Bounds::from_interval(lhs),
            relation,
            rhs: Bounds::from_interval(rhs),
            outcome: evaluate(lhs, relation, rhs),
        }
    }

    /// Builds the check at increasing precision until its outcome is decided.
    pub fn refine(
        name: impl Into<String>,
        relation: Relation,
        enclose: impl Fn(u32) -> (Interval, Interval),
    ) -> Self {
        let name = name.into();
        let mut last = None;
        for &bits in &PRECISION_LADDER {
            let (lhs, rhs) = enclose(bits);
            let check = Check::new(name.clone(), &lhs, relation, &rhs);
            if check.outcome != Verdict::Inconclusive {
                return check;
            }
            last = Some(check);
        }
        last.expect("nonempty ladder")
    }

    pub fn recompute(&self) -> Result<Verdict> {
        Ok(evaluate(
            &self.lhs.to_interval()?,
            self.relation,
            &self.rhs.to_interval()?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub inputs: Map<String, Value>,
    pub intermediates: Vec<Intermediate>,
    /// Preconditions; a failed one makes the claim not applicable.
    pub hypotheses: Vec<Check>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub narrative: String,
}

/// Combines hypothesis and check outcomes into a verdict.
pub fn combine(hypotheses: &[Verdict], checks: &[Verdict]) -> Verdict {
    if hypotheses.contains(&Verdict::Fail) || hypotheses.contains(&Verdict::NotApplicable) {
        return Verdict::NotApplicable;
    }
    if hypotheses.contains(&Verdict::Inconclusive) {
        return Verdict::Inconclusive;
    }
    if checks.contains(&Verdict::Fail) {
        Verdict::Fail
    } else if checks.contains(&Verdict::Inconclusive) || checks.contains(&Verdict::NotApplicable) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    }
}

impl VerificationReport {
    pub fn new(claim_id: impl Into<String>, inputs: Value) -> Self {
        let inputs = match inputs {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        VerificationReport {
            claim_id: claim_id.into(),
            inputs,
            intermediates: Vec::new(),
            hypotheses: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            narrative: String::new(),
        }
    }

    pub fn note(&mut self, name: impl Into<String>, value: impl Into<Value>, kind: ValueKind) {
        self.intermediates.push(Intermediate {
            name: name.into(),
            value: value.into(),
            kind,
            margin: None,
        });
    }

    pub fn note_mc(&mut self, name: impl Into<String>, value: f64, margin: f64) {
        self.intermediates.push(Intermediate {
            name: name.into(),
            value: json!(value),
            kind: ValueKind::MonteCarlo,
            margin: Some(margin),
        });
    }

    pub fn note_weight(&mut self, name: impl Into<String>, w: &SupportWeightResult) {
        self.note(name, w.value.to_string(), w.kind.into());
    }

    pub fn hypothesis(&mut self, check: Check) -> Verdict {
        let v = check.outcome;
        self.hypotheses.push(check);
        v
    }

    pub fn check(&mut self, check: Check) -> Verdict {
        let v = check.outcome;
        self.checks.push(check);
        v
    }

    /// Whether every hypothesis recorded so far holds.
    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.outcome == Verdict::Pass)
    }

    pub fn finish(mut self, narrative: impl Into<String>) -> Self {
        self.verdict = self.derived_verdict();
        self.narrative = narrative.into();
        self
    }

    fn derived_verdict(&self) -> Verdict {
        let h: Vec<_> = self.hypotheses.iter().map(|c| c.outcome).collect();
        let c: Vec<_> = self.checks.iter().map(|c| c.outcome).collect();
        combine(&h, &c)
    }

    /// Re-derives every outcome and the verdict from the recorded bounds alone.
    pub fn recompute_verdict(&self) -> Result<Verdict> {
        let h = self
            .hypotheses
            .iter()
            .map(Check::recompute)
            .collect::<Result<Vec<_>>>()?;
        let c = self
            .checks
            .iter()
            .map(Check::recompute)
            .collect::<Result<Vec<_>>>()?;
        Ok(combine(&h, &c))
    }

    /// Whether all checks pass, regardless of the hypotheses.
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == Verdict::Pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| Error::input(format!("report JSON: {e}")))
    }
}

/// Exact enclosure of a float.
pub fn float(x: f64) -> Interval {
    Interval::exact(BigRational::from_float(x).expect("finite float"))
}

/// Enclosure [lo, hi] of two floats.
pub fn float_range(lo: f64, hi: f64) -> Interval {
    Interval {
        lo: float(lo).lo,
        hi: float(hi).hi,
    }
}
