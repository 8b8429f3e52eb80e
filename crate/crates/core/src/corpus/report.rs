//! Machine-readable command output. Every report is one JSON document
//! tagged by `kind`, and parses back through [`parse_report`].

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grading::GradingViolation;
use crate::lab::criteria::{Criterion, LemmaReport, StatementOutcome, TheoremVerdict};
use crate::lab::search::EvidenceReport;
use crate::lab::sweep::SweepReport;
use crate::maps::{BasisPair, Classification, Decision, HomogeneityViolation};
use crate::primeness::PrimenessReport;
use crate::ring::AssociativityViolation;
use crate::verdict::Verdict;

use super::document::from_json;
use super::fixture::Check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationReport {
    pub ring: Verdict<AssociativityViolation>,
    pub grading: Verdict<GradingViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Existence {
    Yes,
    No,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationReport {
    pub map: String,
    pub derivation: Verdict<BasisPair>,
    pub homogeneous_map: Verdict<HomogeneityViolation>,
    pub homogeneous_derivation: bool,
    /// Basis images of one associated derivation.
    pub associated_derivation: Option<Vec<Vec<u32>>>,
    pub associated_dimension: Option<usize>,
    pub generalized_homogeneous: Existence,
    pub homogeneous_associate: Option<Vec<Vec<u32>>>,
}

impl ClassificationReport {
    pub fn new(map: &str, c: &Classification) -> ClassificationReport {
        let (existence, witness) = match &c.generalized_homogeneous_derivation {
            Decision::Yes(d) => (Existence::Yes, Some(d.images())),
            Decision::No => (Existence::No, None),
            Decision::Undecided => (Existence::Undecided, None),
        };
        ClassificationReport {
            map: map.to_string(),
            derivation: c.derivation.clone(),
            homogeneous_map: c.homogeneous_map.clone(),
            homogeneous_derivation: c.homogeneous_derivation,
            associated_derivation: c.generalized_derivation.as_ref().map(|d| d.images()),
            associated_dimension: c.associated_dimension,
            generalized_homogeneous: existence,
            homogeneous_associate: witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterReport {
    pub dimension: usize,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatementReport {
    pub criterion: Criterion,
    pub outcome: StatementOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoReport {
    pub example: String,
    pub modulus: u32,
    pub truncation: usize,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "report", rename_all = "kebab-case")]
pub enum Report {
    Validation(ValidationReport),
    Classification(ClassificationReport),
    Primeness(PrimenessReport),
    Center(CenterReport),
    Theorem(TheoremVerdict),
    Statement(StatementReport),
    Lemma(LemmaReport),
    Sweep(SweepReport),
    Evidence(EvidenceReport),
    Demo(DemoReport),
}

pub fn parse_report(text: &str) -> Result<Report> {
    from_json(text)
}

/// Pretty JSON with a trailing newline.
pub fn emit_report(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = Report::Center(CenterReport {
            dimension: 1,
            basis: vec![vec![1, 0, 0, 1]],
        });
        let text = emit_report(&r);
        assert!(text.starts_with("{\n  \"kind\": \"center\""));
        assert_eq!(parse_report(&text).unwrap(), r);
    }

    #[test]
    fn rejects_unknown_kinds_and_trailing_data() {
        assert!(parse_report(r#"{"kind":"nope","report":{}}"#).is_err());
        assert!(parse_report(r#"{"kind":"center","report":{"dimension":0,"basis":[]}} x"#).is_err());
    }
}
