//! Regression corpus: documents paired with expected outcomes.
//!
//! A corpus file is `{"schema_version": "1", "cases": [...]}` or a bare
//! array of cases. Each case carries its document inline (`document`) or
//! names a file relative to the corpus (`document_file`).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;
use wortfolge_core::analyze::ObservedClause;
use wortfolge_core::{AnalysisResult, ConstituentId, Grammar, LinearizeError, Verdict};

use crate::document::{load_document, Payload};
use crate::report::{run_analyze, run_disambiguate, run_generate};

fn explicit<'de, D, T>(d: D) -> Result<Option<Option<T>>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    Option::<T>::deserialize(d).map(Some)
}

/// What a case must produce. Absent fields are not checked; for
/// `theme`, `rheme`, `focus` and `markedness_cost` an explicit `null`
/// expects no value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default)]
    pub verdict: Option<Verdict>,
    #[serde(default)]
    pub rendered: Option<String>,
    #[serde(default, deserialize_with = "explicit")]
    pub theme: Option<Option<ConstituentId>>,
    #[serde(default, deserialize_with = "explicit")]
    pub rheme: Option<Option<ConstituentId>>,
    #[serde(default, deserialize_with = "explicit")]
    pub focus: Option<Option<ConstituentId>>,
    #[serde(default)]
    pub focus_ambiguous: Option<Vec<ConstituentId>>,
    #[serde(default, deserialize_with = "explicit")]
    pub markedness_cost: Option<Option<u32>>,
    /// Ids of the constituents a stress warning offers.
    #[serde(default)]
    pub stress_candidates: Option<Vec<String>>,
    #[serde(default)]
    pub ranking: Option<Vec<String>>,
    #[serde(default)]
    pub rejected: Option<Vec<String>>,
    /// Error kind a generation case must fail with, e.g. `INVALID_CLAUSE`.
    #[serde(default)]
    pub error: Option<String>,
}

/// The printed order differs from what the canonical form produces.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct ExpectedMismatch {
    pub printed: String,
    pub note: String,
}

#[derive(Debug, Deserialize)]
pub struct CorpusCase {
    pub case_id: String,
    #[serde(default)]
    pub document: Option<Box<RawValue>>,
    #[serde(default)]
    pub document_file: Option<PathBuf>,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default)]
    pub expected_mismatch: Option<ExpectedMismatch>,
}

#[derive(Deserialize)]
struct CorpusFile {
    schema_version: String,
    cases: Vec<CorpusCase>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus file: {0}")]
    Parse(String),
    #[error("unsupported corpus schema_version `{0}`")]
    SchemaVersion(String),
    #[error("case {case_id}: cannot read {path}: {source}")]
    MissingCaseFile {
        case_id: String,
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("case {0}: needs exactly one of document and document_file")]
    NoDocument(String),
    #[error("duplicate case_id {0}")]
    DuplicateCase(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case_id: String,
    pub status: Status,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub produced: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<ExpectedMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub mismatched: usize,
    pub cases: Vec<CaseResult>,
}

impl CorpusSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.cases
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.case_id.as_str())
            .collect()
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            match c.status {
                Status::Pass => out.push_str(&format!("PASS      {}\n", c.case_id)),
                Status::Fail => {
                    out.push_str(&format!("FAIL      {}\n", c.case_id));
                    for f in &c.failures {
                        out.push_str(&format!("          {f}\n"));
                    }
                }
                Status::Mismatch => {
                    let m = c.mismatch.as_ref().expect("mismatch cases carry a marker");
                    out.push_str(&format!("MISMATCH  {}\n", c.case_id));
                    out.push_str(&format!("          printed:  {}\n", m.printed));
                    if let Some(p) = &c.produced {
                        out.push_str(&format!("          produced: {p}\n"));
                    }
                    out.push_str(&format!("          note:     {}\n", m.note));
                    for f in &c.failures {
                        out.push_str(&format!("          {f}\n"));
                    }
                }
            }
        }
        out.push_str(&format!(
            "{} cases: {} passed, {} failed, {} expected mismatches\n",
            self.total, self.passed, self.failed, self.mismatched
        ));
        out
    }
}

pub fn error_kind(e: &LinearizeError) -> &'static str {
    match e {
        LinearizeError::InvalidClause(_) => "INVALID_CLAUSE",
        LinearizeError::InvalidTags(_) => "INVALID_TAGS",
        LinearizeError::InexpressibleTags { .. } => "INEXPRESSIBLE_TAGS",
        LinearizeError::NoVorfeld => "NO_VORFELD",
        LinearizeError::NotVerbSecond => "NOT_VERB_SECOND",
        LinearizeError::TooManyConstituents(_) => "TOO_MANY_CONSTITUENTS",
    }
}

fn show(id: &Option<ConstituentId>) -> String {
    id.as_ref().map_or_else(|| "none".to_owned(), |i| format!("`{i}`"))
}

fn check_analysis(exp: &Expected, a: &AnalysisResult, failures: &mut Vec<String>) {
    if let Some(v) = exp.verdict {
        if v != a.verdict {
            failures.push(format!("verdict: expected {}, got {}", v.as_str(), a.verdict.as_str()));
        }
    }
    for (name, want, got) in [
        ("theme", &exp.theme, &a.theme),
        ("rheme", &exp.rheme, &a.rheme),
        ("focus", &exp.focus, &a.focus),
    ] {
        if let Some(want) = want {
            if want != got {
                failures.push(format!("{name}: expected {}, got {}", show(want), show(got)));
            }
        }
    }
    if let Some(want) = &exp.focus_ambiguous {
        if want != &a.focus_ambiguous {
            failures.push(format!(
                "focus_ambiguous: expected {want:?}, got {:?}",
                a.focus_ambiguous
            ));
        }
    }
    if let Some(want) = exp.markedness_cost {
        if want != a.markedness_cost {
            failures.push(format!(
                "markedness_cost: expected {want:?}, got {:?}",
                a.markedness_cost
            ));
        }
    }
    if let Some(want) = &exp.stress_candidates {
        let got: Vec<String> = a
            .stress_warning
            .iter()
            .flat_map(|w| &w.candidates)
            .map(|c| match c {
                wortfolge_core::analyze::StressCandidate::FiniteVerb(v) => v.join(" "),
                wortfolge_core::analyze::StressCandidate::Vorfeld(id) => id.to_string(),
            })
            .collect();
        if want != &got {
            failures.push(format!("stress_candidates: expected {want:?}, got {got:?}"));
        }
    }
}

fn check_rendered(exp: &Expected, produced: &str, failures: &mut Vec<String>) {
    if let Some(want) = &exp.rendered {
        if want != produced {
            failures.push(format!("rendered: expected `{want}`, got `{produced}`"));
        }
    }
}

/// Runs one case's document; returns the produced sentence, if any.
fn evaluate(
    g: &Grammar,
    text: &str,
    exp: &Expected,
    failures: &mut Vec<String>,
) -> Option<String> {
    let doc = match load_document(text, None, g.lexicon) {
        Ok(d) => d,
        Err(e) => {
            failures.push(format!("document: {e}"));
            return None;
        }
    };
    match &doc.payload {
        Payload::Generate(req) => {
            match run_generate(g, &req.clause, &req.effective_tags(), false) {
                Err(e) => {
                    let kind = error_kind(&e);
                    if exp.error.as_deref() != Some(kind) {
                        failures.push(format!("generation failed: {e}"));
                    }
                    None
                }
                Ok(report) => {
                    if let Some(kind) = &exp.error {
                        failures.push(format!("expected error {kind}, generation succeeded"));
                    }
                    check_rendered(exp, &report.rendered, failures);
                    let surface = g
                        .linearize(&req.clause, &req.effective_tags())
                        .expect("linearized above");
                    let obs = ObservedClause::from_surface(&req.clause, &surface);
                    check_analysis(exp, &g.analyze(&obs), failures);
                    Some(report.rendered)
                }
            }
        }
        Payload::Analyze(obs) => {
            let report = run_analyze(g, obs);
            check_rendered(exp, &report.rendered, failures);
            check_analysis(exp, &report.analysis, failures);
            Some(report.rendered)
        }
        Payload::Disambiguate(req) => {
            let readings = req.readings();
            let report = match run_disambiguate(g, &readings) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("disambiguation: {e}"));
                    return None;
                }
            };
            let labels: Vec<String> = report.readings.iter().map(|r| r.label.clone()).collect();
            if let Some(want) = &exp.ranking {
                if want != &labels {
                    failures.push(format!("ranking: expected {want:?}, got {labels:?}"));
                }
            }
            if let Some(want) = &exp.rejected {
                let got: Vec<String> = report
                    .readings
                    .iter()
                    .filter(|r| r.rejected)
                    .map(|r| r.label.clone())
                    .collect();
                if want != &got {
                    failures.push(format!("rejected: expected {want:?}, got {got:?}"));
                }
            }
            let first = report.readings.first()?;
            check_rendered(exp, &first.rendered, failures);
            check_analysis(exp, &g.analyze(&readings[first.input_index].clause), failures);
            Some(first.rendered.clone())
        }
    }
}

fn matches_filter(case_id: &str, filter: Option<&str>) -> bool {
    match filter {
        None => true,
        Some(f) => match f.strip_suffix('*') {
            Some(prefix) => case_id.starts_with(prefix),
            None => case_id == f,
        },
    }
}

/// Runs every case of the corpus in `text`; `base` resolves
/// `document_file` paths.
pub fn run_corpus_str(
    g: &Grammar,
    text: &str,
    base: &Path,
    filter: Option<&str>,
) -> Result<CorpusSummary, CorpusError> {
    let parse_error = |e: serde_json::Error| CorpusError::Parse(e.to_string());
    let cases = if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<CorpusCase>>(text).map_err(parse_error)?
    } else {
        let file: CorpusFile = serde_json::from_str(text).map_err(parse_error)?;
        if file.schema_version != crate::document::SCHEMA_VERSION {
            return Err(CorpusError::SchemaVersion(file.schema_version));
        }
        file.cases
    };
    let mut seen = std::collections::BTreeSet::new();
    for c in &cases {
        if !seen.insert(c.case_id.as_str()) {
            return Err(CorpusError::DuplicateCase(c.case_id.clone()));
        }
    }
    let mut results = Vec::new();
    for case in cases.iter().filter(|c| matches_filter(&c.case_id, filter)) {
        let owned;
        let doc_text = match (&case.document, &case.document_file) {
            (Some(raw), None) => raw.get(),
            (None, Some(file)) => {
                let path = base.join(file);
                owned = std::fs::read_to_string(&path).map_err(|source| {
                    CorpusError::MissingCaseFile {
                        case_id: case.case_id.clone(),
                        path,
                        source,
                    }
                })?;
                owned.as_str()
            }
            _ => return Err(CorpusError::NoDocument(case.case_id.clone())),
        };
        let mut failures = Vec::new();
        let produced = evaluate(g, doc_text, &case.expected, &mut failures);
        let status = match &case.expected_mismatch {
            Some(m) => {
                if produced.as_deref() == Some(m.printed.as_str()) {
                    failures.push("printed order is now produced; drop the mismatch marker".into());
                }
                Status::Mismatch
            }
            None if failures.is_empty() => Status::Pass,
            None => Status::Fail,
        };
        results.push(CaseResult {
            case_id: case.case_id.clone(),
            status,
            failures,
            produced,
            mismatch: case.expected_mismatch.clone(),
        });
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    Ok(CorpusSummary {
        total: results.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        mismatched: count(Status::Mismatch),
        cases: results,
    })
}

pub fn run_corpus(g: &Grammar, path: &Path, filter: Option<&str>) -> Result<CorpusSummary, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::MissingCaseFile {
        case_id: "-".into(),
        path: path.to_owned(),
        source,
    })?;
    run_corpus_str(g, &text, path.parent().unwrap_or(Path::new(".")), filter)
}
