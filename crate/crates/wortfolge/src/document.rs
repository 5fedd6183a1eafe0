//! JSON input documents.
//!
//! A document is an envelope
//!
//! ```json
//! { "schema_version": "1", "mode": "GENERATE", "payload": { ... } }
//! ```
//!
//! or, when the command already fixes the mode, the bare payload. Parse
//! errors carry the line and column in the original text.

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;
use wortfolge_core::analyze::ObservedClause;
use wortfolge_core::{
    CandidateReading, Category, ClauseSpec, Constituent, ConstituentId, LexKey, Lexicon,
    TagAssignment,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Generate,
    Analyze,
    Disambiguate,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Generate => "GENERATE",
            Mode::Analyze => "ANALYZE",
            Mode::Disambiguate => "DISAMBIGUATE",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateRequest {
    pub clause: ClauseSpec,
    /// When absent, tags written on the constituents are used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<TagAssignment>,
}

impl GenerateRequest {
    pub fn effective_tags(&self) -> TagAssignment {
        self.tags
            .clone()
            .unwrap_or_else(|| self.clause.inline_tags())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisambiguateRequest {
    pub candidates: Vec<CandidateReading>,
    /// Marks every candidate whose copy of this constituent follows a
    /// negation as negated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation_scope: Option<ConstituentId>,
}

impl DisambiguateRequest {
    pub fn readings(&self) -> Vec<CandidateReading> {
        self.candidates
            .iter()
            .map(|c| match &self.negation_scope {
                Some(item) => c.clone().with_negation_scope(item),
                None => c.clone(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Generate(GenerateRequest),
    Analyze(ObservedClause),
    Disambiguate(DisambiguateRequest),
}

impl Payload {
    pub fn mode(&self) -> Mode {
        match self {
            Payload::Generate(_) => Mode::Generate,
            Payload::Analyze(_) => Mode::Analyze,
            Payload::Disambiguate(_) => Mode::Disambiguate,
        }
    }

    fn constituents_mut(&mut self) -> Vec<&mut Constituent> {
        match self {
            Payload::Generate(r) => r.clause.constituents.iter_mut().collect(),
            Payload::Analyze(o) => o.constituents.iter_mut().collect(),
            Payload::Disambiguate(r) => r
                .candidates
                .iter_mut()
                .flat_map(|c| c.clause.constituents.iter_mut())
                .collect(),
        }
    }

    /// Fills in the modifier class of modifiers that only name a lexicon
    /// reading.
    pub fn resolve_indexes(&mut self, lex: &Lexicon) -> Result<(), DocumentError> {
        for c in self.constituents_mut() {
            if c.category != Category::M || c.hoberg_index.is_some() {
                continue;
            }
            let key = c
                .lexicon_key
                .as_ref()
                .ok_or_else(|| DocumentError::MissingIndex(c.id.clone()))?;
            let entry = lex.resolve(key).ok_or_else(|| DocumentError::UnresolvedKey {
                id: c.id.clone(),
                key: key.clone(),
            })?;
            c.hoberg_index = Some(entry.hoberg_index);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseDocument {
    pub schema_version: String,
    pub payload: Payload,
}

impl ClauseDocument {
    pub fn mode(&self) -> Mode {
        self.payload.mode()
    }
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line} column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("document has no schema_version")]
    MissingSchemaVersion,
    #[error("unsupported schema_version `{0}`, expected \"1\"")]
    SchemaVersion(String),
    #[error("document has no mode")]
    MissingMode,
    #[error("document has no payload")]
    MissingPayload,
    #[error("document mode is {found}, command expects {expected}")]
    ModeMismatch { expected: Mode, found: Mode },
    #[error("modifier `{0}` has neither hoberg_index nor lexicon_key")]
    MissingIndex(ConstituentId),
    #[error("constituent `{id}`: lexicon has no entry for `{key}`")]
    UnresolvedKey { id: ConstituentId, key: LexKey },
}

#[derive(Deserialize)]
struct Envelope<'a> {
    #[serde(default)]
    schema_version: Option<String>,
    #[serde(default)]
    mode: Option<Mode>,
    #[serde(default, borrow)]
    payload: Option<&'a RawValue>,
}

/// Line and column (both 1-based) of byte `offset` in `text`.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Parses `snippet`, a slice of `text`, reporting errors relative to `text`.
fn parse_at<'a, T: Deserialize<'a>>(text: &str, snippet: &'a str) -> Result<T, DocumentError> {
    serde_json::from_str(snippet).map_err(|e| {
        let offset = snippet.as_ptr() as usize - text.as_ptr() as usize;
        let (l0, c0) = position(text, offset);
        let (line, column) = if e.line() <= 1 {
            (l0, c0 + e.column().saturating_sub(1))
        } else {
            (l0 + e.line() - 1, e.column())
        };
        DocumentError::Json {
            line,
            column,
            message: strip_location(&e),
        }
    })
}

fn strip_location(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_owned(),
        None => s,
    }
}

fn parse_payload(text: &str, snippet: &str, mode: Mode) -> Result<Payload, DocumentError> {
    let trimmed = snippet.trim_start();
    Ok(match mode {
        Mode::Generate => {
            let probe: serde_json::Map<String, serde_json::Value> = parse_at(text, snippet)?;
            if probe.contains_key("clause") {
                Payload::Generate(parse_at(text, snippet)?)
            } else {
                Payload::Generate(GenerateRequest {
                    clause: parse_at(text, snippet)?,
                    tags: None,
                })
            }
        }
        Mode::Analyze => Payload::Analyze(parse_at(text, snippet)?),
        Mode::Disambiguate if trimmed.starts_with('[') => {
            Payload::Disambiguate(DisambiguateRequest {
                candidates: parse_at(text, snippet)?,
                negation_scope: None,
            })
        }
        Mode::Disambiguate => Payload::Disambiguate(parse_at(text, snippet)?),
    })
}

/// Parses a document. `expected` is the mode fixed by the caller, which
/// also permits a bare payload.
pub fn parse_document(text: &str, expected: Option<Mode>) -> Result<ClauseDocument, DocumentError> {
    let is_object = text.trim_start().starts_with('{');
    let envelope: Option<Envelope> = if is_object {
        let e: Envelope = parse_at(text, text)?;
        (e.mode.is_some() || e.payload.is_some() || e.schema_version.is_some()).then_some(e)
    } else {
        None
    };
    match envelope {
        Some(e) => {
            let version = e.schema_version.ok_or(DocumentError::MissingSchemaVersion)?;
            if version != SCHEMA_VERSION {
                return Err(DocumentError::SchemaVersion(version));
            }
            let mode = e.mode.ok_or(DocumentError::MissingMode)?;
            if let Some(expected) = expected {
                if expected != mode {
                    return Err(DocumentError::ModeMismatch {
                        expected,
                        found: mode,
                    });
                }
            }
            let raw = e.payload.ok_or(DocumentError::MissingPayload)?;
            Ok(ClauseDocument {
                schema_version: version,
                payload: parse_payload(text, raw.get(), mode)?,
            })
        }
        None => {
            let mode = expected.ok_or(DocumentError::MissingMode)?;
            Ok(ClauseDocument {
                schema_version: SCHEMA_VERSION.to_owned(),
                payload: parse_payload(text, text, mode)?,
            })
        }
    }
}

/// Parses and resolves modifier classes against `lex`.
pub fn load_document(
    text: &str,
    expected: Option<Mode>,
    lex: &Lexicon,
) -> Result<ClauseDocument, DocumentError> {
    let mut doc = parse_document(text, expected)?;
    doc.payload.resolve_indexes(lex)?;
    Ok(doc)
}

/// A bare `{ "id": "TAG" }` map.
pub fn parse_tags(text: &str) -> Result<TagAssignment, DocumentError> {
    parse_at(text, text)
}
