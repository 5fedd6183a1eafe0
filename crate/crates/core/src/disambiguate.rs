//! Ranking competing readings of one sentence.
//!
//! Readings whose lexical constraints are violated are rejected outright.
//! The rest are ordered so that analyses needing contrastive focus come
//! after those that do not.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::analyze::{AnalysisResult, ObservedClause, Verdict};
use crate::clause::{Category, ConstituentId, LexKey};
use crate::lexicon::{Constraint, Lexicon};
use crate::linearize::Grammar;

/// Hoberg class of sentence negation.
const NEGATION_CLASS: u8 = 41;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum ContextAtom {
    /// The ambiguous item stands in the scope of negation.
    Negated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CandidateReading {
    pub label: String,
    pub clause: ObservedClause,
    #[cfg_attr(feature = "serde", serde(default))]
    pub constraint_context: BTreeSet<ContextAtom>,
}

impl CandidateReading {
    pub fn new(label: &str, clause: ObservedClause) -> Self {
        CandidateReading {
            label: label.into(),
            clause,
            constraint_context: BTreeSet::new(),
        }
    }

    /// Adds `Negated` when a negation modifier precedes `item`.
    pub fn with_negation_scope(mut self, item: &ConstituentId) -> Self {
        if in_negation_scope(&self.clause, item) {
            self.constraint_context.insert(ContextAtom::Negated);
        }
        self
    }
}

/// Whether a class-41 modifier precedes `item` in the observed order.
pub fn in_negation_scope(clause: &ObservedClause, item: &ConstituentId) -> bool {
    let Some(pos) = clause.constituents.iter().position(|c| &c.id == item) else {
        return false;
    };
    clause.constituents[..pos].iter().any(|c| {
        c.category == Category::M && c.hoberg_index.map(|i| i.get()) == Some(NEGATION_CLASS)
    })
}

/// A prepositional phrase can attach inside a noun phrase only when the
/// noun phrase is not a pronoun.
pub fn np_adjunct_possible(head_is_pronoun: bool) -> bool {
    !head_is_pronoun
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedLexKey(pub LexKey);

impl fmt::Display for UnresolvedLexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lexicon has no entry for `{}`", self.0)
    }
}

/// `false` iff some referenced reading's constraint is violated by the
/// candidate's context.
pub fn filter_constraints(c: &CandidateReading, lex: &Lexicon) -> Result<bool, UnresolvedLexKey> {
    let mut ok = true;
    for constituent in &c.clause.constituents {
        let Some(key) = &constituent.lexicon_key else {
            continue;
        };
        let entry = lex
            .resolve(key)
            .ok_or_else(|| UnresolvedLexKey(key.clone()))?;
        for constraint in &entry.constraints {
            match constraint {
                Constraint::NoNegation => {
                    if c.constraint_context.contains(&ContextAtom::Negated) {
                        ok = false;
                    }
                }
            }
        }
    }
    Ok(ok)
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RankedReading {
    pub label: String,
    /// Position in the caller's candidate list.
    pub input_index: usize,
    pub constraint_ok: bool,
    pub verdict: Verdict,
    pub markedness_cost: Option<u32>,
    pub analysis: AnalysisResult,
}

impl RankedReading {
    pub fn rejected(&self) -> bool {
        !self.constraint_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RankedReadings {
    pub readings: Vec<RankedReading>,
}

impl RankedReadings {
    pub fn preferred(&self) -> Option<&RankedReading> {
        self.readings.first().filter(|r| r.constraint_ok)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.readings.iter().map(|r| r.label.as_str()).collect()
    }
}

impl<'a> Grammar<'a> {
    /// Orders candidates: constraint-satisfying before rejected, then
    /// grammatical before ungrammatical, then by ascending markedness cost.
    /// Ties keep the caller's order.
    pub fn rank_readings(&self, candidates: &[CandidateReading]) -> Result<RankedReadings, UnresolvedLexKey> {
        let mut readings = Vec::with_capacity(candidates.len());
        for (input_index, c) in candidates.iter().enumerate() {
            let constraint_ok = filter_constraints(c, self.lexicon)?;
            let analysis = self.analyze(&c.clause);
            readings.push(RankedReading {
                label: c.label.clone(),
                input_index,
                constraint_ok,
                verdict: analysis.verdict,
                markedness_cost: analysis.markedness_cost,
                analysis,
            });
        }
        readings.sort_by_key(|r| {
            (
                !r.constraint_ok,
                r.verdict == Verdict::Ungrammatical,
                r.markedness_cost.unwrap_or(u32::MAX),
                r.input_index,
            )
        });
        Ok(RankedReadings { readings })
    }
}
