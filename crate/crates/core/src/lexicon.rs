//! Modifier dictionary: position class plus the per-word flags that
//! generation and analysis consult.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::clause::{Constituent, HobergIndex, LexKey};

/// Usage constraint carried by a reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Constraint {
    /// The reading may not stand in the scope of negation.
    NoNegation,
}

impl Constraint {
    pub fn as_str(self) -> &'static str {
        match self {
            Constraint::NoNegation => "NO_NEGATION",
        }
    }
}

impl core::str::FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NO_NEGATION" => Ok(Constraint::NoNegation),
            other => Err(other.to_owned()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct LexEntry {
    pub lemma: String,
    pub reading_id: String,
    pub hoberg_index: HobergIndex,
    pub gloss: String,
    pub rhematic: bool,
    pub focusable: bool,
    pub vorfeld_capable: bool,
    pub constraints: BTreeSet<Constraint>,
    /// Flag values set without direct attestation.
    pub inferred: bool,
}

impl LexEntry {
    pub fn new(lemma: &str, reading_id: &str, hoberg_index: HobergIndex) -> Self {
        LexEntry {
            lemma: lemma.to_owned(),
            reading_id: reading_id.to_owned(),
            hoberg_index,
            gloss: String::new(),
            rhematic: true,
            focusable: true,
            vorfeld_capable: true,
            constraints: BTreeSet::new(),
            inferred: false,
        }
    }

    pub fn key(&self) -> LexKey {
        LexKey::reading(&self.lemma, &self.reading_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateReading {
    pub lemma: String,
    pub reading_id: String,
}

impl fmt::Display for DuplicateReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "duplicate reading {}#{}", self.lemma, self.reading_id)
    }
}

/// Immutable-after-load map from lemma to its readings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<LexEntry>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon::default()
    }

    /// Adds a reading, keeping readings ordered by `reading_id`.
    pub fn insert(&mut self, entry: LexEntry) -> Result<(), DuplicateReading> {
        let readings = self.entries.entry(entry.lemma.clone()).or_default();
        match readings.binary_search_by(|e| e.reading_id.cmp(&entry.reading_id)) {
            Ok(_) => Err(DuplicateReading {
                lemma: entry.lemma,
                reading_id: entry.reading_id,
            }),
            Err(pos) => {
                readings.insert(pos, entry);
                Ok(())
            }
        }
    }

    /// All readings of `lemma`; empty when unknown.
    pub fn lookup(&self, lemma: &str) -> &[LexEntry] {
        self.entries.get(lemma).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Resolves a key; a bare lemma resolves to its first reading.
    pub fn resolve(&self, key: &LexKey) -> Option<&LexEntry> {
        let readings = self.lookup(&key.lemma);
        match &key.reading {
            Some(r) => readings.iter().find(|e| &e.reading_id == r),
            None => readings.first(),
        }
    }

    /// The entry a constituent refers to, if it has a resolvable key.
    pub fn entry_for(&self, c: &Constituent) -> Option<&LexEntry> {
        c.lexicon_key.as_ref().and_then(|k| self.resolve(k))
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every entry, ordered by lemma then reading.
    pub fn iter(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values().flatten()
    }

    pub fn rhematic(&self, c: &Constituent) -> bool {
        self.entry_for(c).map_or(true, |e| e.rhematic)
    }

    pub fn focusable(&self, c: &Constituent) -> bool {
        self.entry_for(c).map_or(true, |e| e.focusable)
    }

    pub fn vorfeld_capable(&self, c: &Constituent) -> bool {
        self.entry_for(c).map_or(true, |e| e.vorfeld_capable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(i: u8) -> HobergIndex {
        HobergIndex::new(i).unwrap()
    }

    #[test]
    fn homonyms_are_ordered_and_unique() {
        let mut lex = Lexicon::new();
        lex.insert(LexEntry::new("eher", "5", idx(5))).unwrap();
        lex.insert(LexEntry::new("eher", "26", idx(26))).unwrap();
        let readings: Vec<_> = lex.lookup("eher").iter().map(|e| e.hoberg_index.get()).collect();
        // "26" < "5" lexically
        assert_eq!(readings, [26, 5]);
        assert!(lex.insert(LexEntry::new("eher", "5", idx(5))).is_err());
        assert_eq!(lex.len(), 2);
    }

    #[test]
    fn unknown_lemma_is_empty() {
        let lex = Lexicon::new();
        assert!(lex.lookup("xyzzy").is_empty());
        assert!(lex.resolve(&LexKey::lemma("xyzzy")).is_none());
    }

    #[test]
    fn resolve_by_reading() {
        let mut lex = Lexicon::new();
        lex.insert(LexEntry::new("eher", "5", idx(5))).unwrap();
        lex.insert(LexEntry::new("eher", "26", idx(26))).unwrap();
        assert_eq!(
            lex.resolve(&LexKey::reading("eher", "5")).map(|e| e.hoberg_index.get()),
            Some(5)
        );
        assert!(lex.resolve(&LexKey::reading("eher", "7")).is_none());
    }
}
