//! Clause-level domain types.
//!
//! A clause is modelled as a verb complex plus an unordered multiset of
//! orderable constituents. Verbs never enter the multiset: their placement
//! is fixed by the clause type.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Syntactic category of a clause element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[allow(non_camel_case_types)]
pub enum Category {
    /// Nominative complement (subject).
    N,
    /// Accusative complement.
    A,
    /// Dative complement.
    D,
    /// Genitive complement.
    G,
    /// Prepositional object.
    PO,
    /// Situative complement.
    SIT,
    /// Directional complement.
    DIR,
    /// Expansive complement.
    EXP,
    /// Nominal complement.
    NOM,
    /// Adjectival complement.
    ADJ,
    /// Modifier.
    M,
    /// Finite verb.
    V_FIN,
    /// Non-finite verb part.
    V_NONFIN,
}

impl Category {
    /// Every category that may appear in the orderable multiset.
    pub const ORDERABLE: [Category; 11] = [
        Category::N,
        Category::A,
        Category::D,
        Category::G,
        Category::PO,
        Category::SIT,
        Category::DIR,
        Category::EXP,
        Category::NOM,
        Category::ADJ,
        Category::M,
    ];

    pub fn is_verbal(self) -> bool {
        matches!(self, Category::V_FIN | Category::V_NONFIN)
    }

    /// Categories that may head a support-verb construction.
    pub fn can_be_svc(self) -> bool {
        matches!(
            self,
            Category::N | Category::A | Category::D | Category::G | Category::PO
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::N => "N",
            Category::A => "A",
            Category::D => "D",
            Category::G => "G",
            Category::PO => "PO",
            Category::SIT => "SIT",
            Category::DIR => "DIR",
            Category::EXP => "EXP",
            Category::NOM => "NOM",
            Category::ADJ => "ADJ",
            Category::M => "M",
            Category::V_FIN => "V_FIN",
            Category::V_NONFIN => "V_NONFIN",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Category {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cat = match s {
            "N" => Category::N,
            "A" => Category::A,
            "D" => Category::D,
            "G" => Category::G,
            "PO" => Category::PO,
            "SIT" => Category::SIT,
            "DIR" => Category::DIR,
            "EXP" => Category::EXP,
            "NOM" | "Nom" => Category::NOM,
            "ADJ" | "Adj" => Category::ADJ,
            "M" => Category::M,
            "V_FIN" => Category::V_FIN,
            "V_NONFIN" => Category::V_NONFIN,
            _ => return Err(UnknownCategory(s.to_owned())),
        };
        Ok(cat)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCategory(pub String);

impl fmt::Display for UnknownCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown syntactic category `{}`", self.0)
    }
}

/// A binary feature that may also be not applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum TriState {
    #[cfg_attr(feature = "serde", serde(rename = "+"))]
    Plus,
    #[cfg_attr(feature = "serde", serde(rename = "-"))]
    Minus,
    #[default]
    #[cfg_attr(feature = "serde", serde(rename = "na"))]
    NotApplicable,
}

impl TriState {
    pub const ALL: [TriState; 3] = [TriState::Plus, TriState::Minus, TriState::NotApplicable];

    /// Whether this value satisfies a pattern requirement. A value that is
    /// not applicable satisfies every requirement.
    pub fn satisfies(self, required: Option<bool>) -> bool {
        match (self, required) {
            (_, None) | (TriState::NotApplicable, _) => true,
            (TriState::Plus, Some(want)) => want,
            (TriState::Minus, Some(want)) => !want,
        }
    }
}

/// Morphosyntactic features relevant to slot matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct Features {
    pub definite: TriState,
    pub animate: TriState,
    pub pronominal: bool,
    pub svc: bool,
}

impl Features {
    pub fn new(definite: TriState, animate: TriState) -> Self {
        Features {
            definite,
            animate,
            pronominal: false,
            svc: false,
        }
    }

    pub fn pronoun() -> Self {
        Features {
            pronominal: true,
            ..Features::default()
        }
    }
}

/// Hoberg modifier position class, 1 through 44.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "u8", into = "u8"))]
pub struct HobergIndex(u8);

impl HobergIndex {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 44;

    pub fn new(index: u8) -> Option<Self> {
        (Self::MIN..=Self::MAX)
            .contains(&index)
            .then_some(HobergIndex(index))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for HobergIndex {
    type Error = InvalidHobergIndex;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        HobergIndex::new(value).ok_or(InvalidHobergIndex(value))
    }
}

impl From<HobergIndex> for u8 {
    fn from(value: HobergIndex) -> u8 {
        value.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidHobergIndex(pub u8);

impl fmt::Display for InvalidHobergIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hoberg index {} outside 1..=44", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum ThematicTag {
    Theme,
    Rheme,
    Focus,
}

impl ThematicTag {
    pub const ALL: [ThematicTag; 3] = [ThematicTag::Theme, ThematicTag::Rheme, ThematicTag::Focus];

    pub fn as_str(self) -> &'static str {
        match self {
            ThematicTag::Theme => "THEME",
            ThematicTag::Rheme => "RHEME",
            ThematicTag::Focus => "FOCUS",
        }
    }
}

impl fmt::Display for ThematicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ConstituentId(pub String);

impl ConstituentId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ConstituentId {
    fn from(s: &str) -> Self {
        ConstituentId(s.to_owned())
    }
}

impl fmt::Display for ConstituentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Reference to one lexicon reading, written `lemma` or `lemma#reading`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "String", into = "String"))]
pub struct LexKey {
    pub lemma: String,
    pub reading: Option<String>,
}

impl LexKey {
    pub fn lemma(lemma: &str) -> Self {
        LexKey {
            lemma: lemma.to_owned(),
            reading: None,
        }
    }

    pub fn reading(lemma: &str, reading: &str) -> Self {
        LexKey {
            lemma: lemma.to_owned(),
            reading: Some(reading.to_owned()),
        }
    }
}

impl core::str::FromStr for LexKey {
    type Err = core::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.split_once('#') {
            Some((lemma, reading)) => LexKey::reading(lemma, reading),
            None => LexKey::lemma(s),
        })
    }
}

impl From<String> for LexKey {
    fn from(s: String) -> Self {
        match s.parse() {
            Ok(key) => key,
            Err(never) => match never {},
        }
    }
}

impl From<LexKey> for String {
    fn from(key: LexKey) -> String {
        alloc::format!("{key}")
    }
}

impl fmt::Display for LexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reading {
            Some(r) => write!(f, "{}#{}", self.lemma, r),
            None => f.write_str(&self.lemma),
        }
    }
}

/// One orderable clause element.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Constituent {
    pub id: ConstituentId,
    pub category: Category,
    #[cfg_attr(feature = "serde", serde(default))]
    pub features: Features,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub hoberg_index: Option<HobergIndex>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub lexicon_key: Option<LexKey>,
    pub surface: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub tag: Option<ThematicTag>,
}

/// Per-constituent invariant violated at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstituentError {
    VerbalCategory(Category),
    MissingHobergIndex,
    UnexpectedHobergIndex(Category),
    EmptySurface,
    SvcCategory(Category),
}

impl fmt::Display for ConstituentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstituentError::VerbalCategory(c) => {
                write!(f, "verbal category {c} is not an orderable constituent")
            }
            ConstituentError::MissingHobergIndex => f.write_str("modifier without hoberg index"),
            ConstituentError::UnexpectedHobergIndex(c) => {
                write!(f, "hoberg index on non-modifier category {c}")
            }
            ConstituentError::EmptySurface => f.write_str("empty surface"),
            ConstituentError::SvcCategory(c) => {
                write!(f, "category {c} cannot be part of a support verb construction")
            }
        }
    }
}

impl Constituent {
    /// Builds a non-modifier constituent.
    pub fn new(
        id: &str,
        category: Category,
        features: Features,
        surface: &[&str],
    ) -> Result<Self, ConstituentError> {
        let c = Constituent {
            id: id.into(),
            category,
            features,
            hoberg_index: None,
            lexicon_key: None,
            surface: surface.iter().map(|s| (*s).to_owned()).collect(),
            tag: None,
        };
        c.check()?;
        Ok(c)
    }

    /// Builds a modifier with its position class.
    pub fn modifier(id: &str, index: HobergIndex, surface: &[&str]) -> Result<Self, ConstituentError> {
        let c = Constituent {
            id: id.into(),
            category: Category::M,
            features: Features::default(),
            hoberg_index: Some(index),
            lexicon_key: None,
            surface: surface.iter().map(|s| (*s).to_owned()).collect(),
            tag: None,
        };
        c.check()?;
        Ok(c)
    }

    pub fn with_lexicon_key(mut self, key: LexKey) -> Self {
        self.lexicon_key = Some(key);
        self
    }

    pub fn with_tag(mut self, tag: Option<ThematicTag>) -> Self {
        self.tag = tag;
        self
    }

    /// Checks the per-constituent invariants.
    pub fn check(&self) -> Result<(), ConstituentError> {
        if self.category.is_verbal() {
            return Err(ConstituentError::VerbalCategory(self.category));
        }
        match (self.category, self.hoberg_index) {
            (Category::M, None) => return Err(ConstituentError::MissingHobergIndex),
            (c, Some(_)) if c != Category::M => {
                return Err(ConstituentError::UnexpectedHobergIndex(c))
            }
            _ => {}
        }
        if self.surface.is_empty() {
            return Err(ConstituentError::EmptySurface);
        }
        if self.features.svc && !self.category.can_be_svc() {
            return Err(ConstituentError::SvcCategory(self.category));
        }
        Ok(())
    }

    /// Personal pronouns: pronominal case-marked noun phrases.
    pub fn is_personal_pronoun(&self) -> bool {
        self.features.pronominal
            && matches!(
                self.category,
                Category::N | Category::A | Category::D | Category::G
            )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct VerbComplex {
    pub finite: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub nonfinite: Vec<String>,
}

impl VerbComplex {
    pub fn new(finite: &[&str], nonfinite: &[&str]) -> Self {
        VerbComplex {
            finite: finite.iter().map(|s| (*s).to_owned()).collect(),
            nonfinite: nonfinite.iter().map(|s| (*s).to_owned()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum ClauseType {
    /// Verb-second declarative matrix clause.
    V2,
    /// Verb-final subordinate clause.
    VF,
}

/// An unordered clause specification.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ClauseSpec {
    pub clause_type: ClauseType,
    pub verb: VerbComplex,
    pub constituents: Vec<Constituent>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub complementizer: Option<String>,
}

impl ClauseSpec {
    pub fn v2(verb: VerbComplex, constituents: Vec<Constituent>) -> Self {
        ClauseSpec {
            clause_type: ClauseType::V2,
            verb,
            constituents,
            complementizer: None,
        }
    }

    pub fn vf(complementizer: &str, verb: VerbComplex, constituents: Vec<Constituent>) -> Self {
        ClauseSpec {
            clause_type: ClauseType::VF,
            verb,
            constituents,
            complementizer: Some(complementizer.to_owned()),
        }
    }

    pub fn get(&self, id: &ConstituentId) -> Option<&Constituent> {
        self.constituents.iter().find(|c| &c.id == id)
    }

    pub fn position(&self, id: &ConstituentId) -> Option<usize> {
        self.constituents.iter().position(|c| &c.id == id)
    }

    /// The nominative constituent, if any.
    pub fn subject(&self) -> Option<&Constituent> {
        self.constituents.iter().find(|c| c.category == Category::N)
    }

    /// Tags carried inline on the constituents.
    pub fn inline_tags(&self) -> TagAssignment {
        let mut tags = TagAssignment::new();
        for c in &self.constituents {
            if let Some(tag) = c.tag {
                tags.map.insert(c.id.clone(), tag);
            }
        }
        tags
    }

    /// Copy of the clause with every inline tag removed.
    pub fn untagged(&self) -> ClauseSpec {
        let mut spec = self.clone();
        for c in &mut spec.constituents {
            c.tag = None;
        }
        spec
    }
}

/// Map from constituent id to thematic tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct TagAssignment {
    pub map: BTreeMap<ConstituentId, ThematicTag>,
}

impl TagAssignment {
    pub fn new() -> Self {
        TagAssignment::default()
    }

    pub fn with(mut self, id: &str, tag: ThematicTag) -> Self {
        self.map.insert(id.into(), tag);
        self
    }

    pub fn get(&self, id: &ConstituentId) -> Option<ThematicTag> {
        self.map.get(id).copied()
    }

    /// The single constituent carrying `tag`, if exactly one does.
    pub fn holder(&self, tag: ThematicTag) -> Option<&ConstituentId> {
        let mut it = self.map.iter().filter(|(_, t)| **t == tag).map(|(id, _)| id);
        let first = it.next();
        if it.next().is_some() {
            None
        } else {
            first
        }
    }

    pub fn count(&self, tag: ThematicTag) -> usize {
        self.map.values().filter(|t| **t == tag).count()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// Cardinality and membership problems with respect to `spec`.
    pub fn problems(&self, spec: &ClauseSpec) -> Vec<Violation> {
        let mut out = Vec::new();
        for id in self.map.keys() {
            if spec.get(id).is_none() {
                out.push(Violation::UnknownTaggedConstituent(id.clone()));
            }
        }
        for tag in ThematicTag::ALL {
            if self.count(tag) > 1 {
                out.push(Violation::TagCardinality(tag));
            }
        }
        out
    }
}

/// A violated clause invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    DuplicateNominative,
    /// More than one of SIT, DIR, EXP.
    ComplementCooccurrence(Vec<Category>),
    TagCardinality(ThematicTag),
    DuplicateId(ConstituentId),
    Constituent(ConstituentId, String),
    ComplementizerInV2,
    EmptyFiniteVerb,
    UnknownTaggedConstituent(ConstituentId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNominative => f.write_str("duplicate nominative"),
            Violation::ComplementCooccurrence(cats) => {
                f.write_str("complement cooccurrence:")?;
                for c in cats {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
            Violation::TagCardinality(ThematicTag::Theme) => f.write_str("theme cardinality"),
            Violation::TagCardinality(ThematicTag::Rheme) => f.write_str("rheme cardinality"),
            Violation::TagCardinality(ThematicTag::Focus) => f.write_str("focus cardinality"),
            Violation::DuplicateId(id) => write!(f, "duplicate constituent id `{id}`"),
            Violation::Constituent(id, msg) => write!(f, "constituent `{id}`: {msg}"),
            Violation::ComplementizerInV2 => f.write_str("complementizer in verb-second clause"),
            Violation::EmptyFiniteVerb => f.write_str("empty finite verb"),
            Violation::UnknownTaggedConstituent(id) => {
                write!(f, "tag on unknown constituent `{id}`")
            }
        }
    }
}

/// Validates every clause-level invariant. The result is sorted, so it does
/// not depend on the order of the constituent multiset.
pub fn validate_clause(spec: &ClauseSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if spec.verb.finite.is_empty() {
        out.push(Violation::EmptyFiniteVerb);
    }
    if spec.complementizer.is_some() && spec.clause_type == ClauseType::V2 {
        out.push(Violation::ComplementizerInV2);
    }
    let mut seen = alloc::collections::BTreeSet::new();
    for c in &spec.constituents {
        if !seen.insert(&c.id) {
            out.push(Violation::DuplicateId(c.id.clone()));
        }
        if let Err(e) = c.check() {
            out.push(Violation::Constituent(c.id.clone(), alloc::format!("{e}")));
        }
    }
    out.extend(cooccurrence_violations(spec));
    for tag in ThematicTag::ALL {
        if spec.constituents.iter().filter(|c| c.tag == Some(tag)).count() > 1 {
            out.push(Violation::TagCardinality(tag));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Clause-level slash exclusions: one nominative, one of SIT/DIR/EXP.
pub(crate) fn cooccurrence_violations(spec: &ClauseSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let nominatives = spec
        .constituents
        .iter()
        .filter(|c| c.category == Category::N && !c.features.svc)
        .count();
    if nominatives > 1 {
        out.push(Violation::DuplicateNominative);
    }
    let mut complements: Vec<Category> = spec
        .constituents
        .iter()
        .map(|c| c.category)
        .filter(|c| matches!(c, Category::SIT | Category::DIR | Category::EXP))
        .collect();
    if complements.len() > 1 {
        complements.sort();
        out.push(Violation::ComplementCooccurrence(complements));
    }
    out
}
