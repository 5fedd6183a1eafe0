//! The thematically-tagged canonical form.
//!
//! The canonical form is a single precedence rule: an ordered list of slots,
//! each holding one or more patterns over category, features, thematic tag
//! and modifier class. A constituent's position is the first slot with a
//! matching pattern. Untagged constituents only match tag-free patterns, so
//! tagging a constituent moves it out of its default slot.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::clause::{Category, ClauseSpec, Constituent, ConstituentId, ThematicTag, Violation};
use crate::lexicon::Lexicon;

/// Feature constraints of a pattern. `None` means unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FeatureReq {
    pub definite: Option<bool>,
    pub animate: Option<bool>,
    pub pronominal: Option<bool>,
    /// Support-verb constituents match exactly the patterns with `svc` set.
    pub svc: bool,
}

impl FeatureReq {
    const fn any() -> Self {
        FeatureReq {
            definite: None,
            animate: None,
            pronominal: None,
            svc: false,
        }
    }

    const fn pron() -> Self {
        FeatureReq {
            pronominal: Some(true),
            ..FeatureReq::any()
        }
    }

    const fn full(definite: Option<bool>, animate: Option<bool>) -> Self {
        FeatureReq {
            definite,
            animate,
            pronominal: Some(false),
            svc: false,
        }
    }

    const fn non_pron() -> Self {
        FeatureReq {
            pronominal: Some(false),
            ..FeatureReq::any()
        }
    }

    fn matches(&self, c: &Constituent) -> bool {
        let f = &c.features;
        if f.svc != self.svc {
            return false;
        }
        if let Some(p) = self.pronominal {
            if p != f.pronominal {
                return false;
            }
        }
        f.definite.satisfies(self.definite) && f.animate.satisfies(self.animate)
    }
}

impl fmt::Display for FeatureReq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        let mut sign = |f: &mut fmt::Formatter<'_>, v: Option<bool>, name: &str| {
            if let Some(v) = v {
                any = true;
                write!(f, "{}{}", if v { '+' } else { '-' }, name)
            } else {
                Ok(())
            }
        };
        sign(f, self.definite, "d")?;
        sign(f, self.animate, "a")?;
        match self.pronominal {
            Some(true) => {
                any = true;
                f.write_str("pron")?
            }
            Some(false) if self.definite.is_none() && self.animate.is_none() => {
                any = true;
                f.write_str("-pron")?
            }
            _ => {}
        }
        if self.svc {
            any = true;
            f.write_str("svc")?;
        }
        if !any {
            f.write_str("-")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for FeatureReq {
    type Err = String;

    /// Parses the compact notation used in the slot-table file:
    /// `+d-a`, `pron`, `-pron`, `svc` or `-` for no constraint.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut req = FeatureReq::any();
        if s == "-" {
            return Ok(req);
        }
        let mut rest = s;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("pron") {
                req.pronominal = Some(true);
                rest = r;
            } else if let Some(r) = rest.strip_prefix("-pron") {
                req.pronominal = Some(false);
                rest = r;
            } else if let Some(r) = rest.strip_prefix("svc") {
                req.svc = true;
                rest = r;
            } else {
                let mut chars = rest.chars();
                let value = match chars.next() {
                    Some('+') => true,
                    Some('-') => false,
                    _ => return Err(s.to_owned()),
                };
                match chars.next() {
                    Some('d') => req.definite = Some(value),
                    Some('a') => req.animate = Some(value),
                    _ => return Err(s.to_owned()),
                }
                rest = chars.as_str();
            }
        }
        // Definiteness and animacy are only specified on full noun phrases.
        if req.pronominal.is_none() && (req.definite.is_some() || req.animate.is_some()) {
            req.pronominal = Some(false);
        }
        Ok(req)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotPattern {
    pub categories: Vec<Category>,
    pub features: FeatureReq,
    pub required_tag: Option<ThematicTag>,
    /// Inclusive modifier class interval.
    pub hoberg_range: Option<(u8, u8)>,
    /// Rank among arrow-ordered members of the same slot.
    pub sub_rank: u8,
    /// Transcription note, e.g. where the printed table was normalized.
    pub annotation: Option<String>,
}

impl SlotPattern {
    fn new(categories: &[Category], features: FeatureReq) -> Self {
        SlotPattern {
            categories: categories.to_vec(),
            features,
            required_tag: None,
            hoberg_range: None,
            sub_rank: 0,
            annotation: None,
        }
    }

    fn tagged(mut self, tag: ThematicTag) -> Self {
        self.required_tag = Some(tag);
        self
    }

    fn range(mut self, lo: u8, hi: u8) -> Self {
        self.hoberg_range = Some((lo, hi));
        self
    }

    fn rank(mut self, sub_rank: u8) -> Self {
        self.sub_rank = sub_rank;
        self
    }

    fn note(mut self, note: &str) -> Self {
        self.annotation = Some(note.to_owned());
        self
    }

    /// Whether `c`, carrying `tag`, matches this pattern.
    pub fn matches(&self, c: &Constituent, tag: Option<ThematicTag>) -> bool {
        if self.required_tag != tag {
            return false;
        }
        if !self.categories.contains(&c.category) {
            return false;
        }
        if let Some((lo, hi)) = self.hoberg_range {
            match c.hoberg_index {
                Some(i) if (lo..=hi).contains(&i.get()) => {}
                _ => return false,
            }
        }
        self.features.matches(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    /// 1-based reading-order position.
    pub ordinal: u16,
    /// Printed table row, 1 through 7.
    pub row: u8,
    pub patterns: Vec<SlotPattern>,
}

impl Slot {
    pub fn required_tag(&self) -> Option<ThematicTag> {
        self.patterns.first().and_then(|p| p.required_tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    Empty,
    /// Ordinals must run 1, 2, 3, ... in table order.
    NonDenseOrdinal { expected: u16, found: u16 },
    EmptySlot(u16),
    /// A slot mixes patterns with different tag requirements.
    MixedTags(u16),
    /// The theme, rheme and focus slots are missing or out of order.
    TagSlotOrder,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::Empty => f.write_str("slot table is empty"),
            TableError::NonDenseOrdinal { expected, found } => {
                write!(f, "slot ordinal {found} where {expected} was expected")
            }
            TableError::EmptySlot(o) => write!(f, "slot {o} has no patterns"),
            TableError::MixedTags(o) => write!(f, "slot {o} mixes tag requirements"),
            TableError::TagSlotOrder => {
                f.write_str("theme slot must precede rheme slot, which must precede focus slot")
            }
        }
    }
}

/// Position of a constituent under the canonical form.
///
/// Derived ordering is lexicographic over the fields in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortKey {
    pub slot: u16,
    pub sub_rank: u8,
    /// Modifier class, 0 for non-modifiers.
    pub hoberg_index: u8,
    pub input_ordinal: usize,
}

/// No slot accepts the constituent under the given tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSlot {
    pub id: ConstituentId,
    pub tag: Option<ThematicTag>,
}

impl fmt::Display for NoSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Some(t) => write!(f, "no slot for `{}` tagged {t}", self.id),
            None => write!(f, "no slot for untagged `{}`", self.id),
        }
    }
}

/// A constituent id paired with its key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Keyed {
    pub id: ConstituentId,
    pub key: SortKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotTable {
    slots: Vec<Slot>,
}

impl SlotTable {
    /// Builds a table, checking ordinal density and tag-slot order.
    pub fn from_slots(slots: Vec<Slot>) -> Result<Self, TableError> {
        if slots.is_empty() {
            return Err(TableError::Empty);
        }
        for (i, slot) in slots.iter().enumerate() {
            let expected = i as u16 + 1;
            if slot.ordinal != expected {
                return Err(TableError::NonDenseOrdinal {
                    expected,
                    found: slot.ordinal,
                });
            }
            let Some(first) = slot.patterns.first() else {
                return Err(TableError::EmptySlot(slot.ordinal));
            };
            if slot.patterns.iter().any(|p| p.required_tag != first.required_tag) {
                return Err(TableError::MixedTags(slot.ordinal));
            }
        }
        let table = SlotTable { slots };
        let theme = table.first_slot_for(ThematicTag::Theme);
        let rheme = table.first_slot_for(ThematicTag::Rheme);
        let focus = table.last_slot_for(ThematicTag::Focus);
        match (theme, rheme, focus) {
            (Some(t), Some(r), Some(f)) if t < r && r < f => Ok(table),
            _ => Err(TableError::TagSlotOrder),
        }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot(&self, ordinal: u16) -> Option<&Slot> {
        self.slots.get(usize::from(ordinal).checked_sub(1)?)
    }

    fn first_slot_for(&self, tag: ThematicTag) -> Option<u16> {
        self.slots
            .iter()
            .find(|s| s.required_tag() == Some(tag))
            .map(|s| s.ordinal)
    }

    fn last_slot_for(&self, tag: ThematicTag) -> Option<u16> {
        self.slots
            .iter()
            .rev()
            .find(|s| s.required_tag() == Some(tag))
            .map(|s| s.ordinal)
    }

    /// Every (slot, pattern) accepting `c` under `tag`, in table order.
    pub fn matches<'a>(
        &'a self,
        c: &'a Constituent,
        tag: Option<ThematicTag>,
    ) -> impl Iterator<Item = (&'a Slot, &'a SlotPattern)> + 'a {
        self.slots.iter().flat_map(move |slot| {
            slot.patterns
                .iter()
                .filter(move |p| p.matches(c, tag))
                .map(move |p| (slot, p))
        })
    }

    fn key_from(c: &Constituent, slot: &Slot, pattern: &SlotPattern, input_ordinal: usize) -> SortKey {
        SortKey {
            slot: slot.ordinal,
            sub_rank: pattern.sub_rank,
            hoberg_index: c.hoberg_index.map_or(0, |i| i.get()),
            input_ordinal,
        }
    }

    /// Whether the lexicon and the clause-position rules allow `c` to bear
    /// `tag` at all.
    pub fn tag_licensed(&self, lex: &Lexicon, c: &Constituent, tag: ThematicTag) -> bool {
        match tag {
            ThematicTag::Theme => lex.vorfeld_capable(c) && !self.typically_rhematic(c),
            ThematicTag::Rheme => lex.rhematic(c),
            ThematicTag::Focus => lex.focusable(c),
        }
    }

    /// Key of the first matching slot for `c` carrying `tag`.
    pub fn key_for(
        &self,
        lex: &Lexicon,
        c: &Constituent,
        tag: Option<ThematicTag>,
        input_ordinal: usize,
    ) -> Result<SortKey, NoSlot> {
        self.keys_for(lex, c, tag, input_ordinal)
            .into_iter()
            .next()
            .ok_or_else(|| NoSlot {
                id: c.id.clone(),
                tag,
            })
    }

    /// Keys of every slot accepting `c` carrying `tag`, lowest first. More
    /// than one key arises only for focus, which has two slot groups.
    pub fn keys_for(
        &self,
        lex: &Lexicon,
        c: &Constituent,
        tag: Option<ThematicTag>,
        input_ordinal: usize,
    ) -> Vec<SortKey> {
        if let Some(t) = tag {
            if !self.tag_licensed(lex, c, t) {
                return Vec::new();
            }
        }
        let mut keys: Vec<SortKey> = self
            .matches(c, tag)
            .map(|(slot, p)| Self::key_from(c, slot, p, input_ordinal))
            .collect();
        keys.dedup_by_key(|k| k.slot);
        keys
    }

    /// Key for `c` under its inline tag.
    pub fn sort_key(&self, lex: &Lexicon, c: &Constituent, input_ordinal: usize) -> Result<SortKey, NoSlot> {
        self.key_for(lex, c, c.tag, input_ordinal)
    }

    /// Untagged default key. Every orderable constituent has one.
    pub fn default_key(&self, c: &Constituent, input_ordinal: usize) -> Option<SortKey> {
        self.matches(c, None)
            .next()
            .map(|(slot, p)| Self::key_from(c, slot, p, input_ordinal))
    }

    /// Elements whose default slot lies in the lower part of the table
    /// (prepositional objects onwards), plus indefinite accusatives and
    /// datives.
    pub fn typically_rhematic(&self, c: &Constituent) -> bool {
        let indefinite_object = matches!(c.category, Category::A | Category::D)
            && !c.features.pronominal
            && c.features.definite == crate::clause::TriState::Minus;
        let late_default = self
            .default_key(c, 0)
            .and_then(|k| self.slot(k.slot))
            .is_some_and(|s| s.row >= 5);
        indefinite_object || late_default
    }

    /// Slash-group cooccurrence violations.
    pub fn check_cooccurrence(&self, spec: &ClauseSpec) -> Vec<Violation> {
        let mut out = crate::clause::cooccurrence_violations(spec);
        if spec
            .constituents
            .iter()
            .filter(|c| c.tag == Some(ThematicTag::Focus))
            .count()
            > 1
        {
            out.push(Violation::TagCardinality(ThematicTag::Focus));
        }
        out
    }
}

/// Canonical precedence between two keyed constituents.
pub fn compare(a: &Keyed, b: &Keyed) -> Ordering {
    a.key.cmp(&b.key)
}

/// The German canonical form, transcribed row by row.
pub fn build_slot_table() -> SlotTable {
    use Category::*;
    use ThematicTag::*;

    let plus = Some(true);
    let minus = Some(false);
    let any = None;

    let rows: Vec<(u8, Vec<Vec<SlotPattern>>)> = vec![
        (
            1,
            vec![
                vec![
                    SlotPattern::new(&[N], FeatureReq::pron()),
                    SlotPattern::new(&[N], FeatureReq::full(plus, plus))
                        .note("printed N_{+d+b}; no feature b is defined, read as +d+a"),
                ],
                vec![
                    SlotPattern::new(&[A], FeatureReq::pron()),
                    SlotPattern::new(&[D, NOM, ADJ], FeatureReq::pron()).rank(1),
                ],
                vec![SlotPattern::new(&Category::ORDERABLE, FeatureReq::any()).tagged(Theme)],
                vec![
                    SlotPattern::new(&[N], FeatureReq::full(plus, minus)),
                    SlotPattern::new(&[N], FeatureReq::full(minus, plus)),
                ],
            ],
        ),
        (
            2,
            vec![
                vec![
                    SlotPattern::new(&[N], FeatureReq::pron()).tagged(Focus),
                    SlotPattern::new(&[N], FeatureReq::full(plus, plus)).tagged(Focus),
                    SlotPattern::new(&[A], FeatureReq::pron()).tagged(Focus).rank(1),
                    SlotPattern::new(&[D], FeatureReq::pron()).tagged(Focus).rank(2),
                ],
                vec![
                    SlotPattern::new(&[A], FeatureReq::full(plus, plus)),
                    SlotPattern::new(&[D], FeatureReq::full(plus, plus)).rank(1),
                ],
                vec![SlotPattern::new(&[G], FeatureReq::pron())],
                vec![SlotPattern::new(&[N], FeatureReq::full(minus, minus))],
                vec![
                    SlotPattern::new(&[A], FeatureReq::full(plus, minus)),
                    SlotPattern::new(&[D], FeatureReq::full(plus, minus)).rank(1),
                ],
            ],
        ),
        (
            3,
            vec![
                vec![SlotPattern::new(&[M], FeatureReq::any()).range(1, 18)],
                vec![SlotPattern::new(&[M], FeatureReq::any()).range(19, 40)],
                vec![SlotPattern::new(&[M], FeatureReq::any()).range(41, 41)],
                vec![SlotPattern::new(&[M], FeatureReq::any()).range(42, 43)],
            ],
        ),
        (
            4,
            vec![
                vec![
                    SlotPattern::new(&[N], FeatureReq::full(plus, minus)).tagged(Rheme),
                    SlotPattern::new(&[N], FeatureReq::full(minus, any)).tagged(Rheme),
                    SlotPattern::new(&[A], FeatureReq::full(plus, any)).tagged(Rheme),
                    SlotPattern::new(&[D], FeatureReq::full(plus, any)).tagged(Rheme).rank(1),
                    SlotPattern::new(&[G], FeatureReq::pron()).tagged(Rheme),
                    SlotPattern::new(&[M], FeatureReq::any()).range(1, 43).tagged(Rheme),
                ],
                vec![
                    SlotPattern::new(&[A], FeatureReq::full(minus, plus)),
                    SlotPattern::new(&[D], FeatureReq::full(minus, plus)).rank(1),
                ],
                vec![SlotPattern::new(&[M], FeatureReq::any())
                    .range(44, 44)
                    .note("printed a_mod(44); read as modifier class 44")],
            ],
        ),
        (
            5,
            vec![
                vec![SlotPattern::new(&[PO], FeatureReq::pron())],
                vec![
                    SlotPattern::new(&[A], FeatureReq::full(minus, minus)),
                    SlotPattern::new(&[D], FeatureReq::full(minus, minus)).rank(1),
                ],
                vec![SlotPattern::new(&[PO], FeatureReq::full(plus, plus))],
                vec![SlotPattern::new(&[PO], FeatureReq::full(plus, minus))],
                vec![SlotPattern::new(&[PO], FeatureReq::full(minus, plus))],
                vec![SlotPattern::new(&[PO], FeatureReq::full(minus, minus))],
                vec![SlotPattern::new(&[G], FeatureReq::non_pron())],
            ],
        ),
        (
            6,
            vec![vec![
                SlotPattern::new(&[A, D, G, PO], FeatureReq::any()).tagged(Focus),
                SlotPattern::new(&[N], FeatureReq::full(plus, minus)).tagged(Focus),
                SlotPattern::new(&[N], FeatureReq::full(minus, any)).tagged(Focus),
                SlotPattern::new(&[M], FeatureReq::any()).range(1, 18).tagged(Focus),
                SlotPattern::new(&[M], FeatureReq::any()).range(19, 40).tagged(Focus),
                SlotPattern::new(&[M], FeatureReq::any())
                    .range(42, 44)
                    .tagged(Focus)
                    .note("modal band taken as classes 42-44"),
            ]],
        ),
        (
            7,
            vec![
                vec![SlotPattern::new(&[SIT, DIR, EXP], FeatureReq::any())],
                vec![SlotPattern::new(&[NOM, ADJ], FeatureReq::non_pron())],
                vec![SlotPattern::new(
                    &[N, A, D, G, PO],
                    FeatureReq {
                        svc: true,
                        ..FeatureReq::any()
                    },
                )],
            ],
        ),
    ];

    let mut slots = Vec::new();
    for (row, row_slots) in rows {
        for patterns in row_slots {
            let ordinal = slots.len() as u16 + 1;
            slots.push(Slot {
                ordinal,
                row,
                patterns,
            });
        }
    }
    SlotTable::from_slots(slots).expect("built-in table is well formed")
}
