//! Generation: turning an unordered clause and a tag assignment into a
//! surface order.
//!
//! In a verb-second clause one element is placed before the finite verb
//! (the Vorfeld): the theme if there is one, otherwise the subject. All other
//! constituents follow the finite verb in canonical order. In a verb-final
//! clause every constituent is ordered canonically between complementizer
//! and verb cluster.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canonical::{SlotTable, SortKey};
use crate::clause::{
    validate_clause, ClauseSpec, ClauseType, Constituent, ConstituentId, TagAssignment,
    ThematicTag, Violation,
};
use crate::lexicon::Lexicon;

/// Largest clause `enumerate_orders` accepts.
pub const MAX_ENUMERATED_CONSTITUENTS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearizeError {
    /// The clause itself violates an invariant (e.g. cooccurrence).
    InvalidClause(Vec<Violation>),
    /// The tag assignment breaks cardinality or names unknown constituents.
    InvalidTags(Vec<Violation>),
    /// Some tag cannot be realized on its constituent.
    InexpressibleTags {
        id: ConstituentId,
        tag: ThematicTag,
        reason: Inexpressible,
    },
    /// No constituent can occupy the Vorfeld.
    NoVorfeld,
    /// Vorfeld selection was requested for a verb-final clause.
    NotVerbSecond,
    TooManyConstituents(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inexpressible {
    /// The lexicon or the element's category vetoes the tag.
    Unlicensed,
    /// No slot of the canonical form accepts the tagged constituent.
    NoSlot,
    /// A theme outside the Vorfeld of a verb-second clause.
    ThemeOutsideVorfeld,
}

impl fmt::Display for LinearizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearizeError::InvalidClause(v) | LinearizeError::InvalidTags(v) => {
                let what = if matches!(self, LinearizeError::InvalidClause(_)) {
                    "invalid clause"
                } else {
                    "invalid tags"
                };
                write!(f, "{what}:")?;
                for (i, v) in v.iter().enumerate() {
                    write!(f, "{} {v}", if i == 0 { "" } else { ";" })?;
                }
                Ok(())
            }
            LinearizeError::InexpressibleTags { id, tag, reason } => {
                let why = match reason {
                    Inexpressible::Unlicensed => "not licensed for this element",
                    Inexpressible::NoSlot => "no slot in the canonical form",
                    Inexpressible::ThemeOutsideVorfeld => "theme must occupy the Vorfeld",
                };
                write!(f, "inexpressible tags: {tag} on `{id}`: {why}")
            }
            LinearizeError::NoVorfeld => f.write_str("no constituent can occupy the Vorfeld"),
            LinearizeError::NotVerbSecond => f.write_str("clause is not verb-second"),
            LinearizeError::TooManyConstituents(n) => write!(
                f,
                "{n} constituents exceed the enumeration limit of {MAX_ENUMERATED_CONSTITUENTS}"
            ),
        }
    }
}

/// A linearized clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceOrder {
    pub clause_type: ClauseType,
    pub vorfeld: Option<ConstituentId>,
    /// Mittelfeld constituents in order, with the key that placed them.
    pub mittelfeld: Vec<(ConstituentId, SortKey)>,
    pub rendered: Vec<String>,
}

impl SurfaceOrder {
    /// Constituent ids in surface order, Vorfeld first.
    pub fn sequence(&self) -> Vec<ConstituentId> {
        self.vorfeld
            .iter()
            .cloned()
            .chain(self.mittelfeld.iter().map(|(id, _)| id.clone()))
            .collect()
    }

    pub fn text(&self) -> String {
        self.rendered.join(" ")
    }
}

/// One distinct order with every assignment that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedOrder {
    pub sequence: Vec<ConstituentId>,
    /// Surface produced by the first assignment.
    pub surface: SurfaceOrder,
    pub assignments: Vec<TagAssignment>,
}

/// The canonical form together with the lexicon it consults.
#[derive(Debug, Clone, Copy)]
pub struct Grammar<'a> {
    pub table: &'a SlotTable,
    pub lexicon: &'a Lexicon,
}

impl<'a> Grammar<'a> {
    pub fn new(table: &'a SlotTable, lexicon: &'a Lexicon) -> Self {
        Grammar { table, lexicon }
    }

    /// Chooses the Vorfeld of a verb-second clause: the theme, else the
    /// subject, else the canonically first element that may stand there.
    pub fn select_vorfeld(
        &self,
        spec: &ClauseSpec,
        tags: &TagAssignment,
    ) -> Result<ConstituentId, LinearizeError> {
        if spec.clause_type != ClauseType::V2 {
            return Err(LinearizeError::NotVerbSecond);
        }
        let eligible = |c: &Constituent| self.lexicon.vorfeld_capable(c);
        if let Some(theme) = tags.holder(ThematicTag::Theme).and_then(|id| spec.get(id)) {
            if self.table.tag_licensed(self.lexicon, theme, ThematicTag::Theme) {
                return Ok(theme.id.clone());
            }
        }
        if let Some(subject) = spec.subject().filter(|c| eligible(c)) {
            return Ok(subject.id.clone());
        }
        spec.constituents
            .iter()
            .enumerate()
            .filter(|(_, c)| eligible(c))
            .filter_map(|(i, c)| Some((self.table.default_key(c, i)?, &c.id)))
            .min()
            .map(|(_, id)| id.clone())
            .ok_or(LinearizeError::NoVorfeld)
    }

    fn check_inputs(&self, spec: &ClauseSpec, tags: &TagAssignment) -> Result<(), LinearizeError> {
        let violations = validate_clause(&spec.untagged());
        if !violations.is_empty() {
            return Err(LinearizeError::InvalidClause(violations));
        }
        let problems = tags.problems(spec);
        if !problems.is_empty() {
            return Err(LinearizeError::InvalidTags(problems));
        }
        for (id, &tag) in &tags.map {
            let c = spec.get(id).expect("checked above");
            if !self.table.tag_licensed(self.lexicon, c, tag) {
                return Err(LinearizeError::InexpressibleTags {
                    id: id.clone(),
                    tag,
                    reason: Inexpressible::Unlicensed,
                });
            }
        }
        Ok(())
    }

    /// Produces the surface order for `spec` under `tags`. Inline tags on
    /// the constituents are ignored; only `tags` counts.
    pub fn linearize(
        &self,
        spec: &ClauseSpec,
        tags: &TagAssignment,
    ) -> Result<SurfaceOrder, LinearizeError> {
        self.check_inputs(spec, tags)?;
        let vorfeld = match spec.clause_type {
            ClauseType::V2 => Some(self.select_vorfeld(spec, tags)?),
            ClauseType::VF => None,
        };
        self.check_theme_position(spec, tags, vorfeld.as_ref())?;
        let mut keys = Vec::new();
        for (i, c) in spec.constituents.iter().enumerate() {
            if Some(&c.id) == vorfeld.as_ref() {
                continue;
            }
            let tag = tags.get(&c.id);
            let key = self
                .table
                .key_for(self.lexicon, c, tag, i)
                .map_err(|e| no_slot(e.id, tag))?;
            keys.push((c.id.clone(), key));
        }
        Ok(self.assemble(spec, tags, vorfeld, keys))
    }

    fn check_theme_position(
        &self,
        spec: &ClauseSpec,
        tags: &TagAssignment,
        vorfeld: Option<&ConstituentId>,
    ) -> Result<(), LinearizeError> {
        if spec.clause_type == ClauseType::V2 {
            if let Some(theme) = tags.holder(ThematicTag::Theme) {
                if Some(theme) != vorfeld {
                    return Err(LinearizeError::InexpressibleTags {
                        id: theme.clone(),
                        tag: ThematicTag::Theme,
                        reason: Inexpressible::ThemeOutsideVorfeld,
                    });
                }
            }
        }
        Ok(())
    }

    /// Every order `tags` admits when reading rather than producing text.
    ///
    /// Besides the generated order this includes a focused element fronted
    /// into an otherwise theme-less Vorfeld, and each alternative slot a
    /// focused element matches. The first entry is always the generated
    /// order when generation succeeds.
    pub fn realizations(
        &self,
        spec: &ClauseSpec,
        tags: &TagAssignment,
    ) -> Result<Vec<SurfaceOrder>, LinearizeError> {
        self.check_inputs(spec, tags)?;
        let mut vorfelds: Vec<Option<ConstituentId>> = Vec::new();
        let mut first_error = None;
        match spec.clause_type {
            ClauseType::VF => vorfelds.push(None),
            ClauseType::V2 => {
                match self.select_vorfeld(spec, tags) {
                    Ok(v) => vorfelds.push(Some(v)),
                    Err(e) => first_error = Some(e),
                }
                if tags.holder(ThematicTag::Theme).is_none() {
                    if let Some(focus) = tags.holder(ThematicTag::Focus).and_then(|id| spec.get(id)) {
                        let fronted = Some(focus.id.clone());
                        if self.lexicon.vorfeld_capable(focus) && !vorfelds.contains(&fronted) {
                            vorfelds.push(fronted);
                        }
                    }
                }
            }
        }

        let mut out: Vec<SurfaceOrder> = Vec::new();
        for vorfeld in vorfelds {
            if let Err(e) = self.check_theme_position(spec, tags, vorfeld.as_ref()) {
                first_error.get_or_insert(e);
                continue;
            }
            // Alternatives per Mittelfeld constituent; only focus has more than one.
            let mut choices: Vec<(ConstituentId, Vec<SortKey>)> = Vec::new();
            let mut failed = None;
            for (i, c) in spec.constituents.iter().enumerate() {
                if Some(&c.id) == vorfeld.as_ref() {
                    continue;
                }
                let tag = tags.get(&c.id);
                let keys = self.table.keys_for(self.lexicon, c, tag, i);
                if keys.is_empty() {
                    failed = Some(no_slot(c.id.clone(), tag));
                    break;
                }
                choices.push((c.id.clone(), keys));
            }
            if let Some(e) = failed {
                first_error.get_or_insert(e);
                continue;
            }
            for picked in cartesian(&choices) {
                let order = self.assemble(spec, tags, vorfeld.clone(), picked);
                if !out.iter().any(|o| o.sequence() == order.sequence()) {
                    out.push(order);
                }
            }
        }
        if out.is_empty() {
            Err(first_error.unwrap_or(LinearizeError::NoVorfeld))
        } else {
            Ok(out)
        }
    }

    fn assemble(
        &self,
        spec: &ClauseSpec,
        tags: &TagAssignment,
        vorfeld: Option<ConstituentId>,
        mut keys: Vec<(ConstituentId, SortKey)>,
    ) -> SurfaceOrder {
        keys.sort_by(|a, b| a.1.cmp(&b.1));
        let focus = tags.holder(ThematicTag::Focus);
        let render = |id: &ConstituentId, out: &mut Vec<String>| {
            let c = spec.get(id).expect("constituent of this clause");
            for tok in &c.surface {
                out.push(if Some(id) == focus {
                    tok.to_uppercase()
                } else {
                    tok.clone()
                });
            }
        };
        let mut rendered = Vec::new();
        match spec.clause_type {
            ClauseType::V2 => {
                if let Some(v) = &vorfeld {
                    render(v, &mut rendered);
                }
                rendered.extend(spec.verb.finite.iter().cloned());
                for (id, _) in &keys {
                    render(id, &mut rendered);
                }
                rendered.extend(spec.verb.nonfinite.iter().cloned());
                if let Some(first) = rendered.first_mut() {
                    *first = capitalize(first);
                }
            }
            ClauseType::VF => {
                rendered.extend(spec.complementizer.iter().cloned());
                for (id, _) in &keys {
                    render(id, &mut rendered);
                }
                rendered.extend(spec.verb.nonfinite.iter().cloned());
                rendered.extend(spec.verb.finite.iter().cloned());
            }
        }
        SurfaceOrder {
            clause_type: spec.clause_type,
            vorfeld,
            mittelfeld: keys,
            rendered,
        }
    }

    /// Every assignment within cardinality limits whose tags are licensed
    /// for their constituents.
    pub fn assignment_space(&self, spec: &ClauseSpec) -> Vec<TagAssignment> {
        let bearers = |tag: ThematicTag| -> Vec<Option<&ConstituentId>> {
            let mut v = vec![None];
            v.extend(
                spec.constituents
                    .iter()
                    .filter(|c| self.table.tag_licensed(self.lexicon, c, tag))
                    .map(|c| Some(&c.id)),
            );
            v
        };
        let mut out = Vec::new();
        for theme in bearers(ThematicTag::Theme) {
            for rheme in bearers(ThematicTag::Rheme) {
                if rheme.is_some() && rheme == theme {
                    continue;
                }
                for focus in bearers(ThematicTag::Focus) {
                    if focus.is_some() && (focus == theme || focus == rheme) {
                        continue;
                    }
                    let mut t = TagAssignment::new();
                    for (id, tag) in [
                        (theme, ThematicTag::Theme),
                        (rheme, ThematicTag::Rheme),
                        (focus, ThematicTag::Focus),
                    ] {
                        if let Some(id) = id {
                            t.map.insert(id.clone(), tag);
                        }
                    }
                    out.push(t);
                }
            }
        }
        out
    }

    /// All distinct orders reachable under some licensed assignment,
    /// keyed and sorted by constituent sequence.
    pub fn enumerate_orders(&self, spec: &ClauseSpec) -> Result<Vec<EnumeratedOrder>, LinearizeError> {
        let violations = validate_clause(&spec.untagged());
        if !violations.is_empty() {
            return Err(LinearizeError::InvalidClause(violations));
        }
        if spec.constituents.len() > MAX_ENUMERATED_CONSTITUENTS {
            return Err(LinearizeError::TooManyConstituents(spec.constituents.len()));
        }
        let mut orders: BTreeMap<Vec<ConstituentId>, EnumeratedOrder> = BTreeMap::new();
        for tags in self.assignment_space(spec) {
            let Ok(realized) = self.realizations(spec, &tags) else {
                continue;
            };
            for surface in realized {
                let sequence = surface.sequence();
                let entry = orders.entry(sequence.clone()).or_insert_with(|| EnumeratedOrder {
                    sequence,
                    surface: surface.clone(),
                    assignments: Vec::new(),
                });
                // show the least marked rendering of the order
                let focus = tags.count(ThematicTag::Focus);
                if entry.assignments.iter().all(|t| t.count(ThematicTag::Focus) > focus) {
                    entry.surface = surface;
                }
                entry.assignments.push(tags.clone());
            }
        }
        Ok(orders.into_values().collect())
    }
}

fn no_slot(id: ConstituentId, tag: Option<ThematicTag>) -> LinearizeError {
    LinearizeError::InexpressibleTags {
        id,
        // untagged constituents always have a slot
        tag: tag.unwrap_or(ThematicTag::Theme),
        reason: Inexpressible::NoSlot,
    }
}

fn cartesian(choices: &[(ConstituentId, Vec<SortKey>)]) -> Vec<Vec<(ConstituentId, SortKey)>> {
    let mut out: Vec<Vec<(ConstituentId, SortKey)>> = vec![Vec::new()];
    for (id, keys) in choices {
        let mut next = Vec::with_capacity(out.len() * keys.len());
        for prefix in &out {
            for key in keys {
                let mut v = prefix.clone();
                v.push((id.clone(), *key));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => s.to_string(),
    }
}
