//! Analysis: recovering focus, theme and rheme from an observed order.
//!
//! Grammaticality is decided by search: an order is grammatical iff some
//! licensed tag assignment realizes it. Focus is recognized first, then
//! theme (clause-initial element) and rheme (clause-final element).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::clause::{
    validate_clause, Category, ClauseSpec, ClauseType, Constituent, ConstituentId, TagAssignment,
    ThematicTag, VerbComplex, Violation,
};
use crate::linearize::{Grammar, SurfaceOrder};

/// A clause as it was observed: constituents in surface order, untagged.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ObservedClause {
    pub clause_type: ClauseType,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub complementizer: Option<alloc::string::String>,
    pub verb: VerbComplex,
    /// Surface order; in a verb-second clause the first element is the Vorfeld.
    pub constituents: Vec<Constituent>,
    /// Constituents marked as carrying contrastive stress.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub stress: Vec<ConstituentId>,
}

impl ObservedClause {
    /// The clause with its order forgotten.
    pub fn to_spec(&self) -> ClauseSpec {
        ClauseSpec {
            clause_type: self.clause_type,
            verb: self.verb.clone(),
            constituents: self.constituents.clone(),
            complementizer: self.complementizer.clone(),
        }
    }

    /// Reads back a generated order as an observation, dropping tags.
    pub fn from_surface(spec: &ClauseSpec, surface: &SurfaceOrder) -> Self {
        let constituents = surface
            .sequence()
            .iter()
            .filter_map(|id| spec.get(id))
            .map(|c| c.clone().with_tag(None))
            .collect();
        ObservedClause {
            clause_type: spec.clause_type,
            complementizer: spec.complementizer.clone(),
            verb: spec.verb.clone(),
            constituents,
            stress: Vec::new(),
        }
    }

    /// Surface tokens in observed order; stressed constituents are
    /// uppercased.
    pub fn render(&self) -> Vec<alloc::string::String> {
        let mut out = Vec::new();
        let push = |c: &Constituent, out: &mut Vec<alloc::string::String>| {
            let stressed = self.stress.contains(&c.id);
            for tok in &c.surface {
                out.push(if stressed { tok.to_uppercase() } else { tok.clone() });
            }
        };
        match self.clause_type {
            ClauseType::V2 => {
                let mut rest = self.constituents.iter();
                if let Some(first) = rest.next() {
                    push(first, &mut out);
                }
                out.extend(self.verb.finite.iter().cloned());
                for c in rest {
                    push(c, &mut out);
                }
                out.extend(self.verb.nonfinite.iter().cloned());
                if let Some(first) = out.first_mut() {
                    *first = crate::linearize::capitalize(first);
                }
            }
            ClauseType::VF => {
                out.extend(self.complementizer.iter().cloned());
                for c in &self.constituents {
                    push(c, &mut out);
                }
                out.extend(self.verb.nonfinite.iter().cloned());
                out.extend(self.verb.finite.iter().cloned());
            }
        }
        out
    }

    pub fn sequence(&self) -> Vec<ConstituentId> {
        self.constituents.iter().map(|c| c.id.clone()).collect()
    }

    pub fn vorfeld(&self) -> Option<&Constituent> {
        match self.clause_type {
            ClauseType::V2 => self.constituents.first(),
            ClauseType::VF => None,
        }
    }

    /// Constituents after the finite verb (verb-second) or complementizer.
    pub fn mittelfeld(&self) -> &[Constituent] {
        match self.clause_type {
            ClauseType::V2 => self.constituents.get(1..).unwrap_or(&[]),
            ClauseType::VF => &self.constituents,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = validate_clause(&self.to_spec().untagged());
        for c in &self.constituents {
            if let Some(tag) = c.tag {
                out.push(Violation::Constituent(
                    c.id.clone(),
                    alloc::format!("observed constituent carries tag {tag}"),
                ));
            }
        }
        for id in &self.stress {
            if !self.constituents.iter().any(|c| &c.id == id) {
                out.push(Violation::UnknownTaggedConstituent(id.clone()));
            }
        }
        if self.clause_type == ClauseType::V2 && self.constituents.is_empty() {
            out.push(Violation::Constituent(
                "".into(),
                "verb-second clause without a Vorfeld".into(),
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Verdict {
    GrammaticalUnmarked,
    /// Acceptable only with contrastive stress.
    GrammaticalMarked,
    Ungrammatical,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::GrammaticalUnmarked => "GRAMMATICAL_UNMARKED",
            Verdict::GrammaticalMarked => "GRAMMATICAL_MARKED",
            Verdict::Ungrammatical => "UNGRAMMATICAL",
        }
    }

    pub fn is_grammatical(self) -> bool {
        self != Verdict::Ungrammatical
    }
}

/// Constructions that are only possible under contrastive focus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum FocusConstruction {
    /// A typically rhematic element in the Vorfeld.
    RhematicVorfeld,
    /// A personal pronoun to the right of a modifier.
    RightMovedPronoun,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FocusFinding {
    pub focus: Option<ConstituentId>,
    /// Set when every explanation has a focus but they disagree on which.
    pub ambiguous: Vec<ConstituentId>,
    /// Constructions detected directly on the surface.
    pub constructions: Vec<(ConstituentId, FocusConstruction)>,
}

/// Where heavy stress is expected when a clause ends in an inherently
/// non-rhematic modifier.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StressCandidate {
    FiniteVerb(Vec<alloc::string::String>),
    Vorfeld(ConstituentId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct StressWarning {
    /// The non-rhematic clause-final element.
    pub trigger: ConstituentId,
    pub candidates: Vec<StressCandidate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct AnalysisResult {
    pub verdict: Verdict,
    pub theme: Option<ConstituentId>,
    pub rheme: Option<ConstituentId>,
    pub focus: Option<ConstituentId>,
    pub focus_ambiguous: Vec<ConstituentId>,
    pub constructions: Vec<(ConstituentId, FocusConstruction)>,
    pub explanations: Vec<TagAssignment>,
    /// Fewest focus tags over all explanations; `None` when there are none.
    pub markedness_cost: Option<u32>,
    pub stress_warning: Option<StressWarning>,
}

impl<'a> Grammar<'a> {
    /// All licensed assignments whose realizations include the observed
    /// order. Stress marks, when given, must coincide with the focus.
    pub fn explain_order(&self, obs: &ObservedClause) -> Vec<TagAssignment> {
        if !obs.validate().is_empty() {
            return Vec::new();
        }
        let spec = obs.to_spec();
        let observed = obs.sequence();
        let stressed: BTreeSet<&ConstituentId> = obs.stress.iter().collect();
        self.assignment_space(&spec)
            .into_iter()
            .filter(|t| {
                stressed.is_empty()
                    || t.map
                        .iter()
                        .filter(|(_, tag)| **tag == ThematicTag::Focus)
                        .map(|(id, _)| id)
                        .collect::<BTreeSet<_>>()
                        == stressed
            })
            .filter(|t| {
                self.realizations(&spec, t)
                    .is_ok_and(|orders| orders.iter().any(|o| o.sequence() == observed))
            })
            .collect()
    }

    /// Surface detectors for focus-only constructions. Each hit must be
    /// confirmed by the explanation search.
    pub fn focus_constructions(&self, obs: &ObservedClause) -> Vec<(ConstituentId, FocusConstruction)> {
        let mut out = Vec::new();
        if let Some(first) = obs.vorfeld() {
            let spec = obs.to_spec();
            let default = self.select_vorfeld(&spec, &TagAssignment::new()).ok();
            if self.table.typically_rhematic(first) && default.as_ref() != Some(&first.id) {
                out.push((first.id.clone(), FocusConstruction::RhematicVorfeld));
            }
        }
        let mf = obs.mittelfeld();
        for (i, c) in mf.iter().enumerate() {
            let personal = c.features.pronominal
                && matches!(
                    c.category,
                    Category::N | Category::A | Category::D | Category::NOM | Category::ADJ
                );
            if personal && mf[..i].iter().any(|m| m.category == Category::M) {
                out.push((c.id.clone(), FocusConstruction::RightMovedPronoun));
            }
        }
        out
    }

    /// Focus is obligatory when every explanation carries it.
    pub fn recognize_focus(&self, obs: &ObservedClause, explanations: &[TagAssignment]) -> FocusFinding {
        let mut finding = FocusFinding {
            focus: None,
            ambiguous: Vec::new(),
            constructions: self.focus_constructions(obs),
        };
        if explanations.is_empty() {
            return finding;
        }
        let holders: Option<BTreeSet<&ConstituentId>> = explanations
            .iter()
            .map(|t| t.holder(ThematicTag::Focus))
            .collect();
        if let Some(holders) = holders {
            let mut holders: Vec<ConstituentId> = holders.into_iter().cloned().collect();
            if holders.len() == 1 {
                finding.focus = holders.pop();
            } else {
                finding.ambiguous = holders;
            }
        }
        finding
    }

    /// Explanation count and focus-free-ness without the rest of analysis.
    pub fn markedness_cost(explanations: &[TagAssignment]) -> Option<u32> {
        explanations
            .iter()
            .map(|t| t.count(ThematicTag::Focus) as u32)
            .min()
    }

    /// Stress expectation for clauses ending in a lexically non-rhematic
    /// element: verb-second only, naming finite verb and Vorfeld.
    pub fn stress_warning(&self, obs: &ObservedClause) -> Option<StressWarning> {
        if obs.clause_type != ClauseType::V2 || obs.constituents.len() < 2 {
            return None;
        }
        let last = obs.constituents.last()?;
        if self.lexicon.entry_for(last).is_some_and(|e| !e.rhematic) {
            let vorfeld = obs.vorfeld()?;
            Some(StressWarning {
                trigger: last.id.clone(),
                candidates: alloc::vec![
                    StressCandidate::FiniteVerb(obs.verb.finite.clone()),
                    StressCandidate::Vorfeld(vorfeld.id.clone()),
                ],
            })
        } else {
            None
        }
    }

    pub fn analyze(&self, obs: &ObservedClause) -> AnalysisResult {
        let explanations = self.explain_order(obs);
        let finding = self.recognize_focus(obs, &explanations);
        let mut excluded: Vec<ConstituentId> = finding.ambiguous.clone();
        excluded.extend(finding.focus.iter().cloned());
        let theme = recognize_theme(obs, &excluded);
        let rheme = self
            .recognize_rheme(obs)
            .filter(|r| !excluded.contains(r) && Some(r) != theme.as_ref());
        let stress_warning = if explanations.is_empty() {
            None
        } else {
            self.stress_warning(obs)
        };
        let all_focused = !explanations.is_empty()
            && explanations.iter().all(|t| t.count(ThematicTag::Focus) > 0);
        let verdict = if explanations.is_empty() {
            Verdict::Ungrammatical
        } else if all_focused || stress_warning.is_some() {
            Verdict::GrammaticalMarked
        } else {
            Verdict::GrammaticalUnmarked
        };
        AnalysisResult {
            verdict,
            theme,
            rheme,
            focus: finding.focus,
            focus_ambiguous: finding.ambiguous,
            constructions: finding.constructions,
            markedness_cost: Self::markedness_cost(&explanations),
            explanations,
            stress_warning,
        }
    }

    /// The clause-final constituent unless it is inherently non-rhematic.
    /// Verbs are never rhemes.
    pub fn recognize_rheme(&self, obs: &ObservedClause) -> Option<ConstituentId> {
        let last = obs.constituents.last()?;
        if last.is_personal_pronoun() || !self.lexicon.rhematic(last) {
            None
        } else {
            Some(last.id.clone())
        }
    }
}

/// The clause-initial constituent, unless it was recognized as focus.
pub fn recognize_theme(obs: &ObservedClause, focus: &[ConstituentId]) -> Option<ConstituentId> {
    obs.constituents
        .first()
        .map(|c| c.id.clone())
        .filter(|id| !focus.contains(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::build_slot_table;
    use crate::clause::{Features, HobergIndex, TriState};
    use crate::lexicon::Lexicon;
    use alloc::vec;

    fn m(id: &str, i: u8) -> Constituent {
        Constituent::modifier(id, HobergIndex::new(i).unwrap(), &[id]).unwrap()
    }

    fn np(id: &str, cat: Category, d: TriState, a: TriState) -> Constituent {
        Constituent::new(id, cat, Features::new(d, a), &[id]).unwrap()
    }

    fn observed(clause_type: ClauseType, constituents: Vec<Constituent>) -> ObservedClause {
        ObservedClause {
            clause_type,
            complementizer: (clause_type == ClauseType::VF).then(|| "dass".into()),
            verb: VerbComplex::new(&["hat"], &["gesehen"]),
            constituents,
            stress: Vec::new(),
        }
    }

    #[test]
    fn default_order_is_unmarked() {
        let table = build_slot_table();
        let lex = Lexicon::new();
        let g = Grammar::new(&table, &lex);
        let obs = observed(
            ClauseType::V2,
            vec![
                np("der_mann", Category::N, TriState::Plus, TriState::Plus),
                np("den_hund", Category::A, TriState::Plus, TriState::Plus),
                m("gestern", 26),
            ],
        );
        let r = g.analyze(&obs);
        assert_eq!(r.verdict, Verdict::GrammaticalUnmarked);
        assert!(r.explanations.contains(&TagAssignment::new()));
        assert_eq!(r.markedness_cost, Some(0));
        assert_eq!(r.theme, Some("der_mann".into()));
        assert_eq!(r.rheme, Some("gestern".into()));
        assert_eq!(r.focus, None);
    }

    #[test]
    fn render_marks_stress() {
        let mut obs = observed(
            ClauseType::V2,
            vec![m("gestern", 26), np("der_mann", Category::N, TriState::Plus, TriState::Plus)],
        );
        obs.stress.push("der_mann".into());
        assert_eq!(obs.render().join(" "), "Gestern hat DER_MANN gesehen");
        let vf = observed(ClauseType::VF, vec![m("gestern", 26)]);
        assert_eq!(vf.render().join(" "), "dass gestern gesehen hat");
    }

    #[test]
    fn pronoun_final_has_no_rheme() {
        let table = build_slot_table();
        let lex = Lexicon::new();
        let g = Grammar::new(&table, &lex);
        let obs = observed(
            ClauseType::V2,
            vec![
                m("deshalb", 22),
                np("der_mann", Category::N, TriState::Plus, TriState::Plus),
                Constituent::new("ihn", Category::A, Features::pronoun(), &["ihn"]).unwrap(),
            ],
        );
        assert_eq!(g.recognize_rheme(&obs), None);
    }

    #[test]
    fn verb_final_theme_is_first_mittelfeld_element() {
        let obs = observed(
            ClauseType::VF,
            vec![np("tina", Category::N, TriState::Plus, TriState::Plus), m("oft", 37)],
        );
        assert_eq!(recognize_theme(&obs, &[]), Some("tina".into()));
        assert_eq!(recognize_theme(&obs, &["tina".into()]), None);
    }

    #[test]
    fn stress_marks_constrain_focus() {
        let table = build_slot_table();
        let lex = Lexicon::new();
        let g = Grammar::new(&table, &lex);
        let mut obs = observed(
            ClauseType::V2,
            vec![
                np("der_mann", Category::N, TriState::Plus, TriState::Plus),
                m("gestern", 26),
                np("den_hund", Category::A, TriState::Plus, TriState::Plus),
            ],
        );
        let free = g.explain_order(&obs);
        assert!(free.iter().any(|t| t.count(ThematicTag::Focus) == 0));
        obs.stress = vec!["den_hund".into()];
        let stressed = g.explain_order(&obs);
        assert!(!stressed.is_empty());
        assert!(stressed
            .iter()
            .all(|t| t.holder(ThematicTag::Focus) == Some(&"den_hund".into())));
    }

    #[test]
    fn malformed_observation_has_no_explanation() {
        let table = build_slot_table();
        let lex = Lexicon::new();
        let g = Grammar::new(&table, &lex);
        let mut obs = observed(
            ClauseType::V2,
            vec![np("der_mann", Category::N, TriState::Plus, TriState::Plus)],
        );
        obs.constituents[0].tag = Some(ThematicTag::Theme);
        assert!(!obs.validate().is_empty());
        assert!(g.explain_order(&obs).is_empty());
    }
}
