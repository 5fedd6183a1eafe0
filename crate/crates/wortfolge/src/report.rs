//! Machine-readable reports and their interlinear rendering.

use std::collections::BTreeMap;

use serde::Serialize;
use wortfolge_core::analyze::ObservedClause;
use wortfolge_core::{
    AnalysisResult, CandidateReading, ClauseSpec, ClauseType, Constituent, ConstituentId,
    Grammar, LinearizeError, TagAssignment, ThematicTag, TriState, Verdict,
};

use crate::document::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub id: ConstituentId,
    pub row: u8,
    pub slot: u16,
    pub sub_rank: u8,
    pub hoberg_index: u8,
    pub input_ordinal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variant {
    pub rendered: String,
    pub sequence: Vec<ConstituentId>,
    pub assignments: Vec<TagAssignment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerateReport {
    pub mode: Mode,
    pub clause_type: ClauseType,
    pub rendered: String,
    pub vorfeld: Option<ConstituentId>,
    pub mittelfeld: Vec<Placement>,
    pub tags: TagAssignment,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variants: Option<Vec<Variant>>,
}

pub fn run_generate(
    g: &Grammar,
    spec: &ClauseSpec,
    tags: &TagAssignment,
    all_variants: bool,
) -> Result<GenerateReport, LinearizeError> {
    let surface = g.linearize(spec, tags)?;
    let mittelfeld = surface
        .mittelfeld
        .iter()
        .map(|(id, key)| Placement {
            id: id.clone(),
            row: g.table.slot(key.slot).map_or(0, |s| s.row),
            slot: key.slot,
            sub_rank: key.sub_rank,
            hoberg_index: key.hoberg_index,
            input_ordinal: key.input_ordinal,
        })
        .collect();
    let variants = if all_variants {
        let orders = g.enumerate_orders(&spec.untagged())?;
        Some(
            orders
                .into_iter()
                .map(|o| Variant {
                    rendered: o.surface.text(),
                    sequence: o.sequence,
                    assignments: o.assignments,
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(GenerateReport {
        mode: Mode::Generate,
        clause_type: spec.clause_type,
        rendered: surface.text(),
        vorfeld: surface.vorfeld,
        mittelfeld,
        tags: tags.clone(),
        variants,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub mode: Mode,
    pub rendered: String,
    #[serde(flatten)]
    pub analysis: AnalysisResult,
}

pub fn run_analyze(g: &Grammar, obs: &ObservedClause) -> AnalyzeReport {
    AnalyzeReport {
        mode: Mode::Analyze,
        rendered: obs.render().join(" "),
        analysis: g.analyze(obs),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadingSummary {
    pub label: String,
    pub input_index: usize,
    pub rejected: bool,
    pub rendered: String,
    pub verdict: Verdict,
    pub markedness_cost: Option<u32>,
    pub theme: Option<ConstituentId>,
    pub rheme: Option<ConstituentId>,
    pub focus: Option<ConstituentId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisambiguateReport {
    pub mode: Mode,
    pub preferred: Option<String>,
    pub readings: Vec<ReadingSummary>,
}

pub fn run_disambiguate(
    g: &Grammar,
    candidates: &[CandidateReading],
) -> Result<DisambiguateReport, wortfolge_core::disambiguate::UnresolvedLexKey> {
    let ranked = g.rank_readings(candidates)?;
    let readings = ranked
        .readings
        .iter()
        .map(|r| ReadingSummary {
            label: r.label.clone(),
            input_index: r.input_index,
            rejected: r.rejected(),
            rendered: candidates[r.input_index].clause.render().join(" "),
            verdict: r.verdict,
            markedness_cost: r.markedness_cost,
            theme: r.analysis.theme.clone(),
            rheme: r.analysis.rheme.clone(),
            focus: r.analysis.focus.clone(),
        })
        .collect();
    Ok(DisambiguateReport {
        mode: Mode::Disambiguate,
        preferred: ranked.preferred().map(|r| r.label.clone()),
        readings,
    })
}

/// Compact JSON with a trailing newline; field order is fixed by the
/// report types.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string(report).expect("reports serialize");
    s.push('\n');
    s
}

/// Category, class and features, e.g. `N.pron`, `A+d-a`, `M26`.
pub fn category_label(c: &Constituent) -> String {
    let mut s = c.category.as_str().to_owned();
    if let Some(i) = c.hoberg_index {
        s.push_str(&i.get().to_string());
    }
    if c.features.pronominal {
        s.push_str(".pron");
    } else {
        for (v, name) in [(c.features.definite, 'd'), (c.features.animate, 'a')] {
            match v {
                TriState::Plus => s.push('+'),
                TriState::Minus => s.push('-'),
                TriState::NotApplicable => continue,
            }
            s.push(name);
        }
    }
    if c.features.svc {
        s.push_str(".svc");
    }
    s
}

/// One column per unit, left-aligned, rows joined by newlines.
fn interlinear(columns: &[Vec<String>]) -> String {
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = columns
        .iter()
        .map(|col| col.iter().map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in 0..rows {
        let mut line = String::new();
        for (col, w) in columns.iter().zip(&widths) {
            let cell = col.get(r).map_or("", String::as_str);
            line.push_str(cell);
            line.extend(std::iter::repeat(' ').take(w - cell.chars().count() + 2));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

struct Unit<'c> {
    tokens: Vec<String>,
    constituent: Option<&'c Constituent>,
}

fn units<'c>(
    clause_type: ClauseType,
    complementizer: Option<&String>,
    verb: &wortfolge_core::VerbComplex,
    ordered: &[&'c Constituent],
    rendered: &[String],
) -> Vec<Unit<'c>> {
    let mut plan: Vec<(usize, Option<&'c Constituent>)> = Vec::new();
    let constituent = |c: &&'c Constituent| (c.surface.len(), Some(*c));
    match clause_type {
        ClauseType::V2 => {
            plan.extend(ordered.first().map(constituent));
            plan.push((verb.finite.len(), None));
            plan.extend(ordered.iter().skip(1).map(constituent));
            plan.push((verb.nonfinite.len(), None));
        }
        ClauseType::VF => {
            plan.push((usize::from(complementizer.is_some()), None));
            plan.extend(ordered.iter().map(constituent));
            plan.push((verb.nonfinite.len(), None));
            plan.push((verb.finite.len(), None));
        }
    }
    let mut tokens = rendered.iter();
    plan.into_iter()
        .filter(|(n, _)| *n > 0)
        .map(|(n, c)| Unit {
            tokens: tokens.by_ref().take(n).cloned().collect(),
            constituent: c,
        })
        .collect()
}

fn tag_cell(tags: &TagAssignment, id: &ConstituentId) -> String {
    tags.get(id).map_or_else(String::new, |t: ThematicTag| t.as_str().to_owned())
}

fn gloss_rows(g: &Grammar, units: &[Unit], extra: impl Fn(&Unit) -> Vec<String>) -> String {
    let with_gloss = units.iter().any(|u| {
        u.constituent
            .and_then(|c| g.lexicon.entry_for(c))
            .is_some_and(|e| !e.gloss.is_empty())
    });
    let columns: Vec<Vec<String>> = units
        .iter()
        .map(|u| {
            let mut col = vec![u.tokens.join(" ")];
            match u.constituent {
                Some(c) => {
                    col.push(category_label(c));
                    if with_gloss {
                        col.push(
                            g.lexicon
                                .entry_for(c)
                                .map(|e| e.gloss.clone())
                                .unwrap_or_default(),
                        );
                    }
                }
                None => {
                    col.push("V".to_owned());
                    if with_gloss {
                        col.push(String::new());
                    }
                }
            }
            col.extend(extra(u));
            col
        })
        .collect();
    interlinear(&columns)
}

fn opt(id: &Option<ConstituentId>) -> String {
    id.as_ref().map_or_else(|| "-".to_owned(), |i| i.to_string())
}

pub fn pretty_generate(g: &Grammar, spec: &ClauseSpec, report: &GenerateReport) -> String {
    let ordered: Vec<&Constituent> = report
        .vorfeld
        .iter()
        .chain(report.mittelfeld.iter().map(|p| &p.id))
        .filter_map(|id| spec.get(id))
        .collect();
    let rendered: Vec<String> = report.rendered.split(' ').map(str::to_owned).collect();
    let units = units(
        spec.clause_type,
        spec.complementizer.as_ref(),
        &spec.verb,
        &ordered,
        &rendered,
    );
    let slots: BTreeMap<&ConstituentId, u16> =
        report.mittelfeld.iter().map(|p| (&p.id, p.slot)).collect();
    let mut out = gloss_rows(g, &units, |u| {
        let Some(c) = u.constituent else {
            return vec![String::new(), String::new()];
        };
        let pos = match slots.get(&c.id) {
            Some(s) => format!("s{s}"),
            None => "VF".to_owned(),
        };
        vec![pos, tag_cell(&report.tags, &c.id)]
    });
    if let Some(variants) = &report.variants {
        out.push_str(&format!("\n{} orders:\n", variants.len()));
        for v in variants {
            out.push_str(&format!("  {}\n", v.rendered));
        }
    }
    out
}

pub fn pretty_analyze(g: &Grammar, obs: &ObservedClause, report: &AnalyzeReport) -> String {
    let a = &report.analysis;
    let ordered: Vec<&Constituent> = obs.constituents.iter().collect();
    let rendered = obs.render();
    let units = units(
        obs.clause_type,
        obs.complementizer.as_ref(),
        &obs.verb,
        &ordered,
        &rendered,
    );
    let best = a
        .explanations
        .iter()
        .min_by_key(|t| t.count(ThematicTag::Focus))
        .cloned()
        .unwrap_or_default();
    let mut out = gloss_rows(g, &units, |u| {
        vec![u.constituent.map(|c| tag_cell(&best, &c.id)).unwrap_or_default()]
    });
    out.push('\n');
    out.push_str(&format!("verdict  {}\n", a.verdict.as_str()));
    out.push_str(&format!("theme    {}\n", opt(&a.theme)));
    out.push_str(&format!("rheme    {}\n", opt(&a.rheme)));
    let focus = if a.focus_ambiguous.is_empty() {
        opt(&a.focus)
    } else {
        let ids: Vec<String> = a.focus_ambiguous.iter().map(|i| i.to_string()).collect();
        format!("one of {}", ids.join(", "))
    };
    out.push_str(&format!("focus    {focus}\n"));
    let cost = a
        .markedness_cost
        .map_or_else(|| "-".to_owned(), |c| c.to_string());
    out.push_str(&format!("cost     {cost}\n"));
    if let Some(w) = &a.stress_warning {
        let cands: Vec<String> = w
            .candidates
            .iter()
            .map(|c| match c {
                wortfolge_core::analyze::StressCandidate::FiniteVerb(v) => v.join(" "),
                wortfolge_core::analyze::StressCandidate::Vorfeld(id) => id.to_string(),
            })
            .collect();
        out.push_str(&format!(
            "stress   `{}` is not rhematic; stress falls on {}\n",
            w.trigger,
            cands.join(" or ")
        ));
    }
    out
}

pub fn pretty_disambiguate(report: &DisambiguateReport) -> String {
    let mut out = String::new();
    for (rank, r) in report.readings.iter().enumerate() {
        let status = if r.rejected {
            "rejected".to_owned()
        } else {
            let cost = r
                .markedness_cost
                .map_or_else(|| "-".to_owned(), |c| c.to_string());
            format!("{} cost {cost}", r.verdict.as_str())
        };
        out.push_str(&format!("{}. {}  {}  [{status}]\n", rank + 1, r.label, r.rendered));
    }
    out.push_str(&format!(
        "preferred: {}\n",
        report.preferred.as_deref().unwrap_or("-")
    ));
    out
}
