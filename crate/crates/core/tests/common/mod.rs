#![allow(dead_code)]

use proptest::prelude::*;
use wortfolge_core::analyze::ObservedClause;
use wortfolge_core::{
    validate_clause, Category, ClauseSpec, ClauseType, Constituent, Features, HobergIndex,
    TriState, VerbComplex,
};

pub fn tri() -> impl Strategy<Value = TriState> {
    prop::sample::select(TriState::ALL.to_vec())
}

pub fn features() -> impl Strategy<Value = Features> {
    (any::<bool>(), tri(), tri(), prop::bool::weighted(0.15)).prop_map(|(pron, d, a, svc)| {
        if pron {
            Features::pronoun()
        } else {
            Features {
                svc,
                ..Features::new(d, a)
            }
        }
    })
}

/// A well-formed constituent with id `c{i}`; the category is drawn from
/// the orderable set.
pub fn constituent(i: usize) -> impl Strategy<Value = Constituent> {
    (
        prop::sample::select(Category::ORDERABLE.to_vec()),
        features(),
        1u8..=44,
    )
        .prop_map(move |(category, features, index)| {
            let id = format!("c{i}");
            if category == Category::M {
                Constituent::modifier(&id, HobergIndex::new(index).unwrap(), &[&id]).unwrap()
            } else {
                let features = Features {
                    svc: features.svc && category.can_be_svc(),
                    ..features
                };
                Constituent::new(&id, category, features, &[&id]).unwrap()
            }
        })
}

/// Valid clause specs with between `min` and `max` constituents.
pub fn spec(min: usize, max: usize) -> impl Strategy<Value = ClauseSpec> {
    (min..=max)
        .prop_flat_map(|n| {
            let cs: Vec<_> = (0..n).map(constituent).collect();
            (any::<bool>(), cs)
        })
        .prop_map(|(v2, constituents)| {
            let verb = VerbComplex::new(&["hat"], &["gesehen"]);
            if v2 {
                ClauseSpec::v2(verb, constituents)
            } else {
                ClauseSpec::vf("dass", verb, constituents)
            }
        })
        .prop_filter("clause must validate", |s| validate_clause(s).is_empty())
}

/// `spec` observed in the order given by `perm`.
pub fn observe(spec: &ClauseSpec, perm: &[usize]) -> ObservedClause {
    ObservedClause {
        clause_type: spec.clause_type,
        complementizer: spec.complementizer.clone(),
        verb: spec.verb.clone(),
        constituents: perm.iter().map(|&i| spec.constituents[i].clone()).collect(),
        stress: Vec::new(),
    }
}

pub fn is_v2(spec: &ClauseSpec) -> bool {
    spec.clause_type == ClauseType::V2
}
