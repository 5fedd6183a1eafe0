//! German constituent order with a thematically-tagged canonical form.
//!
//! Generation orders an unordered clause by a single precedence rule whose
//! slots are keyed on syntactic category, features and the thematic tags
//! theme, rheme and contrastive focus ([`canonical`], [`linearize`]).
//! Analysis runs the same rule backwards: an observed order is grammatical
//! iff some tag assignment generates it, and the assignments that do tell
//! which element is theme, rheme or focus ([`analyze`]). Competing readings
//! of an ambiguous sentence are ranked by how much focus they need
//! ([`disambiguate`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front-end live in the `wortfolge` crate.
#![no_std]

extern crate alloc;

pub mod analyze;
pub mod canonical;
pub mod clause;
pub mod disambiguate;
pub mod lexicon;
pub mod linearize;

pub use analyze::{AnalysisResult, ObservedClause, Verdict};
pub use canonical::{build_slot_table, compare, Keyed, SlotTable, SortKey};
pub use clause::{
    validate_clause, Category, ClauseSpec, ClauseType, Constituent, ConstituentId, Features,
    HobergIndex, LexKey, TagAssignment, ThematicTag, TriState, VerbComplex, Violation,
};
pub use disambiguate::{CandidateReading, RankedReadings};
pub use lexicon::{LexEntry, Lexicon};
pub use linearize::{Grammar, LinearizeError, SurfaceOrder};
