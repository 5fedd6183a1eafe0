pub mod lexicon_tsv;
pub mod slot_table_tsv;
pub mod document;
pub mod report;
pub mod corpus;
