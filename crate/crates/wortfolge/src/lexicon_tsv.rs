//! Tab-separated lexicon files.
//!
//! One reading per line:
//!
//! ```text
//! lemma  reading_id  hoberg_index  rhematic  focusable  vorfeld_capable  constraints  inferred  gloss
//! ```
//!
//! Booleans are `0`/`1`, constraints a comma-joined list or `-`. Lines
//! starting with `#` and blank lines are skipped.

use std::collections::BTreeSet;
use std::io::BufRead;

use thiserror::Error;
use wortfolge_core::lexicon::{Constraint, LexEntry, Lexicon};
use wortfolge_core::HobergIndex;

pub const COLUMNS: usize = 9;

/// The lexicon shipped with the crate.
pub const SEED_LEXICON: &str = include_str!("../data/lexicon.tsv");

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate reading {lemma}#{reading_id}")]
    Duplicate {
        line: usize,
        lemma: String,
        reading_id: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn flag(field: &str, name: &str, line: usize) -> Result<bool, LoadError> {
    match field {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(LoadError::Malformed {
            line,
            message: format!("{name} must be 0 or 1, found `{other}`"),
        }),
    }
}

fn parse_row(fields: &[&str], line: usize) -> Result<LexEntry, LoadError> {
    if fields.len() != COLUMNS {
        return Err(LoadError::Malformed {
            line,
            message: format!("expected {COLUMNS} columns, found {}", fields.len()),
        });
    }
    let malformed = |message: String| LoadError::Malformed { line, message };
    let lemma = fields[0];
    let reading_id = fields[1];
    if lemma.is_empty() || reading_id.is_empty() {
        return Err(malformed("empty lemma or reading_id".into()));
    }
    let index: u8 = fields[2]
        .parse()
        .map_err(|_| malformed(format!("hoberg_index `{}` is not a number", fields[2])))?;
    let hoberg_index = HobergIndex::new(index)
        .ok_or_else(|| malformed(format!("hoberg_index {index} outside 1..=44")))?;
    let mut constraints = BTreeSet::new();
    if fields[6] != "-" {
        for atom in fields[6].split(',') {
            let c: Constraint = atom
                .trim()
                .parse()
                .map_err(|a| malformed(format!("unknown constraint `{a}`")))?;
            constraints.insert(c);
        }
    }
    Ok(LexEntry {
        lemma: lemma.to_owned(),
        reading_id: reading_id.to_owned(),
        hoberg_index,
        rhematic: flag(fields[3], "rhematic", line)?,
        focusable: flag(fields[4], "focusable", line)?,
        vorfeld_capable: flag(fields[5], "vorfeld_capable", line)?,
        constraints,
        inferred: flag(fields[7], "inferred", line)?,
        gloss: fields[8].to_owned(),
    })
}

/// Reads a lexicon; every data row becomes one reading.
pub fn load_lexicon<R: BufRead>(reader: R) -> Result<Lexicon, LoadError> {
    let mut lex = Lexicon::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let entry = parse_row(&fields, line_no)?;
        lex.insert(entry).map_err(|d| LoadError::Duplicate {
            line: line_no,
            lemma: d.lemma,
            reading_id: d.reading_id,
        })?;
    }
    Ok(lex)
}

pub fn load_lexicon_str(text: &str) -> Result<Lexicon, LoadError> {
    load_lexicon(text.as_bytes())
}

pub fn seed_lexicon() -> Lexicon {
    load_lexicon_str(SEED_LEXICON).expect("shipped lexicon is well formed")
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Writes a lexicon in the format `load_lexicon` reads.
pub fn write_lexicon(lex: &Lexicon) -> String {
    let mut out = String::from(
        "# lemma\treading_id\thoberg_index\trhematic\tfocusable\tvorfeld_capable\tconstraints\tinferred\tgloss\n",
    );
    for e in lex.iter() {
        let constraints = if e.constraints.is_empty() {
            "-".to_owned()
        } else {
            e.constraints
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            e.lemma,
            e.reading_id,
            e.hoberg_index.get(),
            bit(e.rhematic),
            bit(e.focusable),
            bit(e.vorfeld_capable),
            constraints,
            bit(e.inferred),
            e.gloss
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_row() {
        let lex = load_lexicon_str("vielleicht\t12\t12\t0\t0\t1\t-\t0\tprobably\n").unwrap();
        let e = &lex.lookup("vielleicht")[0];
        assert_eq!(e.hoberg_index.get(), 12);
        assert!(!e.rhematic && !e.focusable && e.vorfeld_capable);
        assert_eq!(e.gloss, "probably");
    }

    #[test]
    fn homonym_with_constraint() {
        let lex = load_lexicon_str("eher\t5\t5\t1\t1\t1\tNO_NEGATION\t0\trather\n").unwrap();
        let e = &lex.lookup("eher")[0];
        assert!(e.constraints.contains(&Constraint::NoNegation));
    }

    #[test]
    fn empty_stream() {
        assert!(load_lexicon_str("").unwrap().is_empty());
        assert!(load_lexicon_str("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn malformed_row_names_line() {
        let err = load_lexicon_str("# header\nfoo\t1\t99\t1\t1\t1\t-\t0\tx\n").unwrap_err();
        assert!(matches!(err, LoadError::Malformed { line: 2, .. }), "{err}");
        let err = load_lexicon_str("foo\t1\t3\n").unwrap_err();
        assert_eq!(err.to_string(), "line 1: expected 9 columns, found 3");
        let err = load_lexicon_str("foo\t1\t3\t2\t1\t1\t-\t0\tx\n").unwrap_err();
        assert!(err.to_string().contains("rhematic"));
        let err = load_lexicon_str("foo\t1\t3\t1\t1\t1\tNOPE\t0\tx\n").unwrap_err();
        assert!(err.to_string().contains("NOPE"));
    }

    #[test]
    fn duplicate_key() {
        let text = "eher\t5\t5\t1\t1\t1\t-\t0\tx\neher\t5\t5\t1\t1\t1\t-\t0\ty\n";
        assert!(matches!(
            load_lexicon_str(text),
            Err(LoadError::Duplicate { line: 2, .. })
        ));
    }

    #[test]
    fn seed_lexicon_attested_indexes() {
        let lex = seed_lexicon();
        for (lemma, index) in [
            ("vielleicht", 12),
            ("dennoch", 20),
            ("deshalb", 22),
            ("morgen", 26),
            ("gestern", 26),
            ("damals", 26),
            ("ebenfalls", 35),
            ("oft", 37),
            ("überstürzt", 43),
            ("ohnehin", 9),
            ("nicht", 41),
            ("mit+NP", 42),
        ] {
            let readings = lex.lookup(lemma);
            assert_eq!(readings.len(), 1, "{lemma}");
            assert_eq!(readings[0].hoberg_index.get(), index, "{lemma}");
        }
        let eher: Vec<u8> = lex.lookup("eher").iter().map(|e| e.hoberg_index.get()).collect();
        assert_eq!(eher, [26, 5]);
        assert!(lex.lookup("xyzzy").is_empty());
    }

    #[test]
    fn seed_lexicon_flag_settings() {
        let lex = seed_lexicon();
        let wohl = &lex.lookup("wohl")[0];
        assert!(!wohl.rhematic && wohl.inferred);
        let dennoch = &lex.lookup("dennoch")[0];
        assert!(!dennoch.rhematic && !dennoch.focusable && dennoch.inferred);
        let ebenfalls = &lex.lookup("ebenfalls")[0];
        assert!(!ebenfalls.vorfeld_capable && ebenfalls.inferred);
    }

    fn entry_strategy() -> impl Strategy<Value = LexEntry> {
        (
            "[a-zäöüß]{1,8}",
            "[0-9a-z]{1,3}",
            1u8..=44,
            any::<[bool; 4]>(),
            any::<bool>(),
            "[a-z ]{0,12}",
        )
            .prop_map(|(lemma, reading, index, flags, neg, gloss)| {
                let mut e = LexEntry::new(&lemma, &reading, HobergIndex::new(index).unwrap());
                e.rhematic = flags[0];
                e.focusable = flags[1];
                e.vorfeld_capable = flags[2];
                e.inferred = flags[3];
                e.gloss = gloss;
                if neg {
                    e.constraints.insert(Constraint::NoNegation);
                }
                e
            })
    }

    proptest! {
        #[test]
        fn write_then_load_is_identity(entries in proptest::collection::vec(entry_strategy(), 0..20)) {
            let mut lex = Lexicon::new();
            for e in entries {
                let _ = lex.insert(e);
            }
            let reloaded = load_lexicon_str(&write_lexicon(&lex)).unwrap();
            prop_assert_eq!(reloaded, lex);
        }
    }
}
