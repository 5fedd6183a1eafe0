//! Tab-separated transcription of the canonical-form slot table.
//!
//! One pattern per line:
//!
//! ```text
//! row  slot  sub_rank  categories  features  required_tag  index_range  annotation
//! ```
//!
//! Consecutive lines with the same `slot` form one slot. `categories` is a
//! comma-joined list, `features` uses the compact notation (`+d-a`, `pron`,
//! `-pron`, `svc`), `index_range` is `lo-hi`. Empty cells are written `-`.

use std::io::BufRead;

use thiserror::Error;
use wortfolge_core::canonical::{FeatureReq, Slot, SlotPattern, TableError};
use wortfolge_core::{Category, SlotTable, ThematicTag};

pub const COLUMNS: usize = 8;

/// The shipped transcription; identical to `build_slot_table()`.
pub const SHIPPED_TABLE: &str = include_str!("../data/slot_table.tsv");

#[derive(Debug, Error)]
pub enum TableLoadError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("invalid slot table: {0}")]
    Table(TableError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_tag(s: &str) -> Result<Option<ThematicTag>, String> {
    match s {
        "-" => Ok(None),
        "THEME" => Ok(Some(ThematicTag::Theme)),
        "RHEME" => Ok(Some(ThematicTag::Rheme)),
        "FOCUS" => Ok(Some(ThematicTag::Focus)),
        other => Err(format!("unknown tag `{other}`")),
    }
}

fn parse_range(s: &str) -> Result<Option<(u8, u8)>, String> {
    if s == "-" {
        return Ok(None);
    }
    let (lo, hi) = s
        .split_once('-')
        .ok_or_else(|| format!("index range `{s}` is not lo-hi"))?;
    let lo: u8 = lo.parse().map_err(|_| format!("bad range start `{lo}`"))?;
    let hi: u8 = hi.parse().map_err(|_| format!("bad range end `{hi}`"))?;
    if lo > hi || lo == 0 || hi > 44 {
        return Err(format!("index range `{s}` outside 1..=44"));
    }
    Ok(Some((lo, hi)))
}

pub fn load_slot_table<R: BufRead>(reader: R) -> Result<SlotTable, TableLoadError> {
    let mut slots: Vec<Slot> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |message: String| TableLoadError::Malformed {
            line: line_no,
            message,
        };
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != COLUMNS {
            return Err(malformed(format!(
                "expected {COLUMNS} columns, found {}",
                f.len()
            )));
        }
        let row: u8 = f[0].parse().map_err(|_| malformed(format!("bad row `{}`", f[0])))?;
        let ordinal: u16 = f[1].parse().map_err(|_| malformed(format!("bad slot `{}`", f[1])))?;
        let sub_rank: u8 = f[2]
            .parse()
            .map_err(|_| malformed(format!("bad sub_rank `{}`", f[2])))?;
        let categories = f[3]
            .split(',')
            .map(|c| c.parse::<Category>().map_err(|e| malformed(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let features: FeatureReq = f[4]
            .parse()
            .map_err(|s| malformed(format!("bad features `{s}`")))?;
        let required_tag = parse_tag(f[5]).map_err(malformed)?;
        let hoberg_range = parse_range(f[6]).map_err(malformed)?;
        let annotation = (f[7] != "-").then(|| f[7].to_owned());
        let pattern = SlotPattern {
            categories,
            features,
            required_tag,
            hoberg_range,
            sub_rank,
            annotation,
        };
        match slots.last_mut() {
            Some(last) if last.ordinal == ordinal => {
                if last.row != row {
                    return Err(malformed(format!("slot {ordinal} spans rows")));
                }
                last.patterns.push(pattern);
            }
            _ => slots.push(Slot {
                ordinal,
                row,
                patterns: vec![pattern],
            }),
        }
    }
    SlotTable::from_slots(slots).map_err(TableLoadError::Table)
}

pub fn load_slot_table_str(text: &str) -> Result<SlotTable, TableLoadError> {
    load_slot_table(text.as_bytes())
}

pub fn write_slot_table(table: &SlotTable) -> String {
    let mut out = String::from(
        "# row\tslot\tsub_rank\tcategories\tfeatures\trequired_tag\tindex_range\tannotation\n",
    );
    for slot in table.slots() {
        for p in &slot.patterns {
            let cats: Vec<&str> = p.categories.iter().map(|c| c.as_str()).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                slot.row,
                slot.ordinal,
                p.sub_rank,
                cats.join(","),
                p.features,
                p.required_tag.map_or("-", |t| t.as_str()),
                p.hoberg_range
                    .map_or_else(|| "-".to_owned(), |(lo, hi)| format!("{lo}-{hi}")),
                p.annotation.as_deref().unwrap_or("-"),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use wortfolge_core::build_slot_table;

    #[test]
    fn shipped_file_matches_builtin_table() {
        let table = load_slot_table_str(SHIPPED_TABLE).unwrap();
        assert_eq!(table, build_slot_table());
        assert_eq!(write_slot_table(&table), SHIPPED_TABLE);
    }

    #[test]
    fn shipped_file_records_transcription_notes() {
        assert!(SHIPPED_TABLE.contains("N_{+d+b}"));
        assert!(SHIPPED_TABLE.contains("a_mod(44)"));
    }

    #[test]
    fn malformed_lines() {
        let err = load_slot_table_str("1\t1\t0\tN\tpron\t-\t-\n").unwrap_err();
        assert!(matches!(err, TableLoadError::Malformed { line: 1, .. }));
        let err = load_slot_table_str("1\t1\t0\tQ\tpron\t-\t-\t-\n").unwrap_err();
        assert!(err.to_string().contains("Q"));
        let err = load_slot_table_str("1\t1\t0\tM\t-\t-\t30-20\t-\n").unwrap_err();
        assert!(err.to_string().contains("30-20"));
    }

    #[test]
    fn structural_errors_are_reported() {
        let err = load_slot_table_str("1\t1\t0\tN\tpron\t-\t-\t-\n").unwrap_err();
        assert!(matches!(err, TableLoadError::Table(TableError::TagSlotOrder)));
        assert!(matches!(
            load_slot_table_str(""),
            Err(TableLoadError::Table(TableError::Empty))
        ));
    }
}
