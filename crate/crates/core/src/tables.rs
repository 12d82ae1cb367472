//! Embedded reference coefficient tables.
//!
//! The five tables give, for every catalog form, the expected coordinates of
//! its theta product in the corresponding basis. They are stored as plain
//! structured text (`data/coefficient_tables.txt`, rationals as `p/q`
//! strings) so each row can be reviewed line by line, and parsed once into
//! exact rationals here. The solver re-derives every row independently;
//! [`crate::solver::diff_tables`] reports the comparison.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::bases::SpaceId;
use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};

const TABLES_TEXT: &str = include_str!("../data/coefficient_tables.txt");

/// Identifier of an embedded table (3-7).
pub type TableId = u8;

#[derive(Debug, Clone)]
pub struct TableRow {
    pub table: TableId,
    pub label: String,
    pub entries: Vec<Q>,
}

#[derive(Debug)]
pub struct ReferenceTables {
    rows: Vec<TableRow>,
    by_key: HashMap<(TableId, String), usize>,
}

impl ReferenceTables {
    fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut by_key = HashMap::new();
        let mut current: Option<TableId> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("table ") {
                let id: TableId = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad table id", lineno + 1)))?;
                current = Some(id);
                continue;
            }
            let table = current.ok_or_else(|| {
                Error::Parse(format!("line {}: row before any table", lineno + 1))
            })?;
            let (label, values) = line
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("line {}: missing '|'", lineno + 1)))?;
            let label = label.trim().to_string();
            let entries: Vec<Q> = values
                .split_whitespace()
                .map(parse_q)
                .collect::<Result<_>>()?;
            let expected = table_width(table)?;
            if entries.len() != expected {
                return Err(Error::Parse(format!(
                    "line {}: table {} row {} has {} entries, expected {}",
                    lineno + 1,
                    table,
                    label,
                    entries.len(),
                    expected
                )));
            }
            by_key.insert((table, label.clone()), rows.len());
            rows.push(TableRow {
                table,
                label,
                entries,
            });
        }
        Ok(ReferenceTables { rows, by_key })
    }

    pub fn rows(&self, table: TableId) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(move |r| r.table == table)
    }

    pub fn get(&self, table: TableId, label: &str) -> Option<&TableRow> {
        self.by_key
            .get(&(table, label.to_string()))
            .map(|&i| &self.rows[i])
    }
}

fn table_width(table: TableId) -> Result<usize> {
    Ok(match table {
        3 | 5 | 7 => 16,
        4 | 6 => 14,
        other => return Err(Error::Parse(format!("unknown table id {other}"))),
    })
}

/// The table holding a given space's family-A rows.
pub fn table_for_space(space: SpaceId) -> TableId {
    match space {
        SpaceId::Trivial => 3,
        SpaceId::Chi8 => 4,
        SpaceId::Chi12 => 5,
        SpaceId::Chi24 => 6,
    }
}

/// The space whose basis a table's columns refer to.
pub fn space_for_table(table: TableId) -> Result<SpaceId> {
    Ok(match table {
        3 | 7 => SpaceId::Trivial,
        4 => SpaceId::Chi8,
        5 => SpaceId::Chi12,
        6 => SpaceId::Chi24,
        other => return Err(Error::Parse(format!("unknown table id {other}"))),
    })
}

/// The embedded tables, parsed once.
pub fn reference_tables() -> &'static ReferenceTables {
    static TABLES: OnceLock<ReferenceTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        ReferenceTables::parse(TABLES_TEXT).expect("embedded coefficient tables must parse")
    })
}
