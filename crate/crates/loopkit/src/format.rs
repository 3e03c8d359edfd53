//! Plain-text table files.
//!
//! A table is its order `n` on one line followed by `n` rows of `n`
//! whitespace-separated entries. Lines starting with `#` are comments and
//! blank lines are ignored, so a stream of tables is just several of these
//! one after another. Enumeration output separates tables by a blank line
//! and ends with a `# stats {...}` trailer.

use std::fmt::Write as _;

use loopkit_core::perm::Permutation;
use loopkit_core::{LoopTable, TableError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: expected the table order, found {found:?}")]
    BadOrder { line: usize, found: String },
    #[error("line {line}: {found:?} is not a nonnegative integer")]
    BadEntry { line: usize, found: String },
    #[error("table starting at line {line}: expected {expected} rows, file ends after {found}")]
    MissingRows { line: usize, expected: usize, found: usize },
    #[error("table starting at line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: TableError,
    },
    #[error("expected exactly one table, found {0}")]
    TableCount(usize),
}

/// A parsed table together with the relabeling that moved its identity to 0.
#[derive(Debug, Clone)]
pub struct ParsedTable {
    pub table: LoopTable,
    pub relabel: Permutation,
    /// 1-based line of the order header.
    pub line: usize,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses every table in `text`.
pub fn parse_tables(text: &str) -> Result<Vec<ParsedTable>, FormatError> {
    let mut lines = content_lines(text);
    let mut out = Vec::new();
    while let Some((line, header)) = lines.next() {
        let n: usize = header
            .parse()
            .map_err(|_| FormatError::BadOrder { line, found: header.to_string() })?;
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);
        for found in 0..n {
            let (ln, row) = lines.next().ok_or(FormatError::MissingRows { line, expected: n, found })?;
            let row = row
                .split_whitespace()
                .map(|tok| tok.parse().map_err(|_| FormatError::BadEntry { line: ln, found: tok.to_string() }))
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        let v = LoopTable::validate(&rows).map_err(|source| FormatError::Invalid { line, source })?;
        out.push(ParsedTable { table: v.table, relabel: v.relabel, line });
    }
    Ok(out)
}

/// Parses a file holding exactly one table.
pub fn parse_table(text: &str) -> Result<ParsedTable, FormatError> {
    let mut all = parse_tables(text)?;
    if all.len() != 1 {
        return Err(FormatError::TableCount(all.len()));
    }
    Ok(all.pop().unwrap())
}

pub fn write_table(t: &LoopTable) -> String {
    let n = t.order();
    let width = (n.saturating_sub(1)).to_string().len();
    let mut s = format!("{n}\n");
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// Tables separated by blank lines, followed by an optional trailer line.
pub fn write_stream<'a>(tables: impl IntoIterator<Item = &'a LoopTable>, trailer: Option<&str>) -> String {
    let mut s = String::new();
    for (i, t) in tables.into_iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        s.push_str(&write_table(t));
    }
    if let Some(tr) = trailer {
        if !s.is_empty() {
            s.push('\n');
        }
        let _ = writeln!(s, "# stats {tr}");
    }
    s
}

/// The JSON object of a `# stats` trailer, if `text` has one.
pub fn stats_trailer(text: &str) -> Option<&str> {
    text.lines().rev().find_map(|l| l.trim().strip_prefix("# stats "))
}
