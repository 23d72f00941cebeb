//! Three-column edge tables (csv, tsv, whitespace-separated text).

use std::io::BufRead;

use super::Triple;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Tsv,
    Txt,
}

/// Yields one resource triple per data row. Row numbers in errors are 1-based
/// physical line numbers, header included.
pub fn parse_edge_table<R: BufRead + 'static>(
    reader: R,
    format: TableFormat,
    has_header: bool,
) -> Box<dyn Iterator<Item = Result<Triple>>> {
    let delimiter = match format {
        TableFormat::Csv => b',',
        TableFormat::Tsv => b'\t',
        TableFormat::Txt => return Box::new(parse_text(reader, has_header)),
    };
    let records = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .quoting(format == TableFormat::Csv)
        .from_reader(reader)
        .into_records();
    Box::new(records.map(|rec| {
        let rec = rec.map_err(|e| {
            if e.is_io_error() {
                Error::io("<stream>", e.into())
            } else {
                Error::Parse { line: e.position().map_or(0, |p| p.line() as usize), message: e.to_string() }
            }
        })?;
        let row = rec.position().map_or(0, |p| p.line() as usize);
        to_triple(row, rec.iter())
    }))
}

/// Whitespace-separated columns; blank lines are ignored.
fn parse_text<R: BufRead>(reader: R, has_header: bool) -> impl Iterator<Item = Result<Triple>> {
    reader
        .lines()
        .enumerate()
        .skip(usize::from(has_header))
        .filter_map(|(idx, line)| match line {
            Err(e) => Some(Err(Error::io("<stream>", e))),
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => Some(to_triple(idx + 1, l.split_whitespace())),
        })
}

fn to_triple<'a>(row: usize, fields: impl Iterator<Item = &'a str>) -> Result<Triple> {
    let fields: Vec<&str> = fields.collect();
    if fields.len() != 3 {
        return Err(Error::Parse { line: row, message: format!("expected 3 columns, found {}", fields.len()) });
    }
    if fields.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse { line: row, message: "empty column".into() });
    }
    Ok(Triple::resource(fields[0], fields[1], fields[2]))
}
