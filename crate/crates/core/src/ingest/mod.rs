//! Input parsing and tokenization.
//!
//! Every input format is reduced to a stream of [`Triple`]s, which
//! [`build_vocabulary`] turns into a [`Vocabulary`] plus an encoded edge list.

mod ntriples;
mod table;
mod vocab;

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::{Error, Result};

pub use ntriples::{parse_ntriples, parse_ntriples_line, NTriplesReader};
pub use table::{parse_edge_table, TableFormat};
pub use vocab::{build_vocabulary, EncodedEdge, TokenKind, Vocabulary};
pub(crate) use vocab::escape as escape_tsv;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Resource,
    Literal,
}

/// One RDF statement. Resource keys are IRIs without angle brackets or
/// `_:label` blank nodes; literal keys are the quoted lexical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub subject: String,
    pub predicate: String,
    pub object: String,
    pub object_kind: ObjectKind,
}

impl Triple {
    pub fn resource(s: impl Into<String>, p: impl Into<String>, o: impl Into<String>) -> Self {
        Triple {
            subject: s.into(),
            predicate: p.into(),
            object: o.into(),
            object_kind: ObjectKind::Resource,
        }
    }

    pub fn literal(s: impl Into<String>, p: impl Into<String>, o: impl Into<String>) -> Self {
        Triple {
            subject: s.into(),
            predicate: p.into(),
            object: o.into(),
            object_kind: ObjectKind::Literal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    #[serde(rename = "nt")]
    NTriples,
    Csv,
    Tsv,
    Txt,
}

impl InputFormat {
    /// Guess from the file extension. Parquet and ORC are recognized only to
    /// be rejected.
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        ext.parse()
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nt" | "ntriples" | "n-triples" => Ok(InputFormat::NTriples),
            "csv" => Ok(InputFormat::Csv),
            "tsv" => Ok(InputFormat::Tsv),
            "txt" | "text" => Ok(InputFormat::Txt),
            other => Err(Error::UnsupportedFormat(if other.is_empty() {
                "no file extension".to_string()
            } else {
                other.to_string()
            })),
        }
    }
}

/// Triples read from one input, plus how many malformed lines were skipped.
#[derive(Debug, Default)]
pub struct ReadOutcome {
    pub triples: Vec<Triple>,
    pub skipped: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReadOptions {
    /// Abort on the first malformed line instead of skipping it.
    pub strict: bool,
    /// Only used for the tabular formats.
    pub has_header: bool,
}

/// Read every triple from `path`. In non-strict mode malformed lines are
/// logged and counted instead of failing the read.
pub fn read_triples(path: &Path, format: InputFormat, opts: ReadOptions) -> Result<ReadOutcome> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let items: Box<dyn Iterator<Item = Result<Triple>>> = match format {
        InputFormat::NTriples => Box::new(parse_ntriples(reader)),
        InputFormat::Csv => parse_edge_table(reader, TableFormat::Csv, opts.has_header),
        InputFormat::Tsv => parse_edge_table(reader, TableFormat::Tsv, opts.has_header),
        InputFormat::Txt => parse_edge_table(reader, TableFormat::Txt, opts.has_header),
    };
    let mut out = ReadOutcome::default();
    for item in items {
        match item {
            Ok(t) => out.triples.push(t),
            Err(e @ Error::Parse { .. }) if !opts.strict => {
                log::warn!("{}: skipping {e}", path.display());
                out.skipped += 1;
            }
            Err(Error::Io { source, .. }) => return Err(Error::io(path, source)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Parse several files concurrently and concatenate them in the given order.
pub fn read_triples_many(paths: &[&Path], format: InputFormat, opts: ReadOptions) -> Result<ReadOutcome> {
    let parts: Vec<Result<ReadOutcome>> = paths
        .par_iter()
        .map(|p| read_triples(p, format, opts))
        .collect();
    let mut out = ReadOutcome::default();
    for part in parts {
        let part = part?;
        out.triples.extend(part.triples);
        out.skipped += part.skipped;
    }
    Ok(out)
}
