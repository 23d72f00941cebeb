//! Line-oriented N-Triples reader.

use std::io::BufRead;

use super::{ObjectKind, Triple};
use crate::{Error, Result};

/// Iterator over the statements of an N-Triples stream. Comment and blank
/// lines produce nothing; a malformed line produces an `Error::Parse` and the
/// iterator carries on with the next line.
pub struct NTriplesReader<R> {
    lines: std::io::Lines<R>,
    line_no: usize,
}

pub fn parse_ntriples<R: BufRead>(reader: R) -> NTriplesReader<R> {
    NTriplesReader { lines: reader.lines(), line_no: 0 }
}

impl<R: BufRead> Iterator for NTriplesReader<R> {
    type Item = Result<Triple>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.lines.next()? {
                Ok(l) => l,
                Err(e) => return Some(Err(Error::io("<stream>", e))),
            };
            self.line_no += 1;
            match parse_ntriples_line(&line) {
                Ok(Some(t)) => return Some(Ok(t)),
                Ok(None) => continue,
                Err(message) => return Some(Err(Error::Parse { line: self.line_no, message })),
            }
        }
    }
}

/// Parse a single line. `Ok(None)` for blank and comment lines.
pub fn parse_ntriples_line(line: &str) -> std::result::Result<Option<Triple>, String> {
    let mut cur = Cursor { s: line, pos: 0 };
    cur.skip_ws();
    if cur.at_end() || cur.peek() == Some('#') {
        return Ok(None);
    }
    let subject = match cur.peek() {
        Some('<') => cur.iri()?,
        Some('_') => cur.blank_node()?,
        _ => return Err("expected IRI or blank node as subject".into()),
    };
    cur.skip_ws();
    if cur.peek() != Some('<') {
        return Err("expected IRI as predicate".into());
    }
    let predicate = cur.iri()?;
    cur.skip_ws();
    let (object, object_kind) = match cur.peek() {
        Some('<') => (cur.iri()?, ObjectKind::Resource),
        Some('_') => (cur.blank_node()?, ObjectKind::Resource),
        Some('"') => (cur.literal()?, ObjectKind::Literal),
        _ => return Err("expected IRI, blank node or literal as object".into()),
    };
    cur.skip_ws();
    if cur.peek() != Some('.') {
        return Err("expected '.' after object".into());
    }
    cur.bump();
    cur.skip_ws();
    if !cur.at_end() && cur.peek() != Some('#') {
        return Err("trailing characters after '.'".into());
    }
    Ok(Some(Triple { subject, predicate, object, object_kind }))
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    fn iri(&mut self) -> std::result::Result<String, String> {
        debug_assert_eq!(self.peek(), Some('<'));
        self.bump();
        let rest = self.rest();
        let end = rest.find('>').ok_or("unterminated IRI")?;
        let iri = &rest[..end];
        if iri.is_empty() {
            return Err("empty IRI".into());
        }
        if iri.chars().any(|c| c.is_whitespace() || c == '<' || c == '"') {
            return Err(format!("invalid character in IRI <{iri}>"));
        }
        self.pos += end + 1;
        Ok(iri.to_string())
    }

    fn blank_node(&mut self) -> std::result::Result<String, String> {
        let rest = self.rest();
        if !rest.starts_with("_:") {
            return Err("expected '_:' blank node".into());
        }
        let label_len = rest[2..]
            .find(|c: char| c.is_whitespace() || c == '<' || c == '"')
            .unwrap_or(rest.len() - 2);
        let mut label = &rest[2..2 + label_len];
        // "_:b1." is a blank node followed by the terminating dot
        while label.ends_with('.') {
            label = &label[..label.len() - 1];
        }
        if label.is_empty() {
            return Err("empty blank node label".into());
        }
        self.pos += 2 + label.len();
        Ok(format!("_:{label}"))
    }

    /// Returns the quoted lexical form; datatype and language tag are consumed
    /// and dropped.
    fn literal(&mut self) -> std::result::Result<String, String> {
        let rest = self.rest();
        let bytes = rest.as_bytes();
        let mut i = 1;
        loop {
            match bytes.get(i) {
                None => return Err("unterminated literal".into()),
                Some(b'\\') => i += 2,
                Some(b'"') => break,
                Some(_) => i += 1,
            }
        }
        let quoted = &rest[..=i];
        self.pos += i + 1;
        if self.rest().starts_with("^^") {
            self.pos += 2;
            if self.peek() != Some('<') {
                return Err("expected datatype IRI after '^^'".into());
            }
            self.iri()?;
        } else if self.peek() == Some('@') {
            self.bump();
            let tag_len = self
                .rest()
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
                .unwrap_or(self.rest().len());
            if tag_len == 0 {
                return Err("empty language tag".into());
            }
            self.pos += tag_len;
        }
        Ok(quoted.to_string())
    }
}
