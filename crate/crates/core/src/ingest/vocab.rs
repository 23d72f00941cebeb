use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{ObjectKind, Triple};
use crate::{Error, Result, Token};

/// Roles a token has been seen in. Entities and predicates share one token
/// space, so a token can be both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenKind {
    pub entity: bool,
    pub predicate: bool,
}

impl TokenKind {
    fn code(self) -> &'static str {
        match (self.entity, self.predicate) {
            (true, true) => "ep",
            (true, false) => "e",
            (false, true) => "p",
            (false, false) => "-",
        }
    }

    fn from_code(code: &str) -> Option<Self> {
        Some(match code {
            "ep" => TokenKind { entity: true, predicate: true },
            "e" => TokenKind { entity: true, predicate: false },
            "p" => TokenKind { entity: false, predicate: true },
            "-" => TokenKind::default(),
            _ => return None,
        })
    }
}

/// Bijection between lexical keys and contiguous tokens `0..len()`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Vocabulary {
    token_of: HashMap<String, Token>,
    lexical_of: Vec<String>,
    kinds: Vec<TokenKind>,
    /// Occurrences in the walk corpus; zero until [`Vocabulary::set_frequency`].
    frequency: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EncodedEdge {
    pub src: Token,
    pub pred: Token,
    pub dst: Token,
}

impl EncodedEdge {
    pub fn new(src: Token, pred: Token, dst: Token) -> Self {
        EncodedEdge { src, pred, dst }
    }
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Token for `key`, assigning the next free one on first sight.
    pub fn intern(&mut self, key: &str) -> Token {
        if let Some(&t) = self.token_of.get(key) {
            return t;
        }
        let t = Token::try_from(self.lexical_of.len()).expect("vocabulary exceeds u32 tokens");
        self.token_of.insert(key.to_string(), t);
        self.lexical_of.push(key.to_string());
        self.kinds.push(TokenKind::default());
        self.frequency.push(0);
        t
    }

    fn intern_entity(&mut self, key: &str) -> Token {
        let t = self.intern(key);
        self.kinds[t as usize].entity = true;
        t
    }

    fn intern_predicate(&mut self, key: &str) -> Token {
        let t = self.intern(key);
        self.kinds[t as usize].predicate = true;
        t
    }

    pub fn len(&self) -> usize {
        self.lexical_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lexical_of.is_empty()
    }

    pub fn token(&self, key: &str) -> Option<Token> {
        self.token_of.get(key).copied()
    }

    pub fn lexical(&self, token: Token) -> Option<&str> {
        self.lexical_of.get(token as usize).map(String::as_str)
    }

    pub fn lexicals(&self) -> &[String] {
        &self.lexical_of
    }

    pub fn kind(&self, token: Token) -> TokenKind {
        self.kinds[token as usize]
    }

    pub fn entity_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.entity).count()
    }

    pub fn predicate_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.predicate).count()
    }

    /// Per-token flag: seen as a subject or object.
    pub fn entity_mask(&self) -> Vec<bool> {
        self.kinds.iter().map(|k| k.entity).collect()
    }

    /// Tokens seen as a subject or object, ascending.
    pub fn entities(&self) -> Vec<Token> {
        (0..self.len() as Token).filter(|&t| self.kinds[t as usize].entity).collect()
    }

    pub fn frequency(&self) -> &[u64] {
        &self.frequency
    }

    pub fn set_frequency(&mut self, freq: Vec<u64>) {
        assert_eq!(freq.len(), self.len(), "frequency table length mismatch");
        self.frequency = freq;
    }

    /// TSV with columns `token kind frequency lexical`; tabs, newlines and
    /// backslashes in the lexical key are backslash-escaped.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "token\tkind\tfrequency\tlexical")?;
        for (t, lex) in self.lexical_of.iter().enumerate() {
            writeln!(w, "{t}\t{}\t{}\t{}", self.kinds[t].code(), self.frequency[t], escape(lex))?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(r: R) -> Result<Self> {
        let bad = |line: usize, message: &str| Error::Format {
            what: "vocabulary TSV",
            message: format!("line {line}: {message}"),
        };
        let mut vocab = Vocabulary::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::io("<vocabulary>", e))?;
            if idx == 0 {
                continue;
            }
            let mut cols = line.splitn(4, '\t');
            let (Some(tok), Some(kind), Some(freq), Some(lex)) =
                (cols.next(), cols.next(), cols.next(), cols.next())
            else {
                return Err(bad(idx + 1, "expected 4 columns"));
            };
            let tok: usize = tok.parse().map_err(|_| bad(idx + 1, "bad token"))?;
            if tok != vocab.len() {
                return Err(bad(idx + 1, "tokens must be contiguous from 0"));
            }
            let kind = TokenKind::from_code(kind).ok_or_else(|| bad(idx + 1, "bad kind"))?;
            let freq: u64 = freq.parse().map_err(|_| bad(idx + 1, "bad frequency"))?;
            let lex = unescape(lex);
            if vocab.token_of.contains_key(&lex) {
                return Err(bad(idx + 1, "duplicate lexical key"));
            }
            let t = vocab.intern(&lex);
            vocab.kinds[t as usize] = kind;
            vocab.frequency[t as usize] = freq;
        }
        Ok(vocab)
    }
}

pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

/// Tokenize triples in first-occurrence order (subject, predicate, object).
///
/// With `include_literals == false`, literal-object triples contribute their
/// subject and predicate tokens but no edge.
pub fn build_vocabulary<'a, I>(triples: I, include_literals: bool) -> Result<(Vocabulary, Vec<EncodedEdge>)>
where
    I: IntoIterator<Item = &'a Triple>,
{
    let mut vocab = Vocabulary::new();
    let mut edges = Vec::new();
    let mut seen_any = false;
    for t in triples {
        seen_any = true;
        let src = vocab.intern_entity(&t.subject);
        let pred = vocab.intern_predicate(&t.predicate);
        if t.object_kind == ObjectKind::Literal && !include_literals {
            continue;
        }
        let dst = vocab.intern_entity(&t.object);
        edges.push(EncodedEdge { src, pred, dst });
    }
    if !seen_any {
        return Err(Error::EmptyGraph);
    }
    Ok((vocab, edges))
}
