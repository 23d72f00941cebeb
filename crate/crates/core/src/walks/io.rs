//! Corpus export: one walk per line as lexical keys, or a binary stream of
//! `u32` little-endian length-prefixed token sequences.

use std::io::{self, Read, Write};

use super::{WalkCorpus, WalkStrategy};
use crate::ingest::Vocabulary;
use crate::{Error, Result, Token};

/// Space-separated lexical keys, one walk per line. Keys are written verbatim.
pub fn write_corpus_text<W: Write>(corpus: &WalkCorpus, vocab: &Vocabulary, mut w: W) -> io::Result<()> {
    for walk in corpus.walks() {
        let mut first = true;
        for &t in walk {
            if !first {
                w.write_all(b" ")?;
            }
            first = false;
            w.write_all(vocab.lexical(t).unwrap_or("?").as_bytes())?;
        }
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_corpus_binary<W: Write>(corpus: &WalkCorpus, mut w: W) -> io::Result<()> {
    for walk in corpus.walks() {
        w.write_all(&(walk.len() as u32).to_le_bytes())?;
        for &t in walk {
            w.write_all(&t.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Inverse of [`write_corpus_binary`]. Strategy is not stored in the format
/// and must be supplied.
pub fn read_corpus_binary<R: Read>(mut r: R, strategy: WalkStrategy) -> Result<WalkCorpus> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes).map_err(|e| Error::io("<corpus>", e))?;
    let bad = |message: String| Error::Format { what: "binary corpus", message };
    if bytes.len() % 4 != 0 {
        return Err(bad(format!("length {} is not a multiple of 4", bytes.len())));
    }
    let words: Vec<u32> = bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    let mut corpus = WalkCorpus::new(strategy);
    let mut pos = 0;
    while pos < words.len() {
        let len = words[pos] as usize;
        let end = pos + 1 + len;
        if end > words.len() {
            return Err(bad(format!("walk at word {pos} runs past end of input")));
        }
        corpus.push(&words[pos + 1..end] as &[Token]);
        pos = end;
    }
    Ok(corpus)
}
