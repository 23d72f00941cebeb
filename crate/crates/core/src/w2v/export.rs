//! Embedding and loss-trace file formats.

use std::io::{self, BufRead, Write};

use super::model::Matrix;
use crate::{Error, Result};

/// word2vec text format: `<count> <dim>` then `<lexical> <v_1> ... <v_dim>` per
/// row. Values use the shortest representation that parses back exactly.
pub fn write_word2vec<W: Write>(lexicals: &[String], vectors: &Matrix, mut w: W) -> io::Result<()> {
    assert_eq!(lexicals.len(), vectors.rows(), "one lexical key per row");
    writeln!(w, "{} {}", vectors.rows(), vectors.cols())?;
    for (i, lex) in lexicals.iter().enumerate() {
        w.write_all(lex.as_bytes())?;
        for x in vectors.row(i) {
            write!(w, " {x}")?;
        }
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Inverse of [`write_word2vec`]. The last `dim` fields of a line are the
/// vector; everything before them is the key, so keys may contain spaces.
pub fn read_word2vec<R: BufRead>(r: R) -> Result<(Vec<String>, Matrix)> {
    let bad = |message: String| Error::Format { what: "word2vec file", message };
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("missing header".into()))?
        .map_err(|e| Error::io("<embeddings>", e))?;
    let mut it = header.split_whitespace().map(str::parse::<usize>);
    let (Some(Ok(count)), Some(Ok(dim)), None) = (it.next(), it.next(), it.next()) else {
        return Err(bad(format!("bad header `{header}`")));
    };
    let mut keys = Vec::with_capacity(count);
    let mut data = Vec::with_capacity(count * dim);
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io("<embeddings>", e))?;
        let fields: Vec<&str> = line.rsplitn(dim + 1, ' ').collect();
        if fields.len() != dim + 1 {
            return Err(bad(format!("line {}: expected key and {dim} values", i + 2)));
        }
        keys.push(fields[dim].to_string());
        for f in fields[..dim].iter().rev() {
            data.push(f.parse::<f64>().map_err(|_| bad(format!("line {}: bad value `{f}`", i + 2)))?);
        }
    }
    if keys.len() != count {
        return Err(bad(format!("header says {count} rows, found {}", keys.len())));
    }
    Ok((keys, Matrix::from_vec(count, dim, data)))
}

/// `lexical<TAB>v_1<TAB>...` without a header.
pub fn write_embeddings_tsv<W: Write>(lexicals: &[String], vectors: &Matrix, mut w: W) -> io::Result<()> {
    for (i, lex) in lexicals.iter().enumerate() {
        w.write_all(crate::ingest::escape_tsv(lex).as_bytes())?;
        for x in vectors.row(i) {
            write!(w, "\t{x}")?;
        }
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// CSV `epoch,loss` with 1-based epochs.
pub fn write_loss_csv<W: Write>(losses: &[f64], mut w: W) -> io::Result<()> {
    writeln!(w, "epoch,loss")?;
    for (i, l) in losses.iter().enumerate() {
        writeln!(w, "{},{l}", i + 1)?;
    }
    Ok(())
}
