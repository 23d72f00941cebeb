//! Parse N-Triples from a string, tokenize, and print the vocabulary.
//!
//!     cargo run --example ingest_ntriples

use rdf2vec::ingest::{build_vocabulary, parse_ntriples};

const DATA: &str = r#"
<http://ex.org/alice> <http://ex.org/knows> <http://ex.org/bob> .
<http://ex.org/bob> <http://ex.org/knows> <http://ex.org/carol> .
<http://ex.org/alice> <http://ex.org/name> "Alice"@en .
_:b0 <http://ex.org/likes> <http://ex.org/alice> . # blank subject
this line is broken
"#;

fn main() -> rdf2vec::Result<()> {
    let mut triples = Vec::new();
    for parsed in parse_ntriples(DATA.as_bytes()) {
        match parsed {
            Ok(t) => triples.push(t),
            Err(e) => eprintln!("skipping: {e}"),
        }
    }
    let (vocab, edges) = build_vocabulary(&triples, false)?;
    println!("{} triples, {} tokens, {} edges", triples.len(), vocab.len(), edges.len());
    vocab.write_tsv(std::io::stdout()).expect("stdout");
    Ok(())
}
