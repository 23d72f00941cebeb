//! Random and duplicate-free walks over a small chain-with-branch graph.
//!
//!     cargo run --example random_walks

use rdf2vec::ingest::Triple;
use rdf2vec::pipeline::{resolve_roots, EdgeData};
use rdf2vec::walks::{random_walks, write_corpus_text};

fn main() -> rdf2vec::Result<()> {
    let triples = vec![
        Triple::resource("a", "p", "b"),
        Triple::resource("b", "p", "c"),
        Triple::resource("b", "q", "d"),
        Triple::resource("d", "p", "a"),
    ];
    let data = EdgeData::from_triples(&triples, false)?;
    let graph = data.graph()?;
    let roots = resolve_roots(&data, Some(&["a"]))?;

    for dedup in [false, true] {
        let corpus = random_walks(&graph, &roots, 3, 8, 42, dedup)?;
        println!("duplicate_free={dedup}: {} walks", corpus.len());
        write_corpus_text(&corpus, &data.vocab, std::io::stdout()).expect("stdout");
    }
    Ok(())
}
