//! BFS spanning-tree walks and the leaf-to-root path table.
//!
//!     cargo run --example bfs_walks

use rdf2vec::ingest::Triple;
use rdf2vec::pipeline::EdgeData;
use rdf2vec::walks::bfs_walks;

fn main() -> rdf2vec::Result<()> {
    // diamond: r -> a, r -> b, a -> c, b -> c
    let triples = vec![
        Triple::resource("r", "p", "a"),
        Triple::resource("r", "p", "b"),
        Triple::resource("a", "p", "c"),
        Triple::resource("b", "p", "c"),
    ];
    let data = EdgeData::from_triples(&triples, false)?;
    let graph = data.graph()?;
    let root = data.vocab.token("r").expect("r is interned");
    let (corpus, table) = bfs_walks(&graph, &[root], 4)?;

    let lex = |t| data.vocab.lexical(t).unwrap_or("?");
    for (i, walk) in corpus.walks().enumerate() {
        let names: Vec<_> = walk.iter().map(|&t| lex(t)).collect();
        println!("walk {i}: {}", names.join(" -> "));
    }
    for row in &table.rows {
        println!("{}\t{}\t{}", lex(row.source), lex(row.target), row.walk_id);
    }
    Ok(())
}
