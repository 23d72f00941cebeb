//! Load a CSV edge table, fit, write artifacts, then replay the run from its
//! manifest and check the vectors match.
//!
//!     cargo run --release --example end_to_end

use std::fs;

use rdf2vec::ingest::InputFormat;
use rdf2vec::pipeline::{load_embeddings, PipelineConfig, Rdf2Vec};

fn main() -> rdf2vec::Result<()> {
    let dir = std::env::temp_dir().join("rdf2vec-end-to-end");
    fs::create_dir_all(&dir).expect("temp dir");
    let input = dir.join("edges.csv");
    let mut csv = String::new();
    for i in 0..30 {
        csv.push_str(&format!("n{i},next,n{}\n", (i + 1) % 30));
        csv.push_str(&format!("n{i},skip,n{}\n", (i + 7) % 30));
    }
    fs::write(&input, csv).expect("write input");

    let config = PipelineConfig {
        walk_depth: 4,
        walk_number: 20,
        vector_size: 24,
        min_count: 1,
        reproducible: true,
        generate_artifact: true,
        ..Default::default()
    };
    let mut model = Rdf2Vec::new(config)?;
    let data = model.load_data(&input, InputFormat::Csv)?;
    let emb = model.fit_transform(&data, None)?;
    let first = model.save_artifacts(dir.join("run"), data.source.as_ref())?;
    println!("{} vectors of dim {} -> {:?}", emb.len(), emb.dim(), first.embeddings.as_deref().unwrap());

    let (mut replay, source) = Rdf2Vec::from_manifest(first.manifest.as_deref().unwrap())?;
    let source = source.expect("manifest records the input");
    let data = replay.load_data(&source.path, source.format)?;
    replay.fit_transform(&data, None)?;
    let second = replay.save_artifacts(dir.join("replay"), Some(&source))?;

    let a = load_embeddings(first.embeddings.as_deref().unwrap())?;
    let b = load_embeddings(second.embeddings.as_deref().unwrap())?;
    println!("replay identical: {}", a == b);
    Ok(())
}
