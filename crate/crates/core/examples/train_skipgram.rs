//! Skip-gram on two 5-cliques joined by a bridge; nodes in the same clique
//! should end up closer than nodes across it.
//!
//!     cargo run --release --example train_skipgram

use rdf2vec::ingest::Triple;
use rdf2vec::pipeline::{EdgeData, PipelineConfig, Rdf2Vec};

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (norm(a) * norm(b))
}

fn main() -> rdf2vec::Result<()> {
    let mut triples = Vec::new();
    for c in ["a", "b"] {
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    triples.push(Triple::resource(format!("{c}{i}"), "link", format!("{c}{j}")));
                }
            }
        }
    }
    triples.push(Triple::resource("a0", "bridge", "b0"));
    let data = EdgeData::from_triples(&triples, false)?;

    let config = PipelineConfig { vector_size: 16, epochs: 10, min_count: 1, reproducible: true, ..Default::default() };
    let mut model = Rdf2Vec::new(config)?;
    let emb = model.fit_transform(&data, None)?;
    let losses = &model.last_fit().expect("fitted").report.epoch_losses;
    println!("loss: epoch 1 {:.4} -> epoch {} {:.4}", losses[0], losses.len(), losses[losses.len() - 1]);

    let v = |k: &str| emb.get(k).expect("entity has a vector");
    println!("cos(a1, a2) = {:.3}", cosine(v("a1"), v("a2")));
    println!("cos(a1, b2) = {:.3}", cosine(v("a1"), v("b2")));
    Ok(())
}
