//! CBOW directly on a walk corpus, bypassing the pipeline.
//!
//!     cargo run --release --example train_cbow

use rdf2vec::benchgen::{GeneratorSpec, GraphModel};
use rdf2vec::pipeline::EdgeData;
use rdf2vec::w2v::{train, ModelKind, TrainConfig};
use rdf2vec::walks::random_walks;

fn main() -> rdf2vec::Result<()> {
    let spec = GeneratorSpec::new(GraphModel::Barabasi, 300).with_seed(1);
    let data = EdgeData::from_triples(&spec.triples()?, false)?;
    let graph = data.graph()?;
    let corpus = random_walks(&graph, &data.vocab.entities(), 4, 20, 7, false)?;

    let config = TrainConfig {
        model: ModelKind::Cbow,
        vector_size: 32,
        min_count: 2,
        epochs: 3,
        ..TrainConfig::default()
    };
    let (model, report) = train(&corpus, data.vocab.len(), &config, 7)?;
    println!(
        "{} instances, batch {} (suggested {}), {} trained rows",
        report.instances,
        report.batch_size,
        report.suggested_batch_size,
        model.trained_mask.iter().filter(|&&t| t).count()
    );
    for (epoch, loss) in report.epoch_losses.iter().enumerate() {
        println!("epoch {} loss {loss:.5}", epoch + 1);
    }
    Ok(())
}
