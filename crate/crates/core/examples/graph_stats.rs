//! Size, degree, betweenness and density of generated graphs.
//!
//!     cargo run --release --example graph_stats

use rdf2vec::benchgen::{GeneratorSpec, GraphModel};
use rdf2vec::graph::compute_stats;
use rdf2vec::pipeline::EdgeData;

fn main() -> rdf2vec::Result<()> {
    let specs = [
        GeneratorSpec::new(GraphModel::Barabasi, 100),
        GeneratorSpec::new(GraphModel::Barabasi, 1000),
        GeneratorSpec::new(GraphModel::ErdosRenyi, 100),
        GeneratorSpec::new(GraphModel::UniformAttachment, 100),
    ];
    println!("{:<18} {:>8} {:>8} {:>10} {:>12} {:>8}", "graph", "V", "E", "avg deg", "avg betw", "density");
    for spec in specs {
        let data = EdgeData::from_triples(&spec.clone().with_seed(7).triples()?, false)?;
        let s = compute_stats(&data.graph()?, true)?;
        println!(
            "{:<18} {:>8} {:>8} {:>10.4} {:>12.4} {:>8.4}",
            spec.label(),
            s.vertices,
            s.edges,
            s.avg_degree,
            s.avg_betweenness.unwrap_or(f64::NAN),
            s.density
        );
    }
    Ok(())
}
