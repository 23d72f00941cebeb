//! A small benchmark suite over generated graphs, printed as a table and CSV.
//!
//!     cargo run --release --example synthetic_bench

use rdf2vec::benchgen::BenchFile;

const SUITE: &str = r#"
repeats = 3
timeout_s = 120

[[graph]]
model = "barabasi"
n = 1000

[[graph]]
model = "erdos_renyi"
n = 100

[[pipeline]]
walk_depth = 4
walk_number = 10
epochs = 1
vector_size = 32
min_count = 1
"#;

fn main() -> rdf2vec::Result<()> {
    let report = BenchFile::parse(SUITE)?.run()?;
    print!("{}", report.table());
    println!();
    report.write_csv(std::io::stdout()).expect("stdout");
    Ok(())
}
