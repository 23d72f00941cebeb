use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rdf2vec::benchgen::BenchFile;
use rdf2vec::graph::compute_stats;
use rdf2vec::ingest::{InputFormat, ReadOptions, Vocabulary};
use rdf2vec::pipeline::{self, extract_walks, resolve_roots, thread_pool, train_embeddings, InputSource, PipelineConfig, Rdf2Vec, MEMORY_BUDGET_ENV};
use rdf2vec::w2v::ModelKind;
use rdf2vec::walks::{read_corpus_binary, write_corpus_binary, write_corpus_text, Projection, WalkStrategy};
use rdf2vec::{Error, Result};

#[derive(Parser)]
#[command(name = "rdf2vec", version, about = "Knowledge-graph embeddings from random walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize an input file and write vocab.tsv and edges.tsv
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print graph statistics
    Stats {
        #[command(flatten)]
        input: InputArgs,
        /// Also compute average betweenness (refused above 10^4 vertices)
        #[arg(long)]
        betweenness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Extract walks into corpus.bin, corpus.txt and vocab.tsv
    Walks {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train embeddings on a corpus written by `walks`
    Train {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        vocab: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Load, walk, train and write artifacts
    Run {
        #[command(flatten)]
        input: OptionalInput,
        #[command(flatten)]
        config: ConfigArgs,
        /// Replay the configuration and input of an earlier run
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the pipeline on synthetic graphs described by a TOML suite
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        repeats: Option<usize>,
        #[arg(long)]
        timeout_s: Option<f64>,
        /// Per-repeat CSV output
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// nt, csv, tsv or txt; guessed from the extension when omitted
    #[arg(long)]
    format: Option<InputFormat>,
    #[arg(long)]
    include_literals: bool,
    /// Abort on the first malformed line instead of skipping it
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    has_header: bool,
}

#[derive(Args)]
struct OptionalInput {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    format: Option<InputFormat>,
    #[arg(long)]
    include_literals: bool,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    has_header: bool,
}

/// One flag per `PipelineConfig` field; unset flags keep the base value.
#[derive(Args, Default)]
struct ConfigArgs {
    /// TOML file with `PipelineConfig` fields, applied before the flags
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, alias = "strategy")]
    walk_strategy: Option<WalkStrategy>,
    #[arg(long, alias = "depth")]
    walk_depth: Option<usize>,
    #[arg(long, alias = "walks-per-vertex")]
    walk_number: Option<usize>,
    #[arg(long)]
    embedding_model: Option<ModelKind>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long)]
    vector_size: Option<usize>,
    #[arg(long)]
    window_size: Option<usize>,
    #[arg(long)]
    min_count: Option<u64>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    negative_samples: Option<usize>,
    #[arg(long)]
    random_state: Option<u64>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    reproducible: Option<bool>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    generate_artifact: Option<bool>,
    #[arg(long)]
    projection: Option<Projection>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    duplicate_free: Option<bool>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    use_sparse: Option<bool>,
    #[arg(long)]
    sync_interval_ms: Option<u64>,
    #[arg(long, alias = "memory-budget", env = MEMORY_BUDGET_ENV)]
    memory_budget_bytes: Option<u64>,
    #[arg(long)]
    memory_cap_fraction: Option<f64>,
}

macro_rules! overlay {
    ($cfg:ident, $args:ident, $($field:ident),*) => {
        $(if let Some(v) = $args.$field.clone() { $cfg.$field = v; })*
    };
}

impl ConfigArgs {
    fn resolve(&self, base: PipelineConfig) -> Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
                toml::from_str(&text).map_err(|e| Error::Format { what: "config", message: e.to_string() })?
            }
            None => base,
        };
        let a = self;
        overlay!(
            cfg, a, walk_strategy, walk_depth, walk_number, embedding_model, epochs, vector_size, window_size,
            min_count, learning_rate, negative_samples, random_state, reproducible, workers, generate_artifact,
            projection, duplicate_free, use_sparse, sync_interval_ms, memory_cap_fraction
        );
        if self.batch_size.is_some() {
            cfg.batch_size = self.batch_size;
        }
        if self.memory_budget_bytes.is_some() {
            cfg.memory_budget_bytes = self.memory_budget_bytes;
        }
        Ok(cfg)
    }
}

fn io_error(path: &Path, source: io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| io_error(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| io_error(path, e))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<()> {
    let mut w = create(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| io_error(path, e))
}

fn mkdir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

fn format_of(path: &Path, format: Option<InputFormat>) -> Result<InputFormat> {
    match format {
        Some(f) => Ok(f),
        None => InputFormat::from_path(path),
    }
}

fn load(input: &InputArgs) -> Result<pipeline::EdgeData> {
    let format = format_of(&input.input, input.format)?;
    let opts = ReadOptions { strict: input.strict, has_header: input.has_header };
    let data = pipeline::load_data(&input.input, format, input.include_literals, opts)?;
    if data.skipped > 0 {
        log::warn!("skipped {} malformed lines", data.skipped);
    }
    Ok(data)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest { input, out } => {
            let data = load(&input)?;
            mkdir(&out)?;
            write_file(&out.join("vocab.tsv"), |w| data.vocab.write_tsv(w))?;
            write_file(&out.join("edges.tsv"), |w| {
                for e in &data.edges {
                    writeln!(w, "{}\t{}\t{}", e.src, e.pred, e.dst)?;
                }
                Ok(())
            })?;
            println!(
                "{} tokens ({} entities, {} predicates), {} edges, {} skipped",
                data.vocab.len(),
                data.vocab.entity_count(),
                data.vocab.predicate_count(),
                data.edges.len(),
                data.skipped
            );
        }
        Command::Stats { input, betweenness, json } => {
            let data = load(&input)?;
            let stats = compute_stats(&data.graph()?, betweenness)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialize"));
            } else {
                println!("{:<16} {}", "vertices", stats.vertices);
                println!("{:<16} {}", "edges", stats.edges);
                println!("{:<16} {:.4}", "avg_degree", stats.avg_degree);
                match stats.avg_betweenness {
                    Some(b) => println!("{:<16} {:.4}", "avg_betweenness", b),
                    None => println!("{:<16} -", "avg_betweenness"),
                }
                println!("{:<16} {:.4}", "density", stats.density);
            }
        }
        Command::Walks { input, config, out } => {
            let base = PipelineConfig { include_literals: input.include_literals, ..Default::default() };
            let cfg = config.resolve(base)?;
            cfg.validate()?;
            let data = load(&input)?;
            let graph = data.graph()?;
            let roots = resolve_roots(&data, None)?;
            let pool = thread_pool(cfg.workers)?;
            let (corpus, paths) = pool.install(|| extract_walks(&graph, &roots, &cfg))?;
            let mut vocab = data.vocab.clone();
            vocab.set_frequency(corpus.frequencies(vocab.len()));
            mkdir(&out)?;
            write_file(&out.join("corpus.bin"), |w| write_corpus_binary(&corpus, w))?;
            write_file(&out.join("corpus.txt"), |w| write_corpus_text(&corpus, &vocab, w))?;
            write_file(&out.join("vocab.tsv"), |w| vocab.write_tsv(w))?;
            if let Some(table) = paths {
                write_file(&out.join("paths.tsv"), |w| {
                    writeln!(w, "source\ttarget\twalk_id")?;
                    for r in &table.rows {
                        let lex = |t| vocab.lexical(t).unwrap_or("?");
                        writeln!(w, "{}\t{}\t{}", lex(r.source), lex(r.target), r.walk_id)?;
                    }
                    Ok(())
                })?;
            }
            println!("{} walks, {} tokens", corpus.len(), corpus.total_tokens());
        }
        Command::Train { corpus, vocab, config, out } => {
            let mut cfg = config.resolve(PipelineConfig::default())?;
            cfg.generate_artifact = true;
            cfg.validate()?;
            let vocab = Vocabulary::read_tsv(open(&vocab)?)?;
            let corpus = read_corpus_binary(open(&corpus)?, cfg.walk_strategy)?;
            let pool = thread_pool(cfg.workers)?;
            let (model, report) = pool.install(|| train_embeddings(&corpus, vocab.len(), &cfg))?;
            pipeline::save_artifacts(&model, &vocab, &report, &cfg, &out, |_| {})?;
            print_losses(&report.epoch_losses);
        }
        Command::Run { input, config, manifest, out } => {
            let (base, replay) = match &manifest {
                Some(path) => {
                    let (model, source) = Rdf2Vec::from_manifest(path)?;
                    (model.config().clone(), source)
                }
                None => (PipelineConfig::default(), None),
            };
            let mut cfg = config.resolve(base)?;
            cfg.generate_artifact = true;
            cfg.include_literals |= input.include_literals;
            let source = match (input.input, replay) {
                (Some(path), _) => InputSource {
                    format: format_of(&path, input.format)?,
                    path,
                    has_header: input.has_header,
                    strict: input.strict,
                },
                (None, Some(src)) => src,
                (None, None) => {
                    return Err(Error::Format { what: "arguments", message: "--input or --manifest is required".into() })
                }
            };
            let mut model = Rdf2Vec::new(cfg)?;
            let opts = ReadOptions { strict: source.strict, has_header: source.has_header };
            let data = pipeline::load_data(&source.path, source.format, model.config().include_literals, opts)
                .map_err(|e| e.in_stage("load"))?;
            model.fit_transform(&data, None)?;
            model.save_artifacts(&out, Some(&source))?;
            if let Some(fit) = model.last_fit() {
                print_losses(&fit.report.epoch_losses);
            }
        }
        Command::Bench { suite, repeats, timeout_s, csv } => {
            let mut suite = BenchFile::load(&suite)?;
            if let Some(r) = repeats {
                suite.repeats = r;
            }
            if let Some(t) = timeout_s {
                suite.timeout_s = t;
            }
            let report = suite.run()?;
            print!("{}", report.table());
            if let Some(path) = csv {
                write_file(&path, |w| report.write_csv(w))?;
            }
        }
    }
    Ok(())
}

fn print_losses(losses: &[f64]) {
    for (i, l) in losses.iter().enumerate() {
        println!("epoch {} loss {:.6}", i + 1, l);
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
