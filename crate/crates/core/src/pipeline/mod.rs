//! End-to-end orchestration: load, walk, train, save.

mod artifacts;
mod config;

use std::path::Path;
use std::time::Instant;

use crate::graph::{build_graph, Graph};
use crate::ingest::{build_vocabulary, read_triples, EncodedEdge, InputFormat, ReadOptions, Triple, Vocabulary};
use crate::w2v::{self, EmbeddingModel, Matrix, TrainReport};
use crate::walks::{bfs_walks, random_walks, PathTable, Projection, WalkCorpus, WalkStrategy};
use crate::{Error, Result, Token};

pub use artifacts::{load_embeddings, save_artifacts, CorpusSummary, InputSource, RunArtifacts, RunManifest, Timings};
pub use config::{PipelineConfig, MEMORY_BUDGET_ENV};

/// Tokenized input: the vocabulary and the encoded edge rows.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeData {
    pub vocab: Vocabulary,
    pub edges: Vec<EncodedEdge>,
    /// Malformed lines skipped while parsing.
    pub skipped: usize,
    pub source: Option<InputSource>,
}

impl EdgeData {
    pub fn from_triples(triples: &[Triple], include_literals: bool) -> Result<Self> {
        let (vocab, edges) = build_vocabulary(triples, include_literals)?;
        Ok(EdgeData { vocab, edges, skipped: 0, source: None })
    }

    pub fn graph(&self) -> Result<Graph> {
        Ok(build_graph(&self.edges, self.vocab.len())?.with_entity_mask(self.vocab.entity_mask()))
    }
}

/// Read and tokenize a file. Tabular inputs are expected to carry a header
/// row only when `has_header` is set.
pub fn load_data(path: &Path, format: InputFormat, include_literals: bool, opts: ReadOptions) -> Result<EdgeData> {
    let read = read_triples(path, format, opts)?;
    let (vocab, edges) = build_vocabulary(&read.triples, include_literals)?;
    Ok(EdgeData {
        vocab,
        edges,
        skipped: read.skipped,
        source: Some(InputSource {
            path: path.to_path_buf(),
            format,
            has_header: opts.has_header,
            strict: opts.strict,
        }),
    })
}

/// Embedding table keyed by lexical token, one row per vocabulary entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Embeddings {
    pub lexicals: Vec<String>,
    pub vectors: Matrix,
    /// False for tokens below `min_count`; their vectors are the untrained
    /// initialization.
    pub trained_mask: Vec<bool>,
}

impl Embeddings {
    pub fn from_model(vocab: &Vocabulary, model: &EmbeddingModel) -> Self {
        Embeddings {
            lexicals: vocab.lexicals().to_vec(),
            vectors: model.input.clone(),
            trained_mask: model.trained_mask.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.lexicals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lexicals.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn get(&self, lexical: &str) -> Option<&[f64]> {
        self.lexicals.iter().position(|l| l == lexical).map(|i| self.vectors.row(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> + '_ {
        self.lexicals.iter().enumerate().map(|(i, l)| (l.as_str(), self.vectors.row(i)))
    }
}

/// Roots by lexical key; `None` means every entity.
pub fn resolve_roots(data: &EdgeData, walk_vertices: Option<&[&str]>) -> Result<Vec<Token>> {
    match walk_vertices {
        None => Ok(data.vocab.entities()),
        Some(keys) => keys
            .iter()
            .map(|k| data.vocab.token(k).ok_or_else(|| Error::UnknownVertex(k.to_string())))
            .collect(),
    }
}

/// Walk corpus per the configured strategy and projection. The path table is
/// only produced by BFS.
pub fn extract_walks(graph: &Graph, roots: &[Token], config: &PipelineConfig) -> Result<(WalkCorpus, Option<PathTable>)> {
    let (corpus, table) = match config.walk_strategy {
        WalkStrategy::Random => (
            random_walks(graph, roots, config.walk_depth, config.walk_number, config.walk_seed(), config.duplicate_free)?,
            None,
        ),
        WalkStrategy::Bfs => {
            let (c, t) = bfs_walks(graph, roots, config.walk_depth)?;
            (c, Some(t))
        }
    };
    let corpus = match config.projection {
        Projection::Full => corpus,
        p => corpus.project(p)?,
    };
    Ok((corpus, table))
}

/// Train on a corpus over `vocab_size` tokens with the configured model and
/// the derived training seed.
pub fn train_embeddings(corpus: &WalkCorpus, vocab_size: usize, config: &PipelineConfig) -> Result<(EmbeddingModel, TrainReport)> {
    w2v::train(corpus, vocab_size, &config.train_config(), config.train_seed())
}

/// Dedicated pool sized to `workers`.
pub fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config("workers", e.to_string()))
}

/// Everything a finished run leaves behind in memory.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub vocab: Vocabulary,
    pub model: EmbeddingModel,
    pub report: TrainReport,
    pub corpus: CorpusSummary,
    pub timings: Timings,
}

/// The pipeline handle: configure once, then `load_data` and `fit_transform`.
#[derive(Debug, Clone)]
pub struct Rdf2Vec {
    config: PipelineConfig,
    last: Option<FitResult>,
}

impl Rdf2Vec {
    pub fn new(config: PipelineConfig) -> Result<Self> {
        config.validate()?;
        Ok(Rdf2Vec { config, last: None })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    /// Result of the most recent [`Rdf2Vec::fit_transform`].
    pub fn last_fit(&self) -> Option<&FitResult> {
        self.last.as_ref()
    }

    /// Tokenize `path`. Tabular formats are read without a header; use
    /// [`load_data`] for full control.
    pub fn load_data(&self, path: impl AsRef<Path>, format: InputFormat) -> Result<EdgeData> {
        load_data(path.as_ref(), format, self.config.include_literals, ReadOptions::default()).map_err(|e| e.in_stage("load"))
    }

    /// Build the graph, extract walks from `walk_vertices` (all entities when
    /// `None`), train, and return the input-side embedding table.
    pub fn fit_transform(&mut self, data: &EdgeData, walk_vertices: Option<&[&str]>) -> Result<Embeddings> {
        if data.edges.is_empty() {
            return Err(Error::EmptyGraph.in_stage("graph"));
        }
        let pool = thread_pool(self.config.workers)?;
        let started = Instant::now();
        let graph = data.graph().map_err(|e| e.in_stage("graph"))?;
        let roots = resolve_roots(data, walk_vertices).map_err(|e| e.in_stage("walks"))?;

        let t0 = Instant::now();
        let (corpus, _) = pool
            .install(|| extract_walks(&graph, &roots, &self.config))
            .map_err(|e| e.in_stage("walks"))?;
        let walks_s = t0.elapsed().as_secs_f64();

        let mut vocab = data.vocab.clone();
        vocab.set_frequency(corpus.frequencies(vocab.len()));

        let t1 = Instant::now();
        let (model, report) = pool
            .install(|| train_embeddings(&corpus, vocab.len(), &self.config))
            .map_err(|e| e.in_stage("train"))?;
        let train_s = t1.elapsed().as_secs_f64();

        let embeddings = Embeddings::from_model(&vocab, &model);
        self.last = Some(FitResult {
            vocab,
            model,
            report,
            corpus: CorpusSummary { walks: corpus.len(), tokens: corpus.total_tokens() },
            timings: Timings { walks_s, train_s, total_s: started.elapsed().as_secs_f64() },
        });
        Ok(embeddings)
    }

    /// Write artifacts of the last fit to `out_dir`; a no-op returning empty
    /// artifacts when `generate_artifact` is off or nothing was fitted.
    pub fn save_artifacts(&self, out_dir: impl AsRef<Path>, source: Option<&InputSource>) -> Result<RunArtifacts> {
        match &self.last {
            Some(fit) => save_artifacts(&fit.model, &fit.vocab, &fit.report, &self.config, out_dir.as_ref(), |m| {
                m.input = source.cloned();
                m.corpus = Some(fit.corpus.clone());
                m.timings = Some(fit.timings.clone());
            }),
            None => Ok(RunArtifacts::default()),
        }
    }

    /// Configuration and input recorded in a manifest, for replaying a run.
    pub fn from_manifest(path: impl AsRef<Path>) -> Result<(Self, Option<InputSource>)> {
        let manifest = RunManifest::load(path.as_ref())?;
        Ok((Rdf2Vec::new(manifest.config)?, manifest.input))
    }
}
