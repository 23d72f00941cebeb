//! On-disk run outputs and the run manifest.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::PipelineConfig;
use crate::ingest::{InputFormat, Vocabulary};
use crate::w2v::{read_word2vec, write_embeddings_tsv, write_loss_csv, write_word2vec, EmbeddingModel, Matrix, MemoryEvent, TrainReport};
use crate::{Error, Result};

pub const EMBEDDINGS_FILE: &str = "embeddings.txt";
pub const EMBEDDINGS_TSV_FILE: &str = "embeddings.tsv";
pub const VOCAB_FILE: &str = "vocab.tsv";
pub const LOSS_FILE: &str = "loss.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

const BATCH_SIZE_NOTE: &str =
    "batch_size=auto resolves to min(memory_budget / (4 * per_sample_bytes), ceil(instances / 20)), halved while over the memory cap";

/// Paths written by [`save_artifacts`]; all `None` when nothing was written.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunArtifacts {
    pub embeddings: Option<PathBuf>,
    pub embeddings_tsv: Option<PathBuf>,
    pub vocabulary: Option<PathBuf>,
    pub loss_trace: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
}

impl RunArtifacts {
    pub fn is_empty(&self) -> bool {
        *self == RunArtifacts::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSource {
    pub path: PathBuf,
    pub format: InputFormat,
    pub has_header: bool,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub walks: usize,
    pub tokens: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub walks_s: f64,
    pub train_s: f64,
    pub total_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainSummary {
    pub epoch_losses: Vec<f64>,
    pub suggested_batch_size: usize,
    pub batch_size: usize,
    pub batches_per_epoch: usize,
    pub instances: usize,
    pub memory_events: Vec<MemoryEventRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryEventRecord {
    pub from_batch: usize,
    pub to_batch: usize,
    pub projected_bytes: u64,
    pub cap_bytes: u64,
}

impl From<&MemoryEvent> for MemoryEventRecord {
    fn from(e: &MemoryEvent) -> Self {
        MemoryEventRecord {
            from_batch: e.from_batch,
            to_batch: e.to_batch,
            projected_bytes: e.projected_bytes,
            cap_bytes: e.cap_bytes,
        }
    }
}

/// Machine-readable record of a run: enough to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: PipelineConfig,
    pub walk_seed: u64,
    pub train_seed: u64,
    pub memory_budget_bytes: u64,
    pub vocab_size: usize,
    pub input: Option<InputSource>,
    pub corpus: Option<CorpusSummary>,
    pub train: TrainSummary,
    pub timings: Option<Timings>,
    pub notes: Vec<String>,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_reader(BufReader::new(file))
            .map_err(|e| Error::Format { what: "manifest", message: e.to_string() })
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

/// Write embeddings (word2vec text and TSV), vocabulary, loss trace and
/// manifest into `out_dir`. `annotate` can fill in the optional manifest
/// fields. Does nothing unless `config.generate_artifact` is set.
pub fn save_artifacts(
    model: &EmbeddingModel,
    vocab: &Vocabulary,
    report: &TrainReport,
    config: &PipelineConfig,
    out_dir: &Path,
    annotate: impl FnOnce(&mut RunManifest),
) -> Result<RunArtifacts> {
    if !config.generate_artifact {
        return Ok(RunArtifacts::default());
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let paths = RunArtifacts {
        embeddings: Some(out_dir.join(EMBEDDINGS_FILE)),
        embeddings_tsv: Some(out_dir.join(EMBEDDINGS_TSV_FILE)),
        vocabulary: Some(out_dir.join(VOCAB_FILE)),
        loss_trace: Some(out_dir.join(LOSS_FILE)),
        manifest: Some(out_dir.join(MANIFEST_FILE)),
    };
    let io_err = |p: &Path| {
        let p = p.to_path_buf();
        move |e| Error::io(p, e)
    };

    let p = paths.embeddings.as_deref().unwrap();
    let mut w = create(p)?;
    write_word2vec(vocab.lexicals(), &model.input, &mut w).and_then(|_| w.flush()).map_err(io_err(p))?;

    let p = paths.embeddings_tsv.as_deref().unwrap();
    let mut w = create(p)?;
    write_embeddings_tsv(vocab.lexicals(), &model.input, &mut w).and_then(|_| w.flush()).map_err(io_err(p))?;

    let p = paths.vocabulary.as_deref().unwrap();
    let mut w = create(p)?;
    vocab.write_tsv(&mut w).and_then(|_| w.flush()).map_err(io_err(p))?;

    let p = paths.loss_trace.as_deref().unwrap();
    let mut w = create(p)?;
    write_loss_csv(&report.epoch_losses, &mut w).and_then(|_| w.flush()).map_err(io_err(p))?;

    let mut manifest = RunManifest {
        config: config.clone(),
        walk_seed: config.walk_seed(),
        train_seed: config.train_seed(),
        memory_budget_bytes: config.memory_budget(),
        vocab_size: vocab.len(),
        input: None,
        corpus: None,
        train: TrainSummary {
            epoch_losses: report.epoch_losses.clone(),
            suggested_batch_size: report.suggested_batch_size,
            batch_size: report.batch_size,
            batches_per_epoch: report.batches_per_epoch,
            instances: report.instances,
            memory_events: report.memory_events.iter().map(Into::into).collect(),
        },
        timings: None,
        notes: if config.batch_size.is_none() { vec![BATCH_SIZE_NOTE.to_string()] } else { Vec::new() },
    };
    annotate(&mut manifest);
    let p = paths.manifest.as_deref().unwrap();
    let mut w = create(p)?;
    serde_json::to_writer_pretty(&mut w, &manifest)
        .map_err(|e| Error::Format { what: "manifest", message: e.to_string() })?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(io_err(p))?;
    Ok(paths)
}

/// Read a word2vec text file written by [`save_artifacts`].
pub fn load_embeddings(path: &Path) -> Result<(Vec<String>, Matrix)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_word2vec(BufReader::new(file))
}
