//! Word2vec training on walk corpora: skip-gram and CBOW with uniform
//! negative sampling and sparse Adam updates.

mod batch;
mod export;
mod loss;
mod model;
mod optim;
mod pairs;
mod sampling;
mod train;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use batch::{fit_to_memory, model_bytes, per_sample_bytes, suggest_batch_size, MemoryEvent};
pub use export::{read_word2vec, write_embeddings_tsv, write_loss_csv, write_word2vec};
pub use loss::{
    cbow_batch_loss, cbow_loss_and_grad, sgns_batch_loss, sgns_loss_and_grad, RowGrads, SparseGrad,
};
pub use model::{init_embeddings, EmbeddingModel, Matrix, Rows, RowsMut, Side};
pub use optim::Adam;
pub use pairs::{filter_corpus, generate_pairs, surviving_mask, CbowInstance, CbowSet, TrainingPair};
pub use sampling::{sample_negatives, NegativeSampler};
pub use train::{train, TrainReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[default]
    SkipGram,
    Cbow,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "skipgram" | "sgns" => Ok(ModelKind::SkipGram),
            "cbow" => Ok(ModelKind::Cbow),
            other => Err(Error::config("embedding_model", format!("unknown model `{other}` (expected skipgram or cbow)"))),
        }
    }
}

pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub model: ModelKind,
    pub epochs: usize,
    pub vector_size: usize,
    /// Symmetric context radius. CBOW also draws this many negatives.
    pub window_size: usize,
    /// Negatives per skip-gram pair.
    pub negative_samples: usize,
    pub learning_rate: f64,
    pub min_count: u64,
    /// `None` picks one with [`suggest_batch_size`].
    pub batch_size: Option<usize>,
    pub sync_interval_ms: u64,
    pub memory_budget_bytes: u64,
    pub memory_cap_fraction: f64,
    pub use_sparse: bool,
    pub workers: usize,
    /// Sync multi-worker training on batch boundaries instead of wall clock.
    pub reproducible: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            model: ModelKind::SkipGram,
            epochs: 5,
            vector_size: 100,
            window_size: 5,
            negative_samples: 5,
            learning_rate: 0.01,
            min_count: 10,
            batch_size: None,
            sync_interval_ms: 500,
            memory_budget_bytes: DEFAULT_MEMORY_BUDGET,
            memory_cap_fraction: 0.9,
            use_sparse: true,
            workers: 1,
            reproducible: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::config("epochs", "must be at least 1"));
        }
        if self.vector_size == 0 {
            return Err(Error::config("vector_size", "must be at least 1"));
        }
        if self.window_size == 0 {
            return Err(Error::config("window_size", "must be at least 1"));
        }
        if !(self.memory_cap_fraction > 0.0 && self.memory_cap_fraction <= 1.0) {
            return Err(Error::config("memory_cap_fraction", "must be in (0, 1]"));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate >= 0.0) {
            return Err(Error::config("learning_rate", "must be finite and non-negative"));
        }
        if self.batch_size == Some(0) {
            return Err(Error::config("batch_size", "must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::config("workers", "must be at least 1"));
        }
        Ok(())
    }

    /// Negatives drawn per training instance.
    pub fn negatives_per_instance(&self) -> usize {
        match self.model {
            ModelKind::SkipGram => self.negative_samples,
            ModelKind::Cbow => self.window_size,
        }
    }
}
