use serde::{Deserialize, Serialize};

use crate::w2v::{ModelKind, TrainConfig, DEFAULT_MEMORY_BUDGET};
use crate::walks::{Projection, WalkStrategy};
use crate::{Error, Result};

/// Environment variable overriding the default memory budget, in bytes.
pub const MEMORY_BUDGET_ENV: &str = "RDF2VEC_MEMORY_BUDGET";

/// Every knob of a run. Defaults mirror the reference Python constructor:
/// random walks of depth 5, 100 walks per vertex, skip-gram for 5 epochs,
/// 100 dimensions, window 5, min_count 10, learning rate 0.01, 5 negatives,
/// seed 42.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub walk_strategy: WalkStrategy,
    pub walk_depth: usize,
    /// Walks per root; ignored by BFS.
    pub walk_number: usize,
    pub embedding_model: ModelKind,
    pub epochs: usize,
    pub batch_size: Option<usize>,
    pub vector_size: usize,
    pub window_size: usize,
    pub min_count: u64,
    pub learning_rate: f64,
    pub negative_samples: usize,
    pub random_state: u64,
    pub reproducible: bool,
    /// Threads for walk extraction and trainer workers.
    pub workers: usize,
    pub generate_artifact: bool,
    pub projection: Projection,
    pub duplicate_free: bool,
    pub include_literals: bool,
    pub use_sparse: bool,
    pub sync_interval_ms: u64,
    /// `None` reads [`MEMORY_BUDGET_ENV`], then falls back to 4 GiB.
    pub memory_budget_bytes: Option<u64>,
    pub memory_cap_fraction: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            walk_strategy: WalkStrategy::Random,
            walk_depth: 5,
            walk_number: 100,
            embedding_model: ModelKind::SkipGram,
            epochs: 5,
            batch_size: None,
            vector_size: 100,
            window_size: 5,
            min_count: 10,
            learning_rate: 0.01,
            negative_samples: 5,
            random_state: 42,
            reproducible: false,
            workers: 1,
            generate_artifact: false,
            projection: Projection::Full,
            duplicate_free: false,
            include_literals: false,
            use_sparse: true,
            sync_interval_ms: 500,
            memory_budget_bytes: None,
            memory_cap_fraction: 0.9,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        let at_least_one = [
            ("walk_depth", self.walk_depth),
            ("walk_number", self.walk_number),
            ("epochs", self.epochs),
            ("vector_size", self.vector_size),
            ("window_size", self.window_size),
            ("negative_samples", self.negative_samples),
            ("workers", self.workers),
        ];
        for (field, value) in at_least_one {
            if value == 0 {
                return Err(Error::config(field, "must be at least 1"));
            }
        }
        if self.walk_strategy == WalkStrategy::Bfs && self.walk_number != PipelineConfig::default().walk_number {
            log::warn!("walk_number is ignored by the bfs strategy");
        }
        self.train_config().validate()
    }

    pub fn memory_budget(&self) -> u64 {
        self.memory_budget_bytes
            .or_else(|| std::env::var(MEMORY_BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(DEFAULT_MEMORY_BUDGET)
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            model: self.embedding_model,
            epochs: self.epochs,
            vector_size: self.vector_size,
            window_size: self.window_size,
            negative_samples: self.negative_samples,
            learning_rate: self.learning_rate,
            min_count: self.min_count,
            batch_size: self.batch_size,
            sync_interval_ms: self.sync_interval_ms,
            memory_budget_bytes: self.memory_budget(),
            memory_cap_fraction: self.memory_cap_fraction,
            use_sparse: self.use_sparse,
            workers: self.workers,
            reproducible: self.reproducible,
        }
    }

    /// Seed for walk extraction.
    pub fn walk_seed(&self) -> u64 {
        self.random_state
    }

    /// Seed for embedding initialization and training, decorrelated from the
    /// walk streams.
    pub fn train_seed(&self) -> u64 {
        splitmix64(self.random_state ^ 0x7261_6e64_7472_6e00)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_constructor_example() {
        let c = PipelineConfig::default();
        assert_eq!(c.walk_strategy, WalkStrategy::Random);
        assert_eq!((c.walk_depth, c.walk_number, c.epochs, c.vector_size), (5, 100, 5, 100));
        assert_eq!((c.window_size, c.min_count, c.negative_samples, c.random_state), (5, 10, 5, 42));
        assert_eq!(c.learning_rate, 0.01);
        assert_eq!(c.batch_size, None);
        assert!(!c.reproducible && !c.generate_artifact);
        c.validate().unwrap();
    }

    #[test]
    fn validation_names_the_field() {
        let c = PipelineConfig { walk_depth: 0, ..Default::default() };
        assert!(matches!(c.validate(), Err(Error::Config { field: "walk_depth", .. })));
        let c = PipelineConfig { memory_cap_fraction: 1.5, ..Default::default() };
        assert!(matches!(c.validate(), Err(Error::Config { field: "memory_cap_fraction", .. })));
    }

    #[test]
    fn unknown_strategy_rejected_on_deserialize() {
        let err = serde_json::from_str::<PipelineConfig>(r#"{"walk_strategy": "dfs"}"#).unwrap_err();
        assert!(err.to_string().contains("dfs"));
        let ok: PipelineConfig = serde_json::from_str(r#"{"walk_strategy": "bfs", "epochs": 2}"#).unwrap();
        assert_eq!(ok.walk_strategy, WalkStrategy::Bfs);
        assert_eq!(ok.epochs, 2);
    }

    #[test]
    fn explicit_budget_wins() {
        let c = PipelineConfig { memory_budget_bytes: Some(123), ..Default::default() };
        assert_eq!(c.memory_budget(), 123);
    }
}
