//! Parallel RDF2vec: turn a knowledge graph into entity and predicate embeddings.
//!
//! The pipeline has four stages, each usable on its own:
//!
//! 1. [`ingest`] parses N-Triples or 3-column edge tables and assigns every
//!    entity and predicate a contiguous integer token.
//! 2. [`graph`] stores the tokenized multigraph in a CSR layout and computes
//!    summary statistics.
//! 3. [`walks`] extracts random walks (optionally duplicate-free) or BFS
//!    predecessor-tree walks, with entity and property projections.
//! 4. [`w2v`] trains skip-gram or CBOW embeddings with uniform negative
//!    sampling and sparse Adam updates.
//!
//! [`pipeline`] chains the stages behind a single [`pipeline::Rdf2Vec`]
//! handle, and [`benchgen`] generates synthetic labeled graphs and times the
//! pipeline on them.
//!
//! ```no_run
//! use rdf2vec::pipeline::{PipelineConfig, Rdf2Vec};
//! use rdf2vec::ingest::InputFormat;
//!
//! let mut model = Rdf2Vec::new(PipelineConfig::default()).unwrap();
//! let edges = model.load_data("graph.nt", InputFormat::NTriples).unwrap();
//! let embeddings = model.fit_transform(&edges, None).unwrap();
//! println!("{} vectors of dim {}", embeddings.len(), embeddings.dim());
//! ```

pub mod benchgen;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod pipeline;
pub mod walks;
pub mod w2v;

pub use error::{Error, Result};

/// Integer token assigned to an entity or predicate.
pub type Token = u32;

/// Filler for early-terminated positions inside fixed-length walk buffers.
/// Never a vocabulary token and never emitted in a corpus.
pub const PAD: i64 = -1;
