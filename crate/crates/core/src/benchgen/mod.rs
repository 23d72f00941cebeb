//! Synthetic labeled graphs and a wall-clock benchmark harness.

mod bench;
mod generators;

use serde::{Deserialize, Serialize};

use crate::ingest::Triple;
use crate::{Error, Result};

pub use bench::{run_benchmark, run_cell_once, BenchFile, BenchReport, CellReport, RunTiming};
pub use generators::{
    assign_predicates, gen_barabasi, gen_erdos_renyi, gen_uniform_attachment, non_isolated_count, Edge,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphModel {
    Barabasi,
    ErdosRenyi,
    UniformAttachment,
}

/// A synthetic graph recipe. `p` is used by Erdős–Rényi, `m` by the two
/// growth models; when `m` is unset it defaults to 1 for Barabási–Albert and
/// 10 for uniform attachment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub model: GraphModel,
    pub n: usize,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default = "default_predicates")]
    pub predicate_set_size: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_p() -> f64 {
    0.4
}

fn default_predicates() -> usize {
    10
}

impl GeneratorSpec {
    pub fn new(model: GraphModel, n: usize) -> Self {
        GeneratorSpec { model, n, p: default_p(), m: None, predicate_set_size: default_predicates(), seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn edges_per_vertex(&self) -> usize {
        self.m.unwrap_or(match self.model {
            GraphModel::Barabasi => 1,
            GraphModel::ErdosRenyi => 0,
            GraphModel::UniformAttachment => 10,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config("n", "must be at least 2"));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::config("p", "must be in (0, 1)"));
        }
        if self.model != GraphModel::ErdosRenyi && self.edges_per_vertex() == 0 {
            return Err(Error::config("m", "must be at least 1"));
        }
        if self.predicate_set_size == 0 {
            return Err(Error::config("predicate_set_size", "must be at least 1"));
        }
        Ok(())
    }

    /// Short label such as `barabasi-1000`.
    pub fn label(&self) -> String {
        let name = match self.model {
            GraphModel::Barabasi => "barabasi",
            GraphModel::ErdosRenyi => "erdos_renyi",
            GraphModel::UniformAttachment => "uniform",
        };
        format!("{name}-{}", self.n)
    }

    pub fn edges(&self) -> Result<Vec<Edge>> {
        self.validate()?;
        Ok(match self.model {
            GraphModel::Barabasi => gen_barabasi(self.n, self.edges_per_vertex(), self.seed),
            GraphModel::ErdosRenyi => gen_erdos_renyi(self.n, self.p, self.seed),
            GraphModel::UniformAttachment => gen_uniform_attachment(self.n, self.edges_per_vertex(), self.seed),
        })
    }

    /// Generated edges with random predicates attached.
    pub fn triples(&self) -> Result<Vec<Triple>> {
        Ok(assign_predicates(&self.edges()?, self.predicate_set_size, self.seed))
    }
}
