//! Timed pipeline runs over generator × configuration cells.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::GeneratorSpec;
use crate::pipeline::{extract_walks, resolve_roots, thread_pool, train_embeddings, EdgeData, Embeddings, PipelineConfig};
use crate::{Error, Result};

/// Wall-clock seconds of one repeat. A timed-out run has no train/total time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunTiming {
    pub seed: u64,
    pub walk_s: f64,
    pub train_s: Option<f64>,
    pub total_s: Option<f64>,
    pub timed_out: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellReport {
    pub graph: GeneratorSpec,
    pub config: PipelineConfig,
    pub runs: Vec<RunTiming>,
}

/// Mean and sample standard deviation; the deviation is 0 for one sample.
fn mean_std(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let std = if xs.len() < 2 {
        0.0
    } else {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    Some((mean, std))
}

impl CellReport {
    /// `None` when every repeat timed out.
    pub fn walk_stats(&self) -> Option<(f64, f64)> {
        mean_std(&self.completed().map(|r| r.walk_s).collect::<Vec<_>>())
    }

    pub fn train_stats(&self) -> Option<(f64, f64)> {
        mean_std(&self.completed().filter_map(|r| r.train_s).collect::<Vec<_>>())
    }

    pub fn total_stats(&self) -> Option<(f64, f64)> {
        mean_std(&self.completed().filter_map(|r| r.total_s).collect::<Vec<_>>())
    }

    pub fn timed_out(&self) -> bool {
        self.runs.iter().all(|r| r.timed_out)
    }

    fn completed(&self) -> impl Iterator<Item = &RunTiming> {
        self.runs.iter().filter(|r| !r.timed_out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub repeats: usize,
    pub timeout_s: f64,
    pub cells: Vec<CellReport>,
}

impl BenchReport {
    /// One row per repeat.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "graph,model,n,strategy,walk_depth,walk_number,epochs,repeat,seed,walk_s,train_s,total_s,timed_out")?;
        for cell in &self.cells {
            for (i, r) in cell.runs.iter().enumerate() {
                let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{:.6},{},{},{}",
                    cell.graph.label(),
                    serde_json::to_value(cell.graph.model).unwrap().as_str().unwrap_or(""),
                    cell.graph.n,
                    serde_json::to_value(cell.config.walk_strategy).unwrap().as_str().unwrap_or(""),
                    cell.config.walk_depth,
                    cell.config.walk_number,
                    cell.config.epochs,
                    i + 1,
                    r.seed,
                    r.walk_s,
                    opt(r.train_s),
                    opt(r.total_s),
                    r.timed_out
                )?;
            }
        }
        Ok(())
    }

    /// Human-readable summary; `∅` marks cells where every run timed out.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<22} {:>6} {:>6} {:>6} {:>20} {:>20} {:>20}",
            "graph", "depth", "walks", "epochs", "walk s (mean±sd)", "train s (mean±sd)", "total s (mean±sd)"
        );
        let fmt = |s: Option<(f64, f64)>| match s {
            Some((m, sd)) => format!("{m:.3}±{sd:.3}"),
            None => "∅".to_string(),
        };
        for cell in &self.cells {
            let dead = cell.timed_out();
            let _ = writeln!(
                out,
                "{:<22} {:>6} {:>6} {:>6} {:>20} {:>20} {:>20}",
                cell.graph.label(),
                cell.config.walk_depth,
                cell.config.walk_number,
                cell.config.epochs,
                if dead { "∅".into() } else { fmt(cell.walk_stats()) },
                if dead { "∅".into() } else { fmt(cell.train_stats()) },
                if dead { "∅".into() } else { fmt(cell.total_stats()) },
            );
        }
        out
    }
}

/// A benchmark suite as stored on disk (TOML):
///
/// ```toml
/// repeats = 3
/// timeout_s = 600
///
/// [[graph]]
/// model = "barabasi"
/// n = 1000
///
/// [[pipeline]]
/// walk_depth = 4
/// walk_number = 10
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchFile {
    #[serde(default = "one")]
    pub repeats: usize,
    #[serde(default = "four_hours")]
    pub timeout_s: f64,
    #[serde(rename = "graph")]
    pub graphs: Vec<GeneratorSpec>,
    #[serde(rename = "pipeline", default)]
    pub pipelines: Vec<PipelineConfig>,
}

fn one() -> usize {
    1
}

fn four_hours() -> f64 {
    4.0 * 3600.0
}

impl BenchFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut file: BenchFile =
            toml::from_str(text).map_err(|e| Error::Format { what: "bench suite", message: e.to_string() })?;
        if file.pipelines.is_empty() {
            file.pipelines.push(PipelineConfig::default());
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn run(&self) -> Result<BenchReport> {
        run_benchmark(&self.graphs, &self.pipelines, self.repeats, self.timeout_s)
    }
}

/// One timed pipeline run. Returns the timing and, unless the run timed out,
/// the embeddings, which are exactly those of a direct run with the same
/// config.
pub fn run_cell_once(data: &EdgeData, config: &PipelineConfig, timeout_s: f64) -> Result<(RunTiming, Option<Embeddings>)> {
    let pool = thread_pool(config.workers)?;
    let graph = data.graph()?;
    let roots = resolve_roots(data, None)?;
    let started = Instant::now();
    let (corpus, _) = pool.install(|| extract_walks(&graph, &roots, config))?;
    let walk_s = started.elapsed().as_secs_f64();
    if walk_s > timeout_s {
        return Ok((
            RunTiming { seed: config.random_state, walk_s, train_s: None, total_s: None, timed_out: true },
            None,
        ));
    }
    let t1 = Instant::now();
    let (model, _) = pool.install(|| train_embeddings(&corpus, data.vocab.len(), config))?;
    let train_s = t1.elapsed().as_secs_f64();
    let total_s = started.elapsed().as_secs_f64();
    let timed_out = total_s > timeout_s;
    let mut vocab = data.vocab.clone();
    vocab.set_frequency(corpus.frequencies(vocab.len()));
    Ok((
        RunTiming { seed: config.random_state, walk_s, train_s: Some(train_s), total_s: Some(total_s), timed_out },
        (!timed_out).then(|| Embeddings::from_model(&vocab, &model)),
    ))
}

/// Run every generator × config cell `repeats` times, strictly one after
/// another. Repeat `r` uses `random_state + r`. Runs over `timeout_s` are
/// recorded as timed out rather than failing.
pub fn run_benchmark(
    graphs: &[GeneratorSpec],
    configs: &[PipelineConfig],
    repeats: usize,
    timeout_s: f64,
) -> Result<BenchReport> {
    if repeats == 0 {
        return Err(Error::config("repeats", "must be at least 1"));
    }
    let mut cells = Vec::new();
    for spec in graphs {
        let data = EdgeData::from_triples(&spec.triples()?, false)?;
        for config in configs {
            config.validate()?;
            let mut runs = Vec::with_capacity(repeats);
            for r in 0..repeats {
                let cfg = PipelineConfig { random_state: config.random_state.wrapping_add(r as u64), ..config.clone() };
                let (timing, _) = run_cell_once(&data, &cfg, timeout_s)?;
                log::info!("{} repeat {}: {:?}", spec.label(), r + 1, timing);
                runs.push(timing);
            }
            cells.push(CellReport { graph: spec.clone(), config: config.clone(), runs });
        }
    }
    Ok(BenchReport { repeats, timeout_s, cells })
}
