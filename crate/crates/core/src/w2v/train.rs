use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::batch::{fit_to_memory, model_bytes, per_sample_bytes, suggest_batch_size, MemoryEvent};
use super::loss::{cbow_loss_and_grad, sgns_loss_and_grad, SparseGrad};
use super::model::{init_embeddings, EmbeddingModel, Overlay, Rows, RowsMut};
use super::optim::Adam;
use super::pairs::{cbow_instances, filter_corpus, skipgram_pairs, surviving_mask, CbowInstance, CbowSet, TrainingPair};
use super::sampling::NegativeSampler;
use super::{ModelKind, TrainConfig};
use crate::walks::WalkCorpus;
use crate::{Error, Result, Token};

/// Batches each worker runs between merges when `reproducible` is set.
const REPRODUCIBLE_SYNC_BATCHES: usize = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainReport {
    /// Mean batch loss per epoch.
    pub epoch_losses: Vec<f64>,
    pub suggested_batch_size: usize,
    /// Batch size after the memory guard.
    pub batch_size: usize,
    pub memory_events: Vec<MemoryEvent>,
    pub instances: usize,
    pub batches_per_epoch: usize,
    /// Rounds of gradient exchange (multi-worker only).
    pub syncs: usize,
    /// Tokens whose rows received a gradient at least once.
    #[serde(skip)]
    pub touched: Vec<bool>,
}

enum Instances {
    Pairs(Vec<TrainingPair>),
    Cbow(CbowSet),
}

impl Instances {
    fn len(&self) -> usize {
        match self {
            Instances::Pairs(p) => p.len(),
            Instances::Cbow(c) => c.len(),
        }
    }
}

/// Per-batch scratch buffers.
struct Scratch<'a> {
    pairs: Vec<TrainingPair>,
    cbow: Vec<CbowInstance<'a>>,
    negatives: Vec<Token>,
    grad: SparseGrad,
}

impl<'a> Scratch<'a> {
    fn new(dim: usize) -> Self {
        Scratch { pairs: Vec::new(), cbow: Vec::new(), negatives: Vec::new(), grad: SparseGrad::new(dim) }
    }

    /// Loss of the batch at `indices`; leaves its gradient in `self.grad`.
    fn run<M: Rows + ?Sized>(
        &mut self,
        data: &'a Instances,
        indices: &[usize],
        model: &M,
        sampler: &NegativeSampler,
        k: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<f64> {
        sampler.fill(&mut self.negatives, indices.len() * k, rng);
        match data {
            Instances::Pairs(all) => {
                self.pairs.clear();
                self.pairs.extend(indices.iter().map(|&i| all[i]));
                Ok(sgns_loss_and_grad(model, &self.pairs, &self.negatives, k, &mut self.grad))
            }
            Instances::Cbow(set) => {
                self.cbow.clear();
                self.cbow.extend(indices.iter().map(|&i| set.get(i)));
                cbow_loss_and_grad(model, &self.cbow, &self.negatives, k, &mut self.grad)
            }
        }
    }

    fn mark_touched(&self, touched: &mut [bool]) {
        for (t, _) in self.grad.input.iter().chain(self.grad.output.iter()) {
            touched[t as usize] = true;
        }
    }
}

/// Train embeddings for a vocabulary of `vocab_size` tokens on `corpus`.
///
/// Tokens below `min_count` are removed from the walks before windowing; their
/// rows keep their initial values and are flagged in `trained_mask`. Each
/// epoch shuffles the instances, cuts them into batches and draws fresh
/// uniform negatives per batch.
///
/// With more than one worker, each epoch's shuffled instances are split into
/// one contiguous shard per worker. Workers update a private copy-on-write
/// view with their own Adam state and exchange the accumulated row deltas at
/// sync points: every `sync_interval_ms`, or every batch when `reproducible`
/// is set. Merges are applied in worker order.
pub fn train(
    corpus: &WalkCorpus,
    vocab_size: usize,
    config: &TrainConfig,
    seed: u64,
) -> Result<(EmbeddingModel, TrainReport)> {
    config.validate()?;
    if corpus.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let freq = corpus.frequencies(vocab_size);
    let keep = surviving_mask(&freq, config.min_count);
    let filtered = filter_corpus(corpus, &keep)?;
    let data = match config.model {
        ModelKind::SkipGram => Instances::Pairs(skipgram_pairs(&filtered, config.window_size)),
        ModelKind::Cbow => Instances::Cbow(cbow_instances(&filtered, config.window_size)),
    };
    drop(filtered);
    if data.len() == 0 {
        return Err(Error::EmptyTrainingSet);
    }

    let dim = config.vector_size;
    let k = config.negatives_per_instance();
    let per_sample = per_sample_bytes(config.model, dim, config.negative_samples, config.window_size);
    let suggested = match config.batch_size {
        Some(b) => b,
        None => suggest_batch_size(per_sample, config.memory_budget_bytes, data.len() as u64) as usize,
    };
    let (batch_size, memory_events) = fit_to_memory(
        suggested,
        per_sample,
        model_bytes(vocab_size, dim, config.workers),
        config.memory_budget_bytes,
        config.memory_cap_fraction,
    );

    let mut model = init_embeddings(vocab_size, dim, seed);
    model.trained_mask = keep.clone();
    let sampler = NegativeSampler::new(&keep);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);

    let mut report = TrainReport {
        epoch_losses: Vec::with_capacity(config.epochs),
        suggested_batch_size: suggested,
        batch_size,
        memory_events,
        instances: data.len(),
        batches_per_epoch: data.len().div_ceil(batch_size),
        syncs: 0,
        touched: vec![false; vocab_size],
    };
    let mut order: Vec<usize> = (0..data.len()).collect();

    if config.workers <= 1 {
        let mut adam = Adam::new(vocab_size, dim, config.learning_rate, config.use_sparse);
        let mut scratch = Scratch::new(dim);
        for epoch in 0..config.epochs {
            order.shuffle(&mut rng);
            let mut sum = 0.0;
            for (b, chunk) in order.chunks(batch_size).enumerate() {
                let loss = scratch.run(&data, chunk, &model, &sampler, k, &mut rng)?;
                if !loss.is_finite() {
                    return Err(Error::Divergence { epoch: epoch + 1, batch: b });
                }
                sum += loss;
                adam.step(&mut model, &scratch.grad);
                scratch.mark_touched(&mut report.touched);
            }
            report.epoch_losses.push(sum / report.batches_per_epoch as f64);
            log::debug!("epoch {} loss {:.6}", epoch + 1, report.epoch_losses[epoch]);
        }
        return Ok((model, report));
    }

    let mut workers: Vec<Worker> = (0..config.workers)
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(2 + w as u64);
            Worker {
                rng,
                adam: Adam::new(vocab_size, dim, config.learning_rate, config.use_sparse),
                cursor: 0,
                touched: Vec::new(),
            }
        })
        .collect();
    let sync = if config.reproducible {
        SyncPolicy::Batches(REPRODUCIBLE_SYNC_BATCHES)
    } else {
        SyncPolicy::Interval(Duration::from_millis(config.sync_interval_ms))
    };
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        let shard_len = order.len().div_ceil(config.workers);
        let shards: Vec<&[usize]> = (0..config.workers)
            .map(|w| {
                let lo = (w * shard_len).min(order.len());
                &order[lo..((w + 1) * shard_len).min(order.len())]
            })
            .collect();
        workers.iter_mut().for_each(|w| w.cursor = 0);
        let mut losses = Vec::new();
        loop {
            let snapshot = &model;
            let rounds: Vec<Result<RoundOutput>> = workers
                .par_iter_mut()
                .zip(&shards)
                .map(|(w, shard)| w.round(&data, shard, batch_size, snapshot, &sampler, k, sync, epoch))
                .collect();
            let mut any = false;
            for out in rounds {
                let out = out?;
                any |= !out.losses.is_empty();
                losses.extend(out.losses);
                for (side, t, delta) in out.deltas {
                    for (x, d) in model.row_mut(side, t).iter_mut().zip(delta) {
                        *x += d;
                    }
                }
            }
            if !any {
                break;
            }
            report.syncs += 1;
        }
        for w in &mut workers {
            for t in w.touched.drain(..) {
                report.touched[t as usize] = true;
            }
        }
        report.epoch_losses.push(losses.iter().sum::<f64>() / losses.len() as f64);
    }
    Ok((model, report))
}

#[derive(Debug, Clone, Copy)]
enum SyncPolicy {
    Batches(usize),
    Interval(Duration),
}

struct Worker {
    rng: ChaCha8Rng,
    adam: Adam,
    cursor: usize,
    touched: Vec<Token>,
}

struct RoundOutput {
    losses: Vec<f64>,
    deltas: Vec<(super::model::Side, Token, Vec<f64>)>,
}

impl Worker {
    #[allow(clippy::too_many_arguments)]
    fn round(
        &mut self,
        data: &Instances,
        shard: &[usize],
        batch_size: usize,
        base: &EmbeddingModel,
        sampler: &NegativeSampler,
        k: usize,
        sync: SyncPolicy,
        epoch: usize,
    ) -> Result<RoundOutput> {
        let mut view = Overlay::new(base);
        let mut scratch = Scratch::new(base.dim());
        let mut losses = Vec::new();
        let started = Instant::now();
        let batches = shard.len().div_ceil(batch_size);
        while self.cursor < batches {
            let lo = self.cursor * batch_size;
            let chunk = &shard[lo..(lo + batch_size).min(shard.len())];
            let loss = scratch.run(data, chunk, &view, sampler, k, &mut self.rng)?;
            if !loss.is_finite() {
                return Err(Error::Divergence { epoch: epoch + 1, batch: self.cursor });
            }
            losses.push(loss);
            self.adam.step(&mut view, &scratch.grad);
            self.touched.extend(scratch.grad.input.iter().chain(scratch.grad.output.iter()).map(|(t, _)| t));
            self.cursor += 1;
            let done = match sync {
                SyncPolicy::Batches(n) => losses.len() >= n,
                SyncPolicy::Interval(d) => started.elapsed() >= d,
            };
            if done {
                break;
            }
        }
        Ok(RoundOutput { losses, deltas: view.deltas() })
    }
}
