//! Batch sizing under a memory budget.

use serde::Serialize;

use super::ModelKind;

/// First-pass batch size: the smaller of "budget over four times the
/// per-sample footprint" and one twentieth of the training instances, never
/// below 1.
pub fn suggest_batch_size(per_sample_bytes: u64, memory_budget_bytes: u64, corpus_pair_count: u64) -> u64 {
    assert!(per_sample_bytes > 0, "per-sample footprint must be positive");
    let by_memory = memory_budget_bytes / (4 * per_sample_bytes);
    let by_corpus = corpus_pair_count.div_ceil(20);
    by_memory.min(by_corpus).max(1)
}

/// Bytes one training instance occupies while a batch is processed: gathered
/// rows plus their gradients (f64), plus the token indices.
pub fn per_sample_bytes(kind: ModelKind, dim: usize, negatives: usize, window: usize) -> u64 {
    let rows = match kind {
        ModelKind::SkipGram => 2 + negatives,
        ModelKind::Cbow => 2 * window + 1 + negatives,
    } as u64;
    rows * dim as u64 * 16 + rows * 4
}

/// Resident bytes independent of batch size: both embedding tables plus the
/// two Adam moment tables per side, for every worker.
pub fn model_bytes(vocab_size: usize, dim: usize, workers: usize) -> u64 {
    let table = (vocab_size * dim * 8) as u64;
    2 * table + 4 * table * workers.max(1) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemoryEvent {
    pub from_batch: usize,
    pub to_batch: usize,
    pub projected_bytes: u64,
    pub cap_bytes: u64,
}

/// Halve `batch` while the projected footprint exceeds `cap_fraction` of the
/// budget. Stops at 1 rather than failing.
pub fn fit_to_memory(
    mut batch: usize,
    per_sample: u64,
    fixed_bytes: u64,
    budget: u64,
    cap_fraction: f64,
) -> (usize, Vec<MemoryEvent>) {
    let cap_bytes = (budget as f64 * cap_fraction) as u64;
    let mut events = Vec::new();
    loop {
        let projected = fixed_bytes.saturating_add(per_sample.saturating_mul(batch as u64));
        if projected <= cap_bytes || batch <= 1 {
            return (batch.max(1), events);
        }
        let to = batch / 2;
        log::warn!("projected memory {projected} B exceeds cap {cap_bytes} B, batch {batch} -> {to}");
        events.push(MemoryEvent { from_batch: batch, to_batch: to, projected_bytes: projected, cap_bytes });
        batch = to;
    }
}
