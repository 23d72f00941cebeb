use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check_walk_params, WalkCorpus, WalkStrategy};
use crate::graph::Graph;
use crate::{Error, Result, Token, PAD};

/// Replicated work items per shard. Fixed so that output does not depend on
/// the number of worker threads.
pub const SHARD_LEN: usize = 1024;

/// Uniform random walks of at most `depth` hops.
///
/// Every root is replicated `walk_number` times into one flat work list
/// (root-major), which is cut into shards of [`SHARD_LEN`] items and walked in
/// parallel on the current rayon pool. Shard `s` draws from its own ChaCha8
/// stream `s` seeded with `seed`. A walk that reaches a vertex without
/// out-edges stops early; the padding is stripped before emission.
///
/// With `duplicate_free`, repeated token sequences from the same root are
/// dropped, keeping the first occurrence.
pub fn random_walks(
    graph: &Graph,
    roots: &[Token],
    depth: usize,
    walk_number: usize,
    seed: u64,
    duplicate_free: bool,
) -> Result<WalkCorpus> {
    check_walk_params(depth, roots, graph.vertex_count())?;
    if walk_number == 0 {
        return Err(Error::config("walk_number", "must be at least 1"));
    }
    let items = roots.len() * walk_number;
    let shard_count = items.div_ceil(SHARD_LEN);
    let shards: Vec<(Vec<Token>, Vec<usize>)> = (0..shard_count)
        .into_par_iter()
        .map(|s| {
            let lo = s * SHARD_LEN;
            let hi = (lo + SHARD_LEN).min(items);
            walk_shard(graph, (lo..hi).map(|i| roots[i / walk_number]), depth, seed, s as u64)
        })
        .collect();

    let all = merge_shards(shards);
    if !duplicate_free {
        return Ok(all);
    }

    let mut corpus = WalkCorpus::new(WalkStrategy::Random);
    let kept: Vec<Vec<usize>> = (0..roots.len())
        .into_par_iter()
        .map(|r| {
            let mut seen = HashSet::new();
            (r * walk_number..(r + 1) * walk_number)
                .filter(|&i| seen.insert(all.walk(i)))
                .collect()
        })
        .collect();
    for i in kept.into_iter().flatten() {
        corpus.push(all.walk(i));
    }
    Ok(corpus)
}

fn merge_shards(shards: Vec<(Vec<Token>, Vec<usize>)>) -> WalkCorpus {
    let mut corpus = WalkCorpus::new(WalkStrategy::Random);
    corpus.reserve(shards.iter().map(|s| s.0.len()).sum(), shards.iter().map(|s| s.1.len()).sum());
    for (tokens, lengths) in shards {
        corpus.append(&tokens, &lengths);
    }
    corpus
}

fn walk_shard(
    graph: &Graph,
    starts: impl Iterator<Item = Token>,
    depth: usize,
    seed: u64,
    shard: u64,
) -> (Vec<Token>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let width = 2 * depth + 1;
    let mut buf = vec![PAD; width];
    let mut tokens = Vec::new();
    let mut lengths = Vec::new();
    for start in starts {
        buf.fill(PAD);
        buf[0] = start as i64;
        let mut v = start;
        for hop in 0..depth {
            let (preds, targets) = graph.adjacency(v);
            if targets.is_empty() {
                break;
            }
            let k = rng.random_range(0..targets.len());
            buf[2 * hop + 1] = preds[k] as i64;
            buf[2 * hop + 2] = targets[k] as i64;
            v = targets[k];
        }
        let before = tokens.len();
        tokens.extend(buf.iter().filter(|&&t| t != PAD).map(|&t| t as Token));
        lengths.push(tokens.len() - before);
    }
    (tokens, lengths)
}
