//! Turning a walk corpus into training instances.

use crate::walks::WalkCorpus;
use crate::{Error, Result, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrainingPair {
    pub center: Token,
    pub context: Token,
}

impl TrainingPair {
    pub fn new(center: Token, context: Token) -> Self {
        TrainingPair { center, context }
    }
}

/// One CBOW example: predict `target` from the surrounding window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CbowInstance<'a> {
    pub context: &'a [Token],
    pub target: Token,
}

/// Flat storage for CBOW instances.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CbowSet {
    contexts: Vec<Token>,
    offsets: Vec<usize>,
    targets: Vec<Token>,
}

impl CbowSet {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn get(&self, i: usize) -> CbowInstance<'_> {
        CbowInstance {
            context: &self.contexts[self.offsets[i]..self.offsets[i + 1]],
            target: self.targets[i],
        }
    }
}

/// Tokens whose corpus frequency is at least `min_count` (and nonzero).
pub fn surviving_mask(freq: &[u64], min_count: u64) -> Vec<bool> {
    freq.iter().map(|&f| f > 0 && f >= min_count).collect()
}

/// The corpus with sub-`min_count` tokens removed from every walk. Fails if
/// nothing survives.
pub fn filter_corpus(corpus: &WalkCorpus, keep: &[bool]) -> Result<WalkCorpus> {
    let mut out = WalkCorpus::new(corpus.strategy);
    out.projection = corpus.projection;
    let mut buf = Vec::new();
    for walk in corpus.walks() {
        buf.clear();
        buf.extend(walk.iter().copied().filter(|&t| keep[t as usize]));
        out.push(&buf);
    }
    if out.total_tokens() == 0 {
        return Err(Error::EmptyTrainingSet);
    }
    Ok(out)
}

/// Skip-gram pairs: for every position `i` and every `j != i` with
/// `|i - j| <= window`, the pair `(w[i], w[j])`, after dropping tokens below
/// `min_count`. Also returns the unfiltered frequency table.
pub fn generate_pairs(
    corpus: &WalkCorpus,
    vocab_size: usize,
    window: usize,
    min_count: u64,
) -> Result<(Vec<TrainingPair>, Vec<u64>)> {
    if corpus.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let freq = corpus.frequencies(vocab_size);
    let filtered = filter_corpus(corpus, &surviving_mask(&freq, min_count))?;
    Ok((skipgram_pairs(&filtered, window), freq))
}

pub(crate) fn skipgram_pairs(corpus: &WalkCorpus, window: usize) -> Vec<TrainingPair> {
    let mut pairs = Vec::new();
    for walk in corpus.walks() {
        for (i, &center) in walk.iter().enumerate() {
            let lo = i.saturating_sub(window);
            let hi = (i + window + 1).min(walk.len());
            for (j, &context) in walk.iter().enumerate().take(hi).skip(lo) {
                if j != i {
                    pairs.push(TrainingPair { center, context });
                }
            }
        }
    }
    pairs
}

/// CBOW instances over an already filtered corpus; positions without any
/// context token are skipped.
pub(crate) fn cbow_instances(corpus: &WalkCorpus, window: usize) -> CbowSet {
    let mut set = CbowSet { offsets: vec![0], ..Default::default() };
    for walk in corpus.walks() {
        for (i, &target) in walk.iter().enumerate() {
            let lo = i.saturating_sub(window);
            let hi = (i + window + 1).min(walk.len());
            if hi - lo <= 1 {
                continue;
            }
            set.contexts.extend(walk[lo..i].iter().chain(&walk[i + 1..hi]));
            set.offsets.push(set.contexts.len());
            set.targets.push(target);
        }
    }
    set
}
