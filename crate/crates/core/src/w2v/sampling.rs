use rand::Rng;

use crate::Token;

/// `count` tokens drawn i.i.d. uniformly from `0..vocab_size`.
pub fn sample_negatives<R: Rng + ?Sized>(count: usize, vocab_size: usize, rng: &mut R) -> Vec<Token> {
    assert!(vocab_size >= 1, "cannot sample from an empty vocabulary");
    (0..count).map(|_| rng.random_range(0..vocab_size) as Token).collect()
}

/// Uniform noise distribution over the tokens that survived `min_count`.
#[derive(Debug, Clone)]
pub struct NegativeSampler {
    survivors: Vec<Token>,
}

impl NegativeSampler {
    pub fn new(keep: &[bool]) -> Self {
        let survivors: Vec<Token> = (0..keep.len() as Token).filter(|&t| keep[t as usize]).collect();
        assert!(!survivors.is_empty(), "negative sampler needs at least one token");
        NegativeSampler { survivors }
    }

    pub fn len(&self) -> usize {
        self.survivors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.survivors.is_empty()
    }

    pub fn fill<R: Rng + ?Sized>(&self, out: &mut Vec<Token>, count: usize, rng: &mut R) {
        out.clear();
        out.extend(
            sample_negatives(count, self.survivors.len(), rng)
                .into_iter()
                .map(|i| self.survivors[i as usize]),
        );
    }
}
