//! Walk extraction.
//!
//! A full walk alternates entity and predicate tokens and starts and ends on
//! an entity: `[e0, p0, e1, p1, e2, ...]`. Depth counts hops, so a full walk
//! of depth `d` has at most `2d + 1` tokens.

mod bfs;
mod io;
mod random;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Token};

pub use bfs::{bfs_walks, PathRow, PathTable};
pub use io::{read_corpus_binary, write_corpus_binary, write_corpus_text};
pub use random::{random_walks, SHARD_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WalkStrategy {
    #[default]
    Random,
    Bfs,
}

impl FromStr for WalkStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(WalkStrategy::Random),
            "bfs" => Ok(WalkStrategy::Bfs),
            other => Err(Error::config("walk_strategy", format!("unknown strategy `{other}` (expected random or bfs)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    #[default]
    Full,
    /// Entities only (e-walks).
    Entity,
    /// Start entity followed by the predicates (p-walks).
    Property,
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Projection::Full),
            "entity" => Ok(Projection::Entity),
            "property" => Ok(Projection::Property),
            other => Err(Error::config("projection", format!("unknown projection `{other}`"))),
        }
    }
}

/// An owned walk with its id in the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub walk_id: usize,
    pub tokens: Vec<Token>,
}

/// Drop predicate tokens: `[a, p, b, q, c]` becomes `[a, b, c]`.
pub fn project_entity(walk: &Walk) -> Walk {
    Walk { walk_id: walk.walk_id, tokens: entity_tokens(&walk.tokens).collect() }
}

/// Keep the start entity and the predicates: `[a, p, b, q, c]` becomes `[a, p, q]`.
pub fn project_property(walk: &Walk) -> Walk {
    Walk { walk_id: walk.walk_id, tokens: property_tokens(&walk.tokens).collect() }
}

fn entity_tokens(tokens: &[Token]) -> impl Iterator<Item = Token> + '_ {
    tokens.iter().step_by(2).copied()
}

fn property_tokens(tokens: &[Token]) -> impl Iterator<Item = Token> + '_ {
    tokens.first().copied().into_iter().chain(tokens.iter().skip(1).step_by(2).copied())
}

/// Flat storage for variable-length walks; walk `i` is
/// `tokens[offsets[i]..offsets[i + 1]]` and its id is `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCorpus {
    tokens: Vec<Token>,
    offsets: Vec<usize>,
    pub strategy: WalkStrategy,
    pub projection: Projection,
}

impl WalkCorpus {
    pub fn new(strategy: WalkStrategy) -> Self {
        WalkCorpus { tokens: Vec::new(), offsets: vec![0], strategy, projection: Projection::Full }
    }

    pub fn from_walks<I, W>(strategy: WalkStrategy, walks: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[Token]>,
    {
        let mut c = WalkCorpus::new(strategy);
        for w in walks {
            c.push(w.as_ref());
        }
        c
    }

    pub fn push(&mut self, walk: &[Token]) {
        self.tokens.extend_from_slice(walk);
        self.offsets.push(self.tokens.len());
    }

    pub(crate) fn reserve(&mut self, tokens: usize, walks: usize) {
        self.tokens.reserve(tokens);
        self.offsets.reserve(walks);
    }

    pub(crate) fn append(&mut self, tokens: &[Token], lengths: &[usize]) {
        self.tokens.extend_from_slice(tokens);
        let mut end = *self.offsets.last().unwrap();
        for &len in lengths {
            end += len;
            self.offsets.push(end);
        }
        debug_assert_eq!(end, self.tokens.len());
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_tokens(&self) -> usize {
        self.tokens.len()
    }

    pub fn walk(&self, i: usize) -> &[Token] {
        &self.tokens[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn walks(&self) -> impl ExactSizeIterator<Item = &[Token]> + '_ {
        self.offsets.windows(2).map(move |w| &self.tokens[w[0]..w[1]])
    }

    pub fn to_walks(&self) -> Vec<Walk> {
        self.walks()
            .enumerate()
            .map(|(walk_id, t)| Walk { walk_id, tokens: t.to_vec() })
            .collect()
    }

    /// Apply a projection to every walk. Projecting an already projected
    /// corpus is rejected since the entity/predicate alternation is gone.
    pub fn project(&self, projection: Projection) -> Result<WalkCorpus> {
        if projection == Projection::Full {
            return Ok(self.clone());
        }
        if self.projection != Projection::Full {
            return Err(Error::config("projection", "corpus is already projected"));
        }
        let mut out = WalkCorpus::new(self.strategy);
        out.projection = projection;
        for w in self.walks() {
            out.tokens.extend(match projection {
                Projection::Entity => Box::new(entity_tokens(w)) as Box<dyn Iterator<Item = Token>>,
                Projection::Property => Box::new(property_tokens(w)),
                Projection::Full => unreachable!(),
            });
            out.offsets.push(out.tokens.len());
        }
        Ok(out)
    }

    /// Occurrence count of every token `< vocab_size`.
    pub fn frequencies(&self, vocab_size: usize) -> Vec<u64> {
        let mut freq = vec![0u64; vocab_size];
        for &t in &self.tokens {
            freq[t as usize] += 1;
        }
        freq
    }
}

pub(crate) fn check_walk_params(depth: usize, roots: &[Token], vertex_count: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::config("walk_depth", "must be at least 1"));
    }
    if roots.is_empty() {
        return Err(Error::config("walk_vertices", "no start vertices"));
    }
    if let Some(&bad) = roots.iter().find(|&&r| r as usize >= vertex_count) {
        return Err(Error::VertexOutOfRange { vertex: bad as u64, bound: vertex_count });
    }
    Ok(())
}
