use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Token;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Center / context-window vectors; this is the exported embedding table.
    Input,
    /// Context / target vectors scored against the input side.
    Output,
}

/// Read access to embedding rows.
pub trait Rows {
    fn dim(&self) -> usize;
    fn row(&self, side: Side, t: Token) -> &[f64];
}

/// Write access to embedding rows.
pub trait RowsMut: Rows {
    fn row_mut(&mut self, side: Side, t: Token) -> &mut [f64];
    fn vocab_size(&self) -> usize;
}

/// Paired input/output embedding tables of shape `vocab × dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    pub input: Matrix,
    pub output: Matrix,
    /// False for tokens filtered out by `min_count`; their rows are never
    /// updated.
    pub trained_mask: Vec<bool>,
}

impl EmbeddingModel {
    pub fn dim(&self) -> usize {
        self.input.cols()
    }

    pub fn vocab_size(&self) -> usize {
        self.input.rows()
    }

    pub fn matrix(&self, side: Side) -> &Matrix {
        match side {
            Side::Input => &self.input,
            Side::Output => &self.output,
        }
    }
}

impl Rows for EmbeddingModel {
    fn dim(&self) -> usize {
        self.input.cols()
    }

    #[inline]
    fn row(&self, side: Side, t: Token) -> &[f64] {
        self.matrix(side).row(t as usize)
    }
}

impl RowsMut for EmbeddingModel {
    #[inline]
    fn row_mut(&mut self, side: Side, t: Token) -> &mut [f64] {
        match side {
            Side::Input => self.input.row_mut(t as usize),
            Side::Output => self.output.row_mut(t as usize),
        }
    }

    fn vocab_size(&self) -> usize {
        self.input.rows()
    }
}

/// Both tables filled i.i.d. from the open interval `(-1/d, 1/d)`, input
/// table first, from one ChaCha8 stream seeded with `seed`.
pub fn init_embeddings(vocab_size: usize, dim: usize, seed: u64) -> EmbeddingModel {
    assert!(dim >= 1, "embedding dimension must be at least 1");
    let bound = 1.0 / dim as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fill = || {
        let data = (0..vocab_size * dim)
            .map(|_| loop {
                let x = rng.random_range(-bound..bound);
                if x != -bound {
                    break x;
                }
            })
            .collect();
        Matrix::from_vec(vocab_size, dim, data)
    };
    let input = fill();
    let output = fill();
    EmbeddingModel { input, output, trained_mask: vec![true; vocab_size] }
}

/// Copy-on-write view over a shared model: reads fall through to `base`
/// until a row is written. Used by training workers between syncs.
pub(crate) struct Overlay<'a> {
    pub base: &'a EmbeddingModel,
    pub input: HashMap<Token, Vec<f64>>,
    pub output: HashMap<Token, Vec<f64>>,
}

impl<'a> Overlay<'a> {
    pub fn new(base: &'a EmbeddingModel) -> Self {
        Overlay { base, input: HashMap::new(), output: HashMap::new() }
    }

    /// `(side, token, local - base)` for every written row, in token order.
    pub fn deltas(&self) -> Vec<(Side, Token, Vec<f64>)> {
        let mut out = Vec::with_capacity(self.input.len() + self.output.len());
        for (side, map) in [(Side::Input, &self.input), (Side::Output, &self.output)] {
            let mut keys: Vec<Token> = map.keys().copied().collect();
            keys.sort_unstable();
            for t in keys {
                let base = self.base.row(side, t);
                let delta = map[&t].iter().zip(base).map(|(l, b)| l - b).collect();
                out.push((side, t, delta));
            }
        }
        out
    }
}

impl Rows for Overlay<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    #[inline]
    fn row(&self, side: Side, t: Token) -> &[f64] {
        let map = match side {
            Side::Input => &self.input,
            Side::Output => &self.output,
        };
        match map.get(&t) {
            Some(r) => r,
            None => self.base.row(side, t),
        }
    }
}

impl RowsMut for Overlay<'_> {
    fn row_mut(&mut self, side: Side, t: Token) -> &mut [f64] {
        let base = self.base;
        let map = match side {
            Side::Input => &mut self.input,
            Side::Output => &mut self.output,
        };
        map.entry(t).or_insert_with(|| base.row(side, t).to_vec())
    }

    fn vocab_size(&self) -> usize {
        self.base.vocab_size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_interval() {
        let m = init_embeddings(50, 100, 1);
        assert!(m.input.as_slice().iter().chain(m.output.as_slice()).all(|&x| x > -0.01 && x < 0.01));
        let m = init_embeddings(50, 1, 1);
        assert!(m.input.as_slice().iter().all(|&x| x > -1.0 && x < 1.0));
    }

    #[test]
    fn init_is_seeded() {
        assert_eq!(init_embeddings(20, 8, 5), init_embeddings(20, 8, 5));
        assert_ne!(init_embeddings(20, 8, 5), init_embeddings(20, 8, 6));
    }

    #[test]
    fn overlay_reads_through_and_reports_deltas() {
        let base = init_embeddings(4, 2, 0);
        let mut ov = Overlay::new(&base);
        assert_eq!(ov.row(Side::Input, 2), base.row(Side::Input, 2));
        ov.row_mut(Side::Output, 3)[0] += 1.0;
        let d = ov.deltas();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0, Side::Output);
        assert_eq!(d[0].1, 3);
        assert!((d[0].2[0] - 1.0).abs() < 1e-12);
        assert_eq!(d[0].2[1], 0.0);
    }
}
