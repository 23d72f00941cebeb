//! Negative-sampling objectives and their analytic gradients.
//!
//! For an instance with hidden vector `h`, positive output row `t` and
//! negative output rows `n_1..n_k`:
//!
//! ```text
//! loss = BCE(<h, t>, 1) + sum_j BCE(<h, n_j>, 0)
//! BCE(x, 1) = ln(1 + e^-x)      BCE(x, 0) = ln(1 + e^x)
//! ```
//!
//! and the batch loss is the mean over instances. Skip-gram uses the center's
//! input row as `h`; CBOW uses the mean of the context input rows. Negatives
//! are passed in flat, `k` per instance.

use std::collections::HashMap;

use super::model::{Rows, Side};
use super::pairs::{CbowInstance, TrainingPair};
use crate::{Error, Result, Token};

#[inline]
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

#[inline]
pub(crate) fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Gradient rows keyed by token, in first-touch order.
#[derive(Debug, Clone, Default)]
pub struct RowGrads {
    dim: usize,
    slot: HashMap<Token, usize>,
    tokens: Vec<Token>,
    data: Vec<f64>,
}

impl RowGrads {
    fn new(dim: usize) -> Self {
        RowGrads { dim, ..Default::default() }
    }

    pub fn row_mut(&mut self, t: Token) -> &mut [f64] {
        let dim = self.dim;
        let next = self.tokens.len();
        let s = *self.slot.entry(t).or_insert(next);
        if s == next {
            self.tokens.push(t);
            self.data.resize(self.data.len() + dim, 0.0);
        }
        &mut self.data[s * dim..(s + 1) * dim]
    }

    pub fn get(&self, t: Token) -> Option<&[f64]> {
        self.slot.get(&t).map(|&s| &self.data[s * self.dim..(s + 1) * self.dim])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Token, &[f64])> + '_ {
        self.tokens.iter().zip(self.data.chunks_exact(self.dim.max(1))).map(|(&t, r)| (t, r))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    fn clear(&mut self) {
        self.slot.clear();
        self.tokens.clear();
        self.data.clear();
    }
}

/// Gradient of a batch loss, restricted to the rows the batch touched.
#[derive(Debug, Clone, Default)]
pub struct SparseGrad {
    pub input: RowGrads,
    pub output: RowGrads,
}

impl SparseGrad {
    pub fn new(dim: usize) -> Self {
        SparseGrad { input: RowGrads::new(dim), output: RowGrads::new(dim) }
    }

    pub fn side(&self, side: Side) -> &RowGrads {
        match side {
            Side::Input => &self.input,
            Side::Output => &self.output,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut RowGrads {
        match side {
            Side::Input => &mut self.input,
            Side::Output => &mut self.output,
        }
    }

    pub fn clear(&mut self) {
        self.input.clear();
        self.output.clear();
    }
}

fn check_negatives(instances: usize, negatives: &[Token], k: usize) {
    assert_eq!(negatives.len(), instances * k, "expected {k} negatives per instance");
}

/// Mean skip-gram loss over `pairs`.
pub fn sgns_batch_loss<M: Rows + ?Sized>(model: &M, pairs: &[TrainingPair], negatives: &[Token], k: usize) -> f64 {
    check_negatives(pairs.len(), negatives, k);
    if pairs.is_empty() {
        return 0.0;
    }
    let total: f64 = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let h = model.row(Side::Input, p.center);
            softplus(-dot(h, model.row(Side::Output, p.context)))
                + negatives[i * k..(i + 1) * k]
                    .iter()
                    .map(|&n| softplus(dot(h, model.row(Side::Output, n))))
                    .sum::<f64>()
        })
        .sum();
    total / pairs.len() as f64
}

/// Skip-gram loss plus its gradient, accumulated into `grad` (which is
/// cleared first).
pub fn sgns_loss_and_grad<M: Rows + ?Sized>(
    model: &M,
    pairs: &[TrainingPair],
    negatives: &[Token],
    k: usize,
    grad: &mut SparseGrad,
) -> f64 {
    check_negatives(pairs.len(), negatives, k);
    grad.clear();
    if pairs.is_empty() {
        return 0.0;
    }
    let dim = model.dim();
    let scale = 1.0 / pairs.len() as f64;
    let mut grad_h = vec![0.0; dim];
    let mut total = 0.0;
    for (i, p) in pairs.iter().enumerate() {
        let h = model.row(Side::Input, p.center);
        grad_h.fill(0.0);
        let targets = std::iter::once((p.context, true)).chain(negatives[i * k..(i + 1) * k].iter().map(|&n| (n, false)));
        for (t, positive) in targets {
            let out = model.row(Side::Output, t);
            let x = dot(h, out);
            let g = if positive {
                total += softplus(-x);
                sigmoid(x) - 1.0
            } else {
                total += softplus(x);
                sigmoid(x)
            } * scale;
            axpy(g, out, &mut grad_h);
            axpy(g, h, grad.output.row_mut(t));
        }
        axpy(1.0, &grad_h, grad.input.row_mut(p.center));
    }
    total * scale
}

fn context_mean<M: Rows + ?Sized>(model: &M, context: &[Token], out: &mut [f64]) -> Result<()> {
    if context.is_empty() {
        return Err(Error::EmptyContext);
    }
    out.fill(0.0);
    for &c in context {
        axpy(1.0, model.row(Side::Input, c), out);
    }
    let inv = 1.0 / context.len() as f64;
    out.iter_mut().for_each(|x| *x *= inv);
    Ok(())
}

/// Mean CBOW loss; the hidden vector is the mean of the context input rows.
pub fn cbow_batch_loss<M: Rows + ?Sized>(
    model: &M,
    instances: &[CbowInstance<'_>],
    negatives: &[Token],
    k: usize,
) -> Result<f64> {
    check_negatives(instances.len(), negatives, k);
    if instances.is_empty() {
        return Ok(0.0);
    }
    let mut c = vec![0.0; model.dim()];
    let mut total = 0.0;
    for (i, inst) in instances.iter().enumerate() {
        context_mean(model, inst.context, &mut c)?;
        total += softplus(-dot(&c, model.row(Side::Output, inst.target)));
        for &n in &negatives[i * k..(i + 1) * k] {
            total += softplus(dot(&c, model.row(Side::Output, n)));
        }
    }
    Ok(total / instances.len() as f64)
}

pub fn cbow_loss_and_grad<M: Rows + ?Sized>(
    model: &M,
    instances: &[CbowInstance<'_>],
    negatives: &[Token],
    k: usize,
    grad: &mut SparseGrad,
) -> Result<f64> {
    check_negatives(instances.len(), negatives, k);
    grad.clear();
    if instances.is_empty() {
        return Ok(0.0);
    }
    let dim = model.dim();
    let scale = 1.0 / instances.len() as f64;
    let mut c = vec![0.0; dim];
    let mut grad_c = vec![0.0; dim];
    let mut total = 0.0;
    for (i, inst) in instances.iter().enumerate() {
        context_mean(model, inst.context, &mut c)?;
        grad_c.fill(0.0);
        let targets =
            std::iter::once((inst.target, true)).chain(negatives[i * k..(i + 1) * k].iter().map(|&n| (n, false)));
        for (t, positive) in targets {
            let out = model.row(Side::Output, t);
            let x = dot(&c, out);
            let g = if positive {
                total += softplus(-x);
                sigmoid(x) - 1.0
            } else {
                total += softplus(x);
                sigmoid(x)
            } * scale;
            axpy(g, out, &mut grad_c);
            axpy(g, &c, grad.output.row_mut(t));
        }
        let share = 1.0 / inst.context.len() as f64;
        for &ctx in inst.context {
            axpy(share, &grad_c, grad.input.row_mut(ctx));
        }
    }
    Ok(total * scale)
}
