//! Adaptive moment estimation over embedding rows.

use super::loss::SparseGrad;
use super::model::{Matrix, RowsMut, Side};
use crate::Token;

pub const BETA1: f64 = 0.9;
pub const BETA2: f64 = 0.999;
pub const EPS: f64 = 1e-8;

/// Adam with per-row moment tables for both embedding sides.
///
/// In sparse mode only rows present in the gradient have their moments and
/// parameters updated (the step counter is shared). Dense mode treats every
/// absent row as a zero gradient, so its moments decay and it keeps moving
/// while its momentum is nonzero.
#[derive(Debug, Clone)]
pub struct Adam {
    pub learning_rate: f64,
    pub sparse: bool,
    step: u64,
    m: [Matrix; 2],
    v: [Matrix; 2],
}

fn idx(side: Side) -> usize {
    match side {
        Side::Input => 0,
        Side::Output => 1,
    }
}

impl Adam {
    pub fn new(vocab_size: usize, dim: usize, learning_rate: f64, sparse: bool) -> Self {
        let z = || Matrix::zeros(vocab_size, dim);
        Adam { learning_rate, sparse, step: 0, m: [z(), z()], v: [z(), z()] }
    }

    pub fn steps(&self) -> u64 {
        self.step
    }

    pub fn first_moment(&self, side: Side, t: Token) -> &[f64] {
        self.m[idx(side)].row(t as usize)
    }

    pub fn second_moment(&self, side: Side, t: Token) -> &[f64] {
        self.v[idx(side)].row(t as usize)
    }

    pub fn step<M: RowsMut + ?Sized>(&mut self, model: &mut M, grad: &SparseGrad) {
        self.step += 1;
        let t = self.step as i32;
        let bias1 = 1.0 - BETA1.powi(t);
        let bias2 = 1.0 - BETA2.powi(t);
        let lr = self.learning_rate;
        for side in [Side::Input, Side::Output] {
            let (m, v) = (&mut self.m[idx(side)], &mut self.v[idx(side)]);
            let rows = grad.side(side);
            if self.sparse {
                for (tok, g) in rows.iter() {
                    update_row(model.row_mut(side, tok), m.row_mut(tok as usize), v.row_mut(tok as usize), g, lr, bias1, bias2);
                }
            } else {
                let zeros = vec![0.0; m.cols()];
                for tok in 0..model.vocab_size() as Token {
                    let g = rows.get(tok).unwrap_or(&zeros);
                    update_row(model.row_mut(side, tok), m.row_mut(tok as usize), v.row_mut(tok as usize), g, lr, bias1, bias2);
                }
            }
        }
    }
}

#[inline]
fn update_row(param: &mut [f64], m: &mut [f64], v: &mut [f64], g: &[f64], lr: f64, bias1: f64, bias2: f64) {
    for i in 0..param.len() {
        m[i] = BETA1 * m[i] + (1.0 - BETA1) * g[i];
        v[i] = BETA2 * v[i] + (1.0 - BETA2) * g[i] * g[i];
        let m_hat = m[i] / bias1;
        let v_hat = v[i] / bias2;
        param[i] -= lr * m_hat / (v_hat.sqrt() + EPS);
    }
}
