//! Multinomial logistic regression trained by full-batch gradient
//! descent on the cross-entropy loss with an L2 penalty.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::float;
use crate::rng::RngSeed;
use crate::Result;

use super::{argmax, check_positive, TrainMatrix};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LogisticConfig {
    pub learning_rate: f64,
    pub l2: f64,
    pub epochs: usize,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig {
            learning_rate: 0.5,
            l2: 1e-4,
            epochs: 200,
        }
    }
}

impl LogisticConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        check_positive(self.learning_rate, "learning rate")?;
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(Error::InvalidArgument("l2 penalty must be non-negative".into()));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidArgument("epochs must be positive".into()));
        }
        Ok(())
    }
}

/// Weight matrix (`arity` x `d`, row-major) and per-class biases.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LogisticParams {
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
    pub arity: usize,
    pub d: usize,
}

fn scores(params: &LogisticParams, x: &[f64]) -> Vec<f64> {
    let mut out = params.bias.clone();
    for (c, o) in out.iter_mut().enumerate() {
        let row = &params.weights[c * params.d..(c + 1) * params.d];
        let mut acc = 0.0;
        for (w, v) in row.iter().zip(x) {
            acc += w * v;
        }
        *o += acc;
    }
    out
}

fn softmax_in_place(scores: &mut [f64]) {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for s in scores.iter_mut() {
        *s = float::exp(*s - max);
        sum += *s;
    }
    for s in scores.iter_mut() {
        *s /= sum;
    }
}

pub(crate) fn fit(
    config: &LogisticConfig,
    train: &TrainMatrix,
    _seed: RngSeed,
) -> Result<LogisticParams> {
    let (n, d, arity) = (train.n, train.d, train.arity);
    let mut params = LogisticParams {
        weights: vec![0.0; arity * d],
        bias: vec![0.0; arity],
        arity,
        d,
    };

    let inv_n = 1.0 / n as f64;
    let mut grad_w = vec![0.0; arity * d];
    let mut grad_b = vec![0.0; arity];
    for _ in 0..config.epochs {
        grad_w.fill(0.0);
        grad_b.fill(0.0);
        for i in 0..n {
            let x = train.row(i);
            let mut p = scores(&params, x);
            softmax_in_place(&mut p);
            p[train.labels[i]] -= 1.0;
            for (c, &pc) in p.iter().enumerate() {
                let g = &mut grad_w[c * d..(c + 1) * d];
                for (gw, v) in g.iter_mut().zip(x) {
                    *gw += pc * v;
                }
                grad_b[c] += pc;
            }
        }
        let lr = config.learning_rate;
        for (w, g) in params.weights.iter_mut().zip(&grad_w) {
            *w -= lr * (g * inv_n + config.l2 * *w);
        }
        for (b, g) in params.bias.iter_mut().zip(&grad_b) {
            *b -= lr * g * inv_n;
        }
    }

    if params.weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::NonFinite("logistic weights diverged".into()));
    }
    Ok(params)
}

pub(crate) fn predict(params: &LogisticParams, x: &[f64]) -> usize {
    argmax(&scores(params, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Example, FeatureShape, LabeledDataset};
    use crate::learners::{fit as model_fit, LearnerKind, LearnerSpec};

    #[test]
    fn three_class_separable_problem() {
        let mut examples = Vec::new();
        for (label, center) in [(-4.0_f64), 0.0, 4.0].iter().enumerate() {
            for i in 0..30 {
                examples.push(Example {
                    features: vec![center + (i as f64) * 0.01, 0.3],
                    label,
                });
            }
        }
        let ds = LabeledDataset::new(examples, FeatureShape::Flat(2), 3, "triple").unwrap();
        let spec = LearnerSpec::new(LearnerKind::Logistic(LogisticConfig::default()), RngSeed(0));
        let model = model_fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        let correct = preds
            .iter()
            .zip(ds.examples())
            .filter(|(p, e)| **p == e.label)
            .count();
        assert!(correct as f64 / ds.len() as f64 > 0.95);
    }

    #[test]
    fn invalid_hyperparameters_rejected() {
        assert!(LogisticConfig {
            learning_rate: 0.0,
            ..LogisticConfig::default()
        }
        .validate()
        .is_err());
        assert!(LogisticConfig {
            epochs: 0,
            ..LogisticConfig::default()
        }
        .validate()
        .is_err());
        assert!(LogisticConfig {
            l2: -1.0,
            ..LogisticConfig::default()
        }
        .validate()
        .is_err());
    }
}
