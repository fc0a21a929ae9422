//! k-nearest neighbours with Euclidean or Hamming distance.
//!
//! Tie-breaks are fixed: equal distances prefer the lower training
//! index, equal vote counts prefer the lower label.

use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

use super::{TrainMatrix, check_positive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum KnnMetric {
    Euclidean,
    /// Number of coordinates that differ (exact comparison).
    Hamming,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KnnConfig {
    pub k: usize,
    pub metric: KnnMetric,
}

impl KnnConfig {
    /// k-NN with Euclidean distance (default k = 5).
    pub fn euclidean(k: usize) -> Self {
        KnnConfig {
            k,
            metric: KnnMetric::Euclidean,
        }
    }

    /// k-NN with Hamming distance, the paper's choice for binary
    /// feature vectors (default k = 50).
    pub fn hamming(k: usize) -> Self {
        KnnConfig {
            k,
            metric: KnnMetric::Hamming,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidArgument("knn k must be at least 1".into()));
        }
        check_positive(self.k as f64, "k")
    }
}

impl Default for KnnConfig {
    fn default() -> Self {
        KnnConfig::euclidean(5)
    }
}

/// The fitted model is the training set itself.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KnnParams {
    pub k: usize,
    pub metric: KnnMetric,
    pub arity: usize,
    pub d: usize,
    pub features: Vec<f64>,
    pub labels: Vec<usize>,
}

pub(crate) fn fit(config: &KnnConfig, train: &TrainMatrix) -> Result<KnnParams> {
    if config.k > train.n {
        return Err(Error::InvalidArgument(alloc::format!(
            "knn k = {} exceeds training size {}",
            config.k,
            train.n
        )));
    }
    Ok(KnnParams {
        k: config.k,
        metric: config.metric,
        arity: train.arity,
        d: train.d,
        features: train.x.clone(),
        labels: train.labels.clone(),
    })
}

#[inline]
fn distance(metric: KnnMetric, a: &[f64], b: &[f64]) -> f64 {
    match metric {
        KnnMetric::Euclidean => {
            let mut s = 0.0;
            for (x, y) in a.iter().zip(b) {
                let d = x - y;
                s += d * d;
            }
            s
        }
        KnnMetric::Hamming => {
            let mut c = 0u32;
            for (x, y) in a.iter().zip(b) {
                c += u32::from(x != y);
            }
            f64::from(c)
        }
    }
}

pub(crate) fn predict(params: &KnnParams, x: &[f64]) -> usize {
    let n = params.labels.len();
    let mut dists: Vec<(f64, usize)> = (0..n)
        .map(|i| {
            (
                distance(params.metric, &params.features[i * params.d..(i + 1) * params.d], x),
                i,
            )
        })
        .collect();
    let k = params.k.min(n);
    // distance ties resolve to the lower training index
    dists.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut votes = alloc::vec![0usize; params.arity];
    for &(_, idx) in &dists[..k] {
        votes[params.labels[idx]] += 1;
    }
    let mut best = 0;
    for (label, &v) in votes.iter().enumerate().skip(1) {
        if v > votes[best] {
            best = label;
        }
    }
    best
}
