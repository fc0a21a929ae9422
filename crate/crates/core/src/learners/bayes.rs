//! Naive Bayes with Laplace smoothing.
//!
//! The event model is chosen per feature from the training data: at most
//! `max_categorical_cardinality` distinct values makes the feature
//! categorical; anything richer is binarized at its training median and
//! treated as Bernoulli. One smoothing slot is reserved for values never
//! seen in training, so log-posteriors stay finite on unseen inputs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::float;
use crate::Result;

use super::{argmax, TrainMatrix};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NaiveBayesConfig {
    /// Laplace smoothing constant.
    pub alpha: f64,
    /// Features with at most this many distinct training values are
    /// treated as categorical.
    pub max_categorical_cardinality: usize,
}

impl Default for NaiveBayesConfig {
    fn default() -> Self {
        NaiveBayesConfig {
            alpha: 1.0,
            max_categorical_cardinality: 8,
        }
    }
}

impl NaiveBayesConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidArgument("naive Bayes alpha must be positive".into()));
        }
        if self.max_categorical_cardinality == 0 {
            return Err(Error::InvalidArgument(
                "max categorical cardinality must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FeatureModel {
    /// Known values (sorted by bit pattern) and per-class log
    /// likelihoods; the last slot of each class row is the
    /// unseen-value probability.
    Categorical {
        values: Vec<f64>,
        log_prob: Vec<Vec<f64>>,
    },
    /// Bernoulli on `value > threshold`, log P(high | class) per class.
    Binarized {
        threshold: f64,
        log_high: Vec<f64>,
        log_low: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NaiveBayesParams {
    pub log_prior: Vec<f64>,
    pub features: Vec<FeatureModel>,
}

pub(crate) fn fit(config: &NaiveBayesConfig, train: &TrainMatrix) -> Result<NaiveBayesParams> {
    let arity = train.arity;
    let n = train.n;
    let alpha = config.alpha;

    let mut class_counts = vec![0usize; arity];
    for &l in &train.labels {
        class_counts[l] += 1;
    }
    let log_prior: Vec<f64> = class_counts
        .iter()
        .map(|&c| float::ln(c as f64 / n as f64))
        .collect();

    let mut features = Vec::with_capacity(train.d);
    for f in 0..train.d {
        let mut distinct: BTreeMap<u64, usize> = BTreeMap::new();
        for i in 0..n {
            let v = train.x[i * train.d + f];
            let next = distinct.len();
            distinct.entry(v.to_bits()).or_insert(next);
            if distinct.len() > config.max_categorical_cardinality {
                break;
            }
        }
        if distinct.len() <= config.max_categorical_cardinality {
            // categorical: count per (class, value), reserve one unseen slot
            let values: Vec<f64> = distinct.keys().map(|&bits| f64::from_bits(bits)).collect();
            let index: BTreeMap<u64, usize> = values
                .iter()
                .enumerate()
                .map(|(i, v)| (v.to_bits(), i))
                .collect();
            let v_count = values.len();
            let mut counts = vec![vec![0usize; v_count]; arity];
            for i in 0..n {
                let v = train.x[i * train.d + f];
                counts[train.labels[i]][index[&v.to_bits()]] += 1;
            }
            let log_prob = counts
                .iter()
                .zip(&class_counts)
                .map(|(row, &cc)| {
                    let denom = cc as f64 + alpha * (v_count as f64 + 1.0);
                    let mut out: Vec<f64> = row
                        .iter()
                        .map(|&c| float::ln((c as f64 + alpha) / denom))
                        .collect();
                    out.push(float::ln(alpha / denom)); // unseen slot
                    out
                })
                .collect();
            features.push(FeatureModel::Categorical { values, log_prob });
        } else {
            // binarize at the training median
            let mut col: Vec<f64> = (0..n).map(|i| train.x[i * train.d + f]).collect();
            col.sort_unstable_by(f64::total_cmp);
            let threshold = col[n / 2];
            let mut high = vec![0usize; arity];
            for i in 0..n {
                if train.x[i * train.d + f] > threshold {
                    high[train.labels[i]] += 1;
                }
            }
            let mut log_high = Vec::with_capacity(arity);
            let mut log_low = Vec::with_capacity(arity);
            for (c, &h) in high.iter().enumerate() {
                let denom = class_counts[c] as f64 + 2.0 * alpha;
                log_high.push(float::ln((h as f64 + alpha) / denom));
                log_low.push(float::ln(
                    ((class_counts[c] - h) as f64 + alpha) / denom,
                ));
            }
            features.push(FeatureModel::Binarized {
                threshold,
                log_high,
                log_low,
            });
        }
    }

    Ok(NaiveBayesParams {
        log_prior,
        features,
    })
}

pub(crate) fn predict(params: &NaiveBayesParams, x: &[f64]) -> usize {
    let mut scores = params.log_prior.clone();
    for (f, model) in params.features.iter().enumerate() {
        let v = x[f];
        match model {
            FeatureModel::Categorical { values, log_prob } => {
                let slot = values
                    .iter()
                    .position(|&w| w.to_bits() == v.to_bits())
                    .unwrap_or(values.len());
                for (s, row) in scores.iter_mut().zip(log_prob) {
                    *s += row[slot];
                }
            }
            FeatureModel::Binarized {
                threshold,
                log_high,
                log_low,
            } => {
                let row = if v > *threshold { log_high } else { log_low };
                for (s, lp) in scores.iter_mut().zip(row) {
                    *s += lp;
                }
            }
        }
    }
    argmax(&scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Example, FeatureShape, LabeledDataset};
    use crate::learners::{fit as model_fit, LearnerKind, LearnerSpec, ModelParams};
    use crate::rng::RngSeed;

    fn parity_ds() -> LabeledDataset {
        // label = first feature, second feature is noise-ish
        let examples = (0..40)
            .map(|i| Example {
                features: vec![(i % 2) as f64, (i % 5) as f64],
                label: i % 2,
            })
            .collect();
        LabeledDataset::new(examples, FeatureShape::Flat(2), 2, "nb-test").unwrap()
    }

    #[test]
    fn learns_categorical_indicator() {
        let spec = LearnerSpec::new(
            LearnerKind::NaiveBayes(NaiveBayesConfig::default()),
            RngSeed(0),
        );
        let model = model_fit(&spec, &parity_ds()).unwrap();
        assert_eq!(model.predict(&[0.0, 3.0]).unwrap(), 0);
        assert_eq!(model.predict(&[1.0, 3.0]).unwrap(), 1);
    }

    #[test]
    fn unseen_values_keep_posteriors_finite() {
        let spec = LearnerSpec::new(
            LearnerKind::NaiveBayes(NaiveBayesConfig::default()),
            RngSeed(0),
        );
        let model = model_fit(&spec, &parity_ds()).unwrap();
        // 99.0 was never seen in training
        let label = model.predict(&[99.0, 99.0]).unwrap();
        assert!(label < 2);
        if let ModelParams::NaiveBayes(p) = model.params() {
            let mut scores = p.log_prior.clone();
            for (f, m) in p.features.iter().enumerate() {
                if let FeatureModel::Categorical { values, log_prob } = m {
                    let slot = values
                        .iter()
                        .position(|&w| w == [99.0, 99.0][f])
                        .unwrap_or(values.len());
                    for (s, row) in scores.iter_mut().zip(log_prob) {
                        *s += row[slot];
                    }
                }
            }
            assert!(scores.iter().all(|s| s.is_finite()));
        } else {
            panic!("expected naive Bayes params");
        }
    }

    #[test]
    fn high_cardinality_features_are_binarized() {
        let examples = (0..60)
            .map(|i| Example {
                features: vec![i as f64 + 0.5],
                label: usize::from(i >= 30),
            })
            .collect();
        let ds = LabeledDataset::new(examples, FeatureShape::Flat(1), 2, "nb-bin").unwrap();
        let spec = LearnerSpec::new(
            LearnerKind::NaiveBayes(NaiveBayesConfig::default()),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        if let ModelParams::NaiveBayes(p) = model.params() {
            assert!(matches!(p.features[0], FeatureModel::Binarized { .. }));
        } else {
            panic!("expected naive Bayes params");
        }
        // split at the median separates the classes
        assert_eq!(model.predict(&[2.0]).unwrap(), 0);
        assert_eq!(model.predict(&[58.0]).unwrap(), 1);
    }
}
