//! The classifier menu: feed-forward neural network, support vector
//! machine, naive Bayes, logistic regression, decision tree, random
//! forest and k-nearest neighbours, all implemented from scratch behind
//! one train/predict contract.
//!
//! `fit` and `predict` are pure functions of `(spec, data, seed)`:
//! identical inputs produce models with identical predictions.

use alloc::format;
use alloc::vec::Vec;

use crate::dataset::LabeledDataset;
use crate::error::Error;
use crate::float;
use crate::rng::RngSeed;
use crate::Result;

mod bayes;
mod knn;
mod logistic;
mod mlp;
mod svm;
mod tree;

pub use bayes::{NaiveBayesConfig, NaiveBayesParams};
pub use knn::{KnnConfig, KnnMetric, KnnParams};
pub use logistic::{LogisticConfig, LogisticParams};
pub use mlp::{mlp_gradient_check, Activation, MlpArchitecture, MlpConfig, MlpParams};
pub use svm::{Gamma, SvmConfig, SvmKernel, SvmParams};
pub use tree::{ForestConfig, ForestParams, TreeConfig, TreeParams};

/// Which classifier to train, with its hyperparameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LearnerKind {
    Mlp(MlpConfig),
    Svm(SvmConfig),
    NaiveBayes(NaiveBayesConfig),
    Logistic(LogisticConfig),
    DecisionTree(TreeConfig),
    RandomForest(ForestConfig),
    Knn(KnnConfig),
}

impl LearnerKind {
    pub fn name(&self) -> &'static str {
        match self {
            LearnerKind::Mlp(_) => "mlp",
            LearnerKind::Svm(_) => "svm",
            LearnerKind::NaiveBayes(_) => "naive_bayes",
            LearnerKind::Logistic(_) => "logistic",
            LearnerKind::DecisionTree(_) => "decision_tree",
            LearnerKind::RandomForest(_) => "random_forest",
            LearnerKind::Knn(_) => "knn",
        }
    }
}

/// A classifier choice plus the seed that makes training deterministic.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LearnerSpec {
    pub kind: LearnerKind,
    pub seed: RngSeed,
}

impl LearnerSpec {
    pub fn new(kind: LearnerKind, seed: RngSeed) -> Self {
        LearnerSpec { kind, seed }
    }

    fn validate(&self) -> Result<()> {
        match &self.kind {
            LearnerKind::Mlp(c) => c.validate(),
            LearnerKind::Svm(c) => c.validate(),
            LearnerKind::NaiveBayes(c) => c.validate(),
            LearnerKind::Logistic(c) => c.validate(),
            LearnerKind::DecisionTree(c) => c.validate(),
            LearnerKind::RandomForest(c) => c.validate(),
            LearnerKind::Knn(c) => c.validate(),
        }
    }
}

/// Per-feature affine transform fitted on training statistics.
///
/// Real-valued tasks are standardized; integer tasks (every training
/// value has zero fractional part) are fed raw. Constant features keep
/// scale 1 so they map to zero.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Standardizer {
    mean: Vec<f64>,
    inv_std: Vec<f64>,
}

impl Standardizer {
    fn fit(train: &LabeledDataset) -> Option<Standardizer> {
        let integral = train
            .examples()
            .iter()
            .all(|e| e.features.iter().all(|&v| float::fract(v) == 0.0));
        if integral {
            return None;
        }
        let d = train.dim();
        let n = train.len() as f64;
        let mut mean = alloc::vec![0.0; d];
        for ex in train.examples() {
            for (m, v) in mean.iter_mut().zip(&ex.features) {
                *m += v;
            }
        }
        for m in &mut mean {
            *m /= n;
        }
        let mut var = alloc::vec![0.0; d];
        for ex in train.examples() {
            for ((s, v), m) in var.iter_mut().zip(&ex.features).zip(&mean) {
                let dv = v - m;
                *s += dv * dv;
            }
        }
        let inv_std = var
            .iter()
            .map(|&s| {
                let sd = float::sqrt(s / n);
                if sd > 0.0 {
                    1.0 / sd
                } else {
                    1.0
                }
            })
            .collect();
        Some(Standardizer { mean, inv_std })
    }

    pub fn transform(&self, features: &[f64]) -> Vec<f64> {
        features
            .iter()
            .zip(&self.mean)
            .zip(&self.inv_std)
            .map(|((v, m), s)| (v - m) * s)
            .collect()
    }
}

/// Fitted parameters, one variant per learner kind.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ModelParams {
    Mlp(MlpParams),
    Svm(SvmParams),
    NaiveBayes(NaiveBayesParams),
    Logistic(LogisticParams),
    DecisionTree(TreeParams),
    RandomForest(ForestParams),
    Knn(KnnParams),
}

/// A fitted classifier. Immutable; safe to share across threads for
/// concurrent prediction.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainedModel {
    spec: LearnerSpec,
    label_arity: usize,
    feature_dim: usize,
    standardizer: Option<Standardizer>,
    params: ModelParams,
}

/// Trains the classifier described by `spec` on `train`.
///
/// Hyperparameters and dataset preconditions (non-empty, every label
/// present) are validated before any training work happens.
pub fn fit(spec: &LearnerSpec, train: &LabeledDataset) -> Result<TrainedModel> {
    spec.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if let Some(label) = train.class_counts().iter().position(|&c| c == 0) {
        return Err(Error::MissingClass { label });
    }

    let standardizer = Standardizer::fit(train);
    let matrix = TrainMatrix::build(train, standardizer.as_ref());

    let params = match &spec.kind {
        LearnerKind::Mlp(c) => ModelParams::Mlp(mlp::fit(c, &matrix, spec.seed)?),
        LearnerKind::Svm(c) => ModelParams::Svm(svm::fit(c, &matrix, spec.seed)?),
        LearnerKind::NaiveBayes(c) => ModelParams::NaiveBayes(bayes::fit(c, &matrix)?),
        LearnerKind::Logistic(c) => ModelParams::Logistic(logistic::fit(c, &matrix, spec.seed)?),
        LearnerKind::DecisionTree(c) => {
            ModelParams::DecisionTree(tree::fit_tree(c, &matrix, spec.seed)?)
        }
        LearnerKind::RandomForest(c) => {
            ModelParams::RandomForest(tree::fit_forest(c, &matrix, spec.seed)?)
        }
        LearnerKind::Knn(c) => ModelParams::Knn(knn::fit(c, &matrix)?),
    };

    Ok(TrainedModel {
        spec: spec.clone(),
        label_arity: train.label_arity(),
        feature_dim: train.dim(),
        standardizer,
        params,
    })
}

impl TrainedModel {
    pub fn spec(&self) -> &LearnerSpec {
        &self.spec
    }

    pub fn label_arity(&self) -> usize {
        self.label_arity
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn standardizer(&self) -> Option<&Standardizer> {
        self.standardizer.as_ref()
    }

    /// Reassembles a model from its parts (used by model deserialization).
    pub fn from_parts(
        spec: LearnerSpec,
        label_arity: usize,
        feature_dim: usize,
        standardizer: Option<Standardizer>,
        params: ModelParams,
    ) -> Self {
        TrainedModel {
            spec,
            label_arity,
            feature_dim,
            standardizer,
            params,
        }
    }

    /// Predicts the category of one feature vector.
    pub fn predict(&self, features: &[f64]) -> Result<usize> {
        if features.len() != self.feature_dim {
            return Err(Error::DimensionMismatch {
                expected: self.feature_dim,
                got: features.len(),
            });
        }
        let owned;
        let x: &[f64] = match &self.standardizer {
            Some(s) => {
                owned = s.transform(features);
                &owned
            }
            None => features,
        };
        let label = match &self.params {
            ModelParams::Mlp(p) => mlp::predict(p, x),
            ModelParams::Svm(p) => svm::predict(p, x),
            ModelParams::NaiveBayes(p) => bayes::predict(p, x),
            ModelParams::Logistic(p) => logistic::predict(p, x),
            ModelParams::DecisionTree(p) => tree::predict_tree(p, x),
            ModelParams::RandomForest(p) => tree::predict_forest(p, x),
            ModelParams::Knn(p) => knn::predict(p, x),
        };
        debug_assert!(label < self.label_arity);
        Ok(label)
    }

    /// Elementwise, order-preserving batch prediction.
    pub fn predict_batch(&self, ds: &LabeledDataset) -> Result<Vec<usize>> {
        if !ds.is_empty() && ds.dim() != self.feature_dim {
            return Err(Error::DimensionMismatch {
                expected: self.feature_dim,
                got: ds.dim(),
            });
        }
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            ds.examples()
                .par_iter()
                .map(|ex| self.predict(&ex.features))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            ds.examples()
                .iter()
                .map(|ex| self.predict(&ex.features))
                .collect()
        }
    }
}

/// Training data flattened into a contiguous row-major matrix, shared by
/// all the learner implementations.
pub(crate) struct TrainMatrix {
    pub x: Vec<f64>,
    pub labels: Vec<usize>,
    pub n: usize,
    pub d: usize,
    pub arity: usize,
}

impl TrainMatrix {
    fn build(train: &LabeledDataset, standardizer: Option<&Standardizer>) -> Self {
        let n = train.len();
        let d = train.dim();
        let mut x = Vec::with_capacity(n * d);
        let mut labels = Vec::with_capacity(n);
        for ex in train.examples() {
            match standardizer {
                Some(s) => x.extend(s.transform(&ex.features)),
                None => x.extend_from_slice(&ex.features),
            }
            labels.push(ex.label);
        }
        TrainMatrix {
            x,
            labels,
            n,
            d,
            arity: train.label_arity(),
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }
}

/// Index of the maximum score; ties resolve to the lowest index.
#[inline]
pub(crate) fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Validates that a hyperparameter is strictly positive and finite.
pub(crate) fn check_positive(value: f64, name: &str) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "{name} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::dataset::{Example, FeatureShape};
    use alloc::vec;

    pub(crate) fn blob_dataset(per_class: usize, seed: u64) -> LabeledDataset {
        // two well-separated 2-d blobs
        let mut rng = crate::rng::Rng::from_seed(RngSeed(seed));
        let mut examples = Vec::new();
        for label in 0..2usize {
            let cx = if label == 0 { -2.0 } else { 2.0 };
            for _ in 0..per_class {
                examples.push(Example {
                    features: vec![cx + rng.range_f64(-0.5, 0.5), rng.range_f64(-0.5, 0.5)],
                    label,
                });
            }
        }
        LabeledDataset::new(examples, FeatureShape::Flat(2), 2, "blobs").unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::blob_dataset;
    use super::*;
    use crate::dataset::{Example, FeatureShape};
    use alloc::vec;

    #[test]
    fn fit_rejects_missing_class() {
        let ds = LabeledDataset::new(
            vec![Example {
                features: vec![0.0, 0.0],
                label: 0,
            }],
            FeatureShape::Flat(2),
            2,
            "t",
        )
        .unwrap();
        let spec = LearnerSpec::new(
            LearnerKind::DecisionTree(TreeConfig::default()),
            RngSeed(0),
        );
        assert_eq!(fit(&spec, &ds).unwrap_err(), Error::MissingClass { label: 1 });
    }

    #[test]
    fn predict_rejects_wrong_dimension() {
        let ds = blob_dataset(20, 1);
        let spec = LearnerSpec::new(
            LearnerKind::DecisionTree(TreeConfig::default()),
            RngSeed(0),
        );
        let model = fit(&spec, &ds).unwrap();
        assert!(model.predict(&[1.0]).is_err());
        assert!(model.predict(&[1.0, 2.0]).is_ok());
    }

    #[test]
    fn constant_label_training_set_predicts_that_label() {
        let examples = (0..5)
            .map(|i| Example {
                features: vec![i as f64, 1.0],
                label: 0,
            })
            .collect();
        let ds = LabeledDataset::new(examples, FeatureShape::Flat(2), 1, "const").unwrap();
        for kind in [
            LearnerKind::NaiveBayes(NaiveBayesConfig::default()),
            LearnerKind::DecisionTree(TreeConfig::default()),
            LearnerKind::Knn(KnnConfig::euclidean(3)),
            LearnerKind::Logistic(LogisticConfig::default()),
        ] {
            let model = fit(&LearnerSpec::new(kind, RngSeed(4)), &ds).unwrap();
            assert_eq!(model.predict(&[100.0, -3.0]).unwrap(), 0);
        }
    }

    #[test]
    fn batch_equals_pointwise_and_is_pure() {
        let ds = blob_dataset(30, 2);
        let spec = LearnerSpec::new(LearnerKind::Knn(KnnConfig::euclidean(3)), RngSeed(0));
        let model = fit(&spec, &ds).unwrap();
        let batch = model.predict_batch(&ds).unwrap();
        for (ex, &b) in ds.examples().iter().zip(&batch) {
            assert_eq!(model.predict(&ex.features).unwrap(), b);
            assert_eq!(model.predict(&ex.features).unwrap(), b);
        }
        let empty = ds.with_examples(Vec::new()).unwrap();
        assert_eq!(model.predict_batch(&empty).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn determinism_across_refits() {
        let ds = blob_dataset(40, 3);
        for kind in [
            LearnerKind::Mlp(MlpConfig::default()),
            LearnerKind::Svm(SvmConfig::default()),
            LearnerKind::RandomForest(ForestConfig {
                trees: 5,
                ..ForestConfig::default()
            }),
            LearnerKind::Logistic(LogisticConfig::default()),
        ] {
            let spec = LearnerSpec::new(kind, RngSeed(11));
            let a = fit(&spec, &ds).unwrap();
            let b = fit(&spec, &ds).unwrap();
            assert_eq!(a.predict_batch(&ds).unwrap(), b.predict_batch(&ds).unwrap());
        }
    }

    #[test]
    fn logistic_separates_blobs() {
        let ds = blob_dataset(50, 7);
        let spec = LearnerSpec::new(LearnerKind::Logistic(LogisticConfig::default()), RngSeed(1));
        let model = fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        let correct = preds
            .iter()
            .zip(ds.examples())
            .filter(|(p, e)| **p == e.label)
            .count();
        assert_eq!(correct, ds.len(), "separable blobs must be fit exactly");
    }
}
