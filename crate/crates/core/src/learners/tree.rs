//! CART decision trees (Gini impurity) and bagged random forests.
//!
//! Split search is deterministic: features are scanned in ascending
//! index order and thresholds in ascending value order, and only a
//! strictly better Gini gain replaces the current best, so ties resolve
//! to the lowest feature index and lowest threshold.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::float;
use crate::rng::{Rng, RngSeed};
use crate::Result;

use super::TrainMatrix;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeConfig {
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: 20,
            min_leaf: 1,
        }
    }
}

impl TreeConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.max_depth == 0 {
            return Err(Error::InvalidArgument("max depth must be positive".into()));
        }
        if self.min_leaf == 0 {
            return Err(Error::InvalidArgument("min leaf must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ForestConfig {
    pub trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            trees: 100,
            max_depth: 20,
            min_leaf: 1,
        }
    }
}

impl ForestConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.trees == 0 {
            return Err(Error::InvalidArgument("forest needs at least one tree".into()));
        }
        TreeConfig {
            max_depth: self.max_depth,
            min_leaf: self.min_leaf,
        }
        .validate()
    }
}

/// Nodes stored in a flat array; a `left` of 0 marks a leaf (node 0 is
/// the root and can never be a child).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeNode {
    pub feature: usize,
    pub threshold: f64,
    pub left: usize,
    pub right: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeParams {
    pub nodes: Vec<TreeNode>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ForestParams {
    pub trees: Vec<TreeParams>,
    pub arity: usize,
}

struct Grower<'a> {
    train: &'a TrainMatrix,
    config: TreeConfig,
    /// Number of features tried per split (`d` for a plain tree,
    /// floor(sqrt(d)) for forest trees).
    features_per_split: usize,
    nodes: Vec<TreeNode>,
}

struct Split {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl<'a> Grower<'a> {
    fn majority(&self, indices: &[usize]) -> usize {
        let mut counts = vec![0usize; self.train.arity];
        for &i in indices {
            counts[self.train.labels[i]] += 1;
        }
        let mut best = 0;
        for (label, &c) in counts.iter().enumerate().skip(1) {
            if c > counts[best] {
                best = label;
            }
        }
        best
    }

    fn gini(counts: &[usize], total: f64) -> f64 {
        let mut sum_sq = 0.0;
        for &c in counts {
            sum_sq += (c as f64) * (c as f64);
        }
        1.0 - sum_sq / (total * total)
    }

    fn best_split(&self, indices: &[usize], features: &[usize]) -> Option<Split> {
        let arity = self.train.arity;
        let total = indices.len();
        let mut parent_counts = vec![0usize; arity];
        for &i in indices {
            parent_counts[self.train.labels[i]] += 1;
        }
        if parent_counts.iter().filter(|&&c| c > 0).count() < 2 {
            return None;
        }
        let parent_gini = Self::gini(&parent_counts, total as f64);

        let mut best: Option<Split> = None;
        let mut sorted: Vec<(f64, usize)> = Vec::with_capacity(total);
        for &f in features {
            sorted.clear();
            sorted.extend(
                indices
                    .iter()
                    .map(|&i| (self.train.x[i * self.train.d + f], self.train.labels[i])),
            );
            sorted.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

            let mut left_counts = vec![0usize; arity];
            let mut left_n = 0usize;
            let mut right_counts = parent_counts.clone();
            for w in 0..total - 1 {
                let (value, label) = sorted[w];
                left_counts[label] += 1;
                right_counts[label] -= 1;
                left_n += 1;
                let next_value = sorted[w + 1].0;
                if next_value == value {
                    continue;
                }
                let right_n = total - left_n;
                if left_n < self.config.min_leaf || right_n < self.config.min_leaf {
                    continue;
                }
                let weighted = (left_n as f64 * Self::gini(&left_counts, left_n as f64)
                    + right_n as f64 * Self::gini(&right_counts, right_n as f64))
                    / total as f64;
                let gain = parent_gini - weighted;
                // zero-gain splits are allowed on impure nodes (they
                // still shrink both sides, e.g. the first cut of xor);
                // strict improvement keeps the lowest (feature, threshold)
                if best.as_ref().map_or(true, |b| gain > b.gain + 1e-12) {
                    best = Some(Split {
                        feature: f,
                        threshold: (value + next_value) / 2.0,
                        gain,
                    });
                }
            }
        }
        best
    }

    fn grow(&mut self, indices: &mut Vec<usize>, depth: usize, rng: &mut Rng) -> usize {
        let node_id = self.nodes.len();
        let label = self.majority(indices);
        self.nodes.push(TreeNode {
            feature: 0,
            threshold: 0.0,
            left: 0,
            right: 0,
            label,
        });

        if depth >= self.config.max_depth || indices.len() < 2 * self.config.min_leaf {
            return node_id;
        }

        let all_features: Vec<usize>;
        let feature_pool: Vec<usize> = if self.features_per_split >= self.train.d {
            all_features = (0..self.train.d).collect();
            all_features
        } else {
            let mut picks = rng.sample_indices(self.train.d, self.features_per_split);
            picks.sort_unstable();
            picks
        };

        let Some(split) = self.best_split(indices, &feature_pool) else {
            return node_id;
        };

        let mut left_idx = Vec::new();
        let mut right_idx = Vec::new();
        for &i in indices.iter() {
            if self.train.x[i * self.train.d + split.feature] <= split.threshold {
                left_idx.push(i);
            } else {
                right_idx.push(i);
            }
        }
        debug_assert!(!left_idx.is_empty() && !right_idx.is_empty());
        indices.clear();
        indices.shrink_to_fit();

        let left = self.grow(&mut left_idx, depth + 1, rng);
        let right = self.grow(&mut right_idx, depth + 1, rng);
        let node = &mut self.nodes[node_id];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = left;
        node.right = right;
        node_id
    }
}

fn grow_tree(
    train: &TrainMatrix,
    config: &TreeConfig,
    features_per_split: usize,
    indices: Vec<usize>,
    seed: RngSeed,
) -> TreeParams {
    let mut grower = Grower {
        train,
        config: config.clone(),
        features_per_split,
        nodes: Vec::new(),
    };
    let mut rng = Rng::from_seed(seed);
    let mut idx = indices;
    grower.grow(&mut idx, 0, &mut rng);
    TreeParams {
        nodes: grower.nodes,
    }
}

pub(crate) fn fit_tree(config: &TreeConfig, train: &TrainMatrix, seed: RngSeed) -> Result<TreeParams> {
    Ok(grow_tree(
        train,
        config,
        train.d,
        (0..train.n).collect(),
        seed.derive("tree"),
    ))
}

pub(crate) fn fit_forest(
    config: &ForestConfig,
    train: &TrainMatrix,
    seed: RngSeed,
) -> Result<ForestParams> {
    let tree_config = TreeConfig {
        max_depth: config.max_depth,
        min_leaf: config.min_leaf,
    };
    let per_split = int_sqrt(train.d).max(1);
    let forest_seed = seed.derive("forest");
    let grow_one = |t: usize| -> TreeParams {
        let tree_seed = forest_seed.derive_index(t as u64);
        let mut rng = Rng::from_seed(tree_seed);
        // bootstrap sample of n with replacement
        let indices: Vec<usize> = (0..train.n).map(|_| rng.below(train.n)).collect();
        grow_tree(train, &tree_config, per_split, indices, tree_seed.derive("grow"))
    };

    #[cfg(feature = "parallel")]
    let trees: Vec<TreeParams> = {
        use rayon::prelude::*;
        // per-tree seeds are pre-assigned, so parallel growth is
        // bit-identical to the serial order
        (0..config.trees).into_par_iter().map(grow_one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let trees: Vec<TreeParams> = (0..config.trees).map(grow_one).collect();

    Ok(ForestParams {
        trees,
        arity: train.arity,
    })
}

pub(crate) fn predict_tree(params: &TreeParams, x: &[f64]) -> usize {
    let mut node = &params.nodes[0];
    while node.left != 0 {
        node = if x[node.feature] <= node.threshold {
            &params.nodes[node.left]
        } else {
            &params.nodes[node.right]
        };
    }
    node.label
}

pub(crate) fn predict_forest(params: &ForestParams, x: &[f64]) -> usize {
    let mut votes = vec![0usize; params.arity];
    for tree in &params.trees {
        votes[predict_tree(tree, x)] += 1;
    }
    let mut best = 0;
    for (label, &v) in votes.iter().enumerate().skip(1) {
        if v > votes[best] {
            best = label;
        }
    }
    best
}

fn int_sqrt(n: usize) -> usize {
    (float::sqrt(n as f64) + 1e-9) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Example, FeatureShape, LabeledDataset};
    use crate::learners::{fit as model_fit, LearnerKind, LearnerSpec};

    fn xor_ds() -> LabeledDataset {
        // consistent, duplicate-free data a linear model cannot fit
        let mut examples = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                examples.push(Example {
                    features: vec![i as f64, j as f64],
                    label: usize::from((i < 5) ^ (j < 5)),
                });
            }
        }
        LabeledDataset::new(examples, FeatureShape::Flat(2), 2, "xor").unwrap()
    }

    #[test]
    fn unlimited_depth_fits_consistent_data_exactly() {
        let ds = xor_ds();
        let spec = LearnerSpec::new(
            LearnerKind::DecisionTree(TreeConfig::default()),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        for (p, e) in preds.iter().zip(ds.examples()) {
            assert_eq!(*p, e.label, "training precision must be 1.0");
        }
    }

    #[test]
    fn forest_fits_xor() {
        let ds = xor_ds();
        let spec = LearnerSpec::new(
            LearnerKind::RandomForest(ForestConfig {
                trees: 20,
                ..ForestConfig::default()
            }),
            RngSeed(1),
        );
        let model = model_fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        let correct = preds
            .iter()
            .zip(ds.examples())
            .filter(|(p, e)| **p == e.label)
            .count();
        assert!(correct >= 95, "forest should fit xor nearly exactly, got {correct}/100");
    }

    #[test]
    fn depth_one_tree_is_a_stump() {
        let ds = xor_ds();
        let spec = LearnerSpec::new(
            LearnerKind::DecisionTree(TreeConfig {
                max_depth: 1,
                min_leaf: 1,
            }),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        if let crate::learners::ModelParams::DecisionTree(p) = model.params() {
            assert!(p.nodes.len() <= 3);
        } else {
            panic!("expected tree params");
        }
    }

    #[test]
    fn split_tie_break_prefers_lowest_feature_and_threshold() {
        // both features separate the classes perfectly; feature 0 must win
        let examples = vec![
            Example {
                features: vec![0.0, 0.0],
                label: 0,
            },
            Example {
                features: vec![0.0, 0.0],
                label: 0,
            },
            Example {
                features: vec![1.0, 1.0],
                label: 1,
            },
            Example {
                features: vec![1.0, 1.0],
                label: 1,
            },
        ];
        let ds = LabeledDataset::new(examples, FeatureShape::Flat(2), 2, "tie").unwrap();
        let spec = LearnerSpec::new(
            LearnerKind::DecisionTree(TreeConfig::default()),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        if let crate::learners::ModelParams::DecisionTree(p) = model.params() {
            assert_eq!(p.nodes[0].feature, 0);
            assert_eq!(p.nodes[0].threshold, 0.5);
        } else {
            panic!("expected tree params");
        }
    }
}
