//! Labeled datasets and the conditioning steps applied before training:
//! balancing, permutation augmentation, zero padding, train/validation
//! splitting and k-fold partitioning.
//!
//! A [`LabeledDataset`] is immutable once constructed; every operation
//! returns a new dataset and is a pure function of its inputs and seed.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::rng::{Rng, RngSeed};
use crate::Result;

/// Shape of one feature vector: flat, or a row-major matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FeatureShape {
    Flat(usize),
    Matrix { rows: usize, cols: usize },
}

impl FeatureShape {
    /// Total number of features per example.
    pub fn dim(&self) -> usize {
        match *self {
            FeatureShape::Flat(d) => d,
            FeatureShape::Matrix { rows, cols } => rows * cols,
        }
    }
}

/// One (feature vector, category label) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub features: Vec<f64>,
    pub label: usize,
}

/// An ordered collection of examples with shape and label metadata.
///
/// Invariants, enforced at construction:
/// - every example's feature vector has exactly `feature_shape.dim()` entries,
/// - every feature value is finite,
/// - every label is in `[0, label_arity)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    examples: Vec<Example>,
    feature_shape: FeatureShape,
    label_arity: usize,
    task_id: String,
}

impl LabeledDataset {
    pub fn new(
        examples: Vec<Example>,
        feature_shape: FeatureShape,
        label_arity: usize,
        task_id: &str,
    ) -> Result<Self> {
        if label_arity == 0 {
            return Err(Error::InvalidArgument("label arity must be positive".into()));
        }
        if feature_shape.dim() == 0 {
            return Err(Error::InvalidArgument("feature dimension must be positive".into()));
        }
        let d = feature_shape.dim();
        for (i, ex) in examples.iter().enumerate() {
            if ex.features.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: ex.features.len(),
                });
            }
            if ex.features.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("feature in example {i}")));
            }
            if ex.label >= label_arity {
                return Err(Error::InvalidData(format!(
                    "label {} out of range [0, {}) in example {}",
                    ex.label, label_arity, i
                )));
            }
        }
        Ok(LabeledDataset {
            examples,
            feature_shape,
            label_arity,
            task_id: task_id.to_string(),
        })
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn feature_shape(&self) -> FeatureShape {
        self.feature_shape
    }

    /// Number of features per example.
    pub fn dim(&self) -> usize {
        self.feature_shape.dim()
    }

    pub fn label_arity(&self) -> usize {
        self.label_arity
    }

    pub fn task_id(&self) -> &str {
        &self.task_id
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Examples per label class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.label_arity];
        for ex in &self.examples {
            counts[ex.label] += 1;
        }
        counts
    }

    /// The labels of all examples, in order.
    pub fn labels(&self) -> Vec<usize> {
        self.examples.iter().map(|e| e.label).collect()
    }

    /// A copy with the same metadata and the given examples.
    pub fn with_examples(&self, examples: Vec<Example>) -> Result<Self> {
        LabeledDataset::new(examples, self.feature_shape, self.label_arity, &self.task_id)
    }

    /// A copy restricted to the given example indices, in the given order.
    fn subset(&self, indices: &[usize]) -> Self {
        LabeledDataset {
            examples: indices.iter().map(|&i| self.examples[i].clone()).collect(),
            feature_shape: self.feature_shape,
            label_arity: self.label_arity,
            task_id: self.task_id.clone(),
        }
    }
}

/// Train/validation pair produced by [`split_train_val`] and [`kfold`].
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub train: LabeledDataset,
    pub validation: LabeledDataset,
}

/// Down-samples every class to the size of the smallest one, then
/// shuffles.
///
/// Surviving examples are a uniform random subsample of each larger
/// class; the output is a sub-multiset of the input.
pub fn balance_downsample(ds: &LabeledDataset, seed: RngSeed) -> Result<LabeledDataset> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let counts = ds.class_counts();
    if let Some(label) = counts.iter().position(|&c| c == 0) {
        return Err(Error::MissingClass { label });
    }
    let m = *counts.iter().min().expect("arity > 0");

    let mut rng = Rng::from_seed(seed.derive("balance"));
    let mut keep: Vec<usize> = Vec::with_capacity(m * ds.label_arity());
    for label in 0..ds.label_arity() {
        let members: Vec<usize> = (0..ds.len())
            .filter(|&i| ds.examples[i].label == label)
            .collect();
        if members.len() == m {
            keep.extend_from_slice(&members);
        } else {
            let picks = rng.sample_indices(members.len(), m);
            keep.extend(picks.into_iter().map(|p| members[p]));
        }
    }
    rng.shuffle(&mut keep);
    Ok(ds.subset(&keep))
}

/// How row/column permutations are drawn in [`augment_permutations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PermutationMode {
    /// Rows and columns permuted by independently drawn permutations.
    IndependentRowsCols,
    /// One permutation applied to both rows and columns (requires a
    /// square shape; conjugation `P A P^T`).
    Simultaneous,
}

/// Enlarges a matrix-shaped dataset with label-preserving row/column
/// permutations.
///
/// For each input example, `copies` permuted copies are appended after
/// the retained originals. Output order: all originals first (input
/// order), then copy 1 of every example, copy 2, and so on.
pub fn augment_permutations(
    ds: &LabeledDataset,
    mode: PermutationMode,
    copies: usize,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    let (rows, cols) = match ds.feature_shape() {
        FeatureShape::Matrix { rows, cols } => (rows, cols),
        FeatureShape::Flat(_) => {
            return Err(Error::BadShape("augmentation needs a matrix shape".into()))
        }
    };
    if mode == PermutationMode::Simultaneous && rows != cols {
        return Err(Error::BadShape(format!(
            "simultaneous permutation needs a square shape, got {rows}x{cols}"
        )));
    }
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be positive".into()));
    }

    let mut rng = Rng::from_seed(seed.derive("augment"));
    let mut out: Vec<Example> = Vec::with_capacity(ds.len() * (copies + 1));
    out.extend(ds.examples().iter().cloned());
    for _ in 0..copies {
        for ex in ds.examples() {
            let sigma = rng.permutation(rows);
            let tau = match mode {
                PermutationMode::IndependentRowsCols => rng.permutation(cols),
                PermutationMode::Simultaneous => sigma.clone(),
            };
            let mut features = vec![0.0; rows * cols];
            // entry (r, c) of the copy reads from (sigma[r], tau[c])
            for r in 0..rows {
                let src = sigma[r] * cols;
                let dst = r * cols;
                for c in 0..cols {
                    features[dst + c] = ex.features[src + tau[c]];
                }
            }
            out.push(Example {
                features,
                label: ex.label,
            });
        }
    }
    ds.with_examples(out)
}

/// Embeds every matrix at the top-left of a `rows` x `cols` zero matrix.
pub fn pad_to_shape(ds: &LabeledDataset, rows: usize, cols: usize) -> Result<LabeledDataset> {
    let (r0, c0) = match ds.feature_shape() {
        FeatureShape::Matrix { rows, cols } => (rows, cols),
        FeatureShape::Flat(_) => return Err(Error::BadShape("padding needs a matrix shape".into())),
    };
    if r0 > rows || c0 > cols {
        return Err(Error::BadShape(format!(
            "matrix {r0}x{c0} exceeds padding target {rows}x{cols} (example 0)"
        )));
    }
    if r0 == rows && c0 == cols {
        return Ok(ds.clone());
    }
    let examples = ds
        .examples()
        .iter()
        .map(|ex| {
            let mut features = vec![0.0; rows * cols];
            for r in 0..r0 {
                features[r * cols..r * cols + c0]
                    .copy_from_slice(&ex.features[r * c0..(r + 1) * c0]);
            }
            Example {
                features,
                label: ex.label,
            }
        })
        .collect();
    LabeledDataset::new(
        examples,
        FeatureShape::Matrix { rows, cols },
        ds.label_arity(),
        ds.task_id(),
    )
}

/// Pads matrices of varying sizes (given per example) to a common shape.
///
/// `sizes[i]` is the true `(rows, cols)` of example `i`, whose features
/// are stored row-major at that size. Errors name the first offending
/// example.
pub fn pad_ragged_to_shape(
    examples: &[(Vec<f64>, (usize, usize), usize)],
    rows: usize,
    cols: usize,
    label_arity: usize,
    task_id: &str,
) -> Result<LabeledDataset> {
    let mut out = Vec::with_capacity(examples.len());
    for (i, (features, (r0, c0), label)) in examples.iter().enumerate() {
        if *r0 > rows || *c0 > cols {
            return Err(Error::BadShape(format!(
                "matrix {r0}x{c0} exceeds padding target {rows}x{cols} (example {i})"
            )));
        }
        if features.len() != r0 * c0 {
            return Err(Error::DimensionMismatch {
                expected: r0 * c0,
                got: features.len(),
            });
        }
        let mut padded = vec![0.0; rows * cols];
        for r in 0..*r0 {
            padded[r * cols..r * cols + c0].copy_from_slice(&features[r * c0..(r + 1) * c0]);
        }
        out.push(Example {
            features: padded,
            label: *label,
        });
    }
    LabeledDataset::new(out, FeatureShape::Matrix { rows, cols }, label_arity, task_id)
}

/// Stratified train/validation split.
///
/// Each class is split at the same fraction; the validation share is
/// rounded down (floor-for-validation), so `|train|/|total|` matches the
/// requested fraction within one example per class.
pub fn split_train_val(
    ds: &LabeledDataset,
    train_fraction: f64,
    seed: RngSeed,
) -> Result<SplitResult> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "train fraction must be in (0,1), got {train_fraction}"
        )));
    }
    if ds.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least 2 examples to split".into(),
        ));
    }

    let mut rng = Rng::from_seed(seed.derive("split"));
    let mut train_idx: Vec<usize> = Vec::new();
    let mut val_idx: Vec<usize> = Vec::new();
    for label in 0..ds.label_arity() {
        let mut members: Vec<usize> = (0..ds.len())
            .filter(|&i| ds.examples[i].label == label)
            .collect();
        if members.is_empty() {
            continue;
        }
        rng.shuffle(&mut members);
        // floor-for-validation; the epsilon absorbs binary round-off in
        // products like 5 * (1 - 0.8)
        let n_val = ((members.len() as f64) * (1.0 - train_fraction) + 1e-9) as usize;
        val_idx.extend_from_slice(&members[..n_val]);
        train_idx.extend_from_slice(&members[n_val..]);
    }
    rng.shuffle(&mut train_idx);
    rng.shuffle(&mut val_idx);
    Ok(SplitResult {
        train: ds.subset(&train_idx),
        validation: ds.subset(&val_idx),
    })
}

/// Partitions the dataset into `k` folds of size differing by at most
/// one; fold `i`'s validation set is part `i` and its train set is the
/// union of the others.
pub fn kfold(ds: &LabeledDataset, k: usize, seed: RngSeed) -> Result<Vec<SplitResult>> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    if k > ds.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {} exceeds dataset size {}",
            k,
            ds.len()
        )));
    }

    let mut rng = Rng::from_seed(seed.derive("kfold"));
    let order = rng.permutation(ds.len());
    // Parts of size n/k, the first n%k parts one element larger.
    let base = ds.len() / k;
    let extra = ds.len() % k;
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let size = base + usize::from(i < extra);
        let val: Vec<usize> = order[start..start + size].to_vec();
        let train: Vec<usize> = order[..start]
            .iter()
            .chain(order[start + size..].iter())
            .copied()
            .collect();
        folds.push(SplitResult {
            train: ds.subset(&train),
            validation: ds.subset(&val),
        });
        start += size;
    }
    Ok(folds)
}

/// Removes exact duplicate feature vectors, keeping first occurrences.
///
/// Equality is exact (bit pattern per f64), matching the generators'
/// "remove repeats" step.
pub fn dedup_exact(examples: Vec<Example>) -> Vec<Example> {
    let mut seen: alloc::collections::BTreeSet<Vec<u64>> = alloc::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(examples.len());
    for ex in examples {
        let key: Vec<u64> = ex.features.iter().map(|v| v.to_bits()).collect();
        if seen.insert(key) {
            out.push(ex);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_ds(labels: &[usize], arity: usize) -> LabeledDataset {
        let examples = labels
            .iter()
            .enumerate()
            .map(|(i, &label)| Example {
                features: vec![i as f64, (i * i) as f64],
                label,
            })
            .collect();
        LabeledDataset::new(examples, FeatureShape::Flat(2), arity, "test").unwrap()
    }

    #[test]
    fn construction_rejects_bad_examples() {
        let err = LabeledDataset::new(
            vec![Example {
                features: vec![1.0],
                label: 0,
            }],
            FeatureShape::Flat(2),
            2,
            "t",
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));

        let err = LabeledDataset::new(
            vec![Example {
                features: vec![1.0, f64::NAN],
                label: 0,
            }],
            FeatureShape::Flat(2),
            2,
            "t",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));

        let err = LabeledDataset::new(
            vec![Example {
                features: vec![1.0, 2.0],
                label: 2,
            }],
            FeatureShape::Flat(2),
            2,
            "t",
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidData(_)));
    }

    #[test]
    fn balance_downsamples_to_min_class() {
        let mut labels = vec![0; 100];
        labels.extend(vec![1; 40]);
        let ds = flat_ds(&labels, 2);
        let balanced = balance_downsample(&ds, RngSeed(1)).unwrap();
        assert_eq!(balanced.class_counts(), vec![40, 40]);
    }

    #[test]
    fn balance_of_balanced_is_reshuffle() {
        let labels: Vec<usize> = (0..100).map(|i| i % 2).collect();
        let ds = flat_ds(&labels, 2);
        let balanced = balance_downsample(&ds, RngSeed(2)).unwrap();
        assert_eq!(balanced.len(), 100);
        // same multiset of feature vectors
        let mut a: Vec<Vec<u64>> = ds
            .examples()
            .iter()
            .map(|e| e.features.iter().map(|v| v.to_bits()).collect())
            .collect();
        let mut b: Vec<Vec<u64>> = balanced
            .examples()
            .iter()
            .map(|e| e.features.iter().map(|v| v.to_bits()).collect())
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn balance_errors() {
        let ds = flat_ds(&[], 2);
        assert_eq!(balance_downsample(&ds, RngSeed(0)).unwrap_err(), Error::EmptyDataset);
        let ds = flat_ds(&[0, 0, 0], 2);
        assert_eq!(
            balance_downsample(&ds, RngSeed(0)).unwrap_err(),
            Error::MissingClass { label: 1 }
        );
    }

    #[test]
    fn balance_output_is_subset_of_input() {
        let mut labels = vec![0; 30];
        labels.extend(vec![1; 11]);
        labels.extend(vec![2; 17]);
        let ds = flat_ds(&labels, 3);
        let balanced = balance_downsample(&ds, RngSeed(3)).unwrap();
        assert_eq!(balanced.class_counts(), vec![11, 11, 11]);
        for ex in balanced.examples() {
            assert!(ds.examples().iter().any(|e| e == ex));
        }
    }

    fn matrix_ds(mats: &[(Vec<f64>, usize)], rows: usize, cols: usize) -> LabeledDataset {
        let examples = mats
            .iter()
            .map(|(m, label)| Example {
                features: m.clone(),
                label: *label,
            })
            .collect();
        LabeledDataset::new(
            examples,
            FeatureShape::Matrix { rows, cols },
            2,
            "test-matrix",
        )
        .unwrap()
    }

    #[test]
    fn augment_preserves_labels_and_multiset_per_row() {
        let m = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let ds = matrix_ds(&[(m.clone(), 1)], 2, 3);
        let aug = augment_permutations(&ds, PermutationMode::IndependentRowsCols, 4, RngSeed(7))
            .unwrap();
        assert_eq!(aug.len(), 5);
        for ex in aug.examples() {
            assert_eq!(ex.label, 1);
            // the multiset of all entries is invariant under permutation
            let mut v = ex.features.clone();
            v.sort_by(f64::total_cmp);
            assert_eq!(v, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        }
        // originals retained up front
        assert_eq!(aug.examples()[0].features, m);
    }

    #[test]
    fn simultaneous_augment_preserves_symmetry_and_diagonal() {
        // 4-cycle adjacency matrix
        let a = vec![
            0.0, 1.0, 0.0, 1.0, //
            1.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 1.0, //
            1.0, 0.0, 1.0, 0.0,
        ];
        let ds = matrix_ds(&[(a, 0)], 4, 4);
        let aug =
            augment_permutations(&ds, PermutationMode::Simultaneous, 10, RngSeed(11)).unwrap();
        for ex in aug.examples() {
            for r in 0..4 {
                assert_eq!(ex.features[r * 4 + r], 0.0);
                for c in 0..4 {
                    assert_eq!(ex.features[r * 4 + c], ex.features[c * 4 + r]);
                }
            }
        }
    }

    #[test]
    fn simultaneous_augment_rejects_non_square() {
        let ds = matrix_ds(&[(vec![0.0; 6], 0)], 2, 3);
        assert!(augment_permutations(&ds, PermutationMode::Simultaneous, 1, RngSeed(0)).is_err());
    }

    #[test]
    fn pad_embeds_top_left() {
        let ds = matrix_ds(&[(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 0)], 2, 3);
        let padded = pad_to_shape(&ds, 3, 4).unwrap();
        assert_eq!(
            padded.examples()[0].features,
            vec![1.0, 2.0, 3.0, 0.0, 4.0, 5.0, 6.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        );
        // already at target: unchanged
        let same = pad_to_shape(&padded, 3, 4).unwrap();
        assert_eq!(same, padded);
        // too small target: error
        assert!(pad_to_shape(&ds, 1, 3).is_err());
    }

    #[test]
    fn split_is_stratified_partition() {
        let labels: Vec<usize> = (0..10).map(|i| i / 5).collect();
        let ds = flat_ds(&labels, 2);
        let split = split_train_val(&ds, 0.8, RngSeed(4)).unwrap();
        assert_eq!(split.train.len(), 8);
        assert_eq!(split.validation.len(), 2);
        assert_eq!(split.train.class_counts(), vec![4, 4]);
        assert_eq!(split.validation.class_counts(), vec![1, 1]);
        // partition: multisets add up
        let mut all: Vec<Vec<u64>> = split
            .train
            .examples()
            .iter()
            .chain(split.validation.examples())
            .map(|e| e.features.iter().map(|v| v.to_bits()).collect())
            .collect();
        all.sort();
        let mut orig: Vec<Vec<u64>> = ds
            .examples()
            .iter()
            .map(|e| e.features.iter().map(|v| v.to_bits()).collect())
            .collect();
        orig.sort();
        assert_eq!(all, orig);
    }

    #[test]
    fn split_is_deterministic() {
        let labels: Vec<usize> = (0..10).map(|i| i % 2).collect();
        let ds = flat_ds(&labels, 2);
        let a = split_train_val(&ds, 0.5, RngSeed(9)).unwrap();
        let b = split_train_val(&ds, 0.5, RngSeed(9)).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.validation, b.validation);
    }

    #[test]
    fn split_rejects_bad_fraction() {
        let ds = flat_ds(&[0, 1], 2);
        assert!(split_train_val(&ds, 0.0, RngSeed(0)).is_err());
        assert!(split_train_val(&ds, 1.0, RngSeed(0)).is_err());
    }

    #[test]
    fn kfold_partitions_validation_sets() {
        let labels: Vec<usize> = (0..10).map(|i| i % 2).collect();
        let ds = flat_ds(&labels, 2);
        let folds = kfold(&ds, 5, RngSeed(13)).unwrap();
        assert_eq!(folds.len(), 5);
        let mut seen: Vec<Vec<u64>> = Vec::new();
        for fold in &folds {
            assert_eq!(fold.validation.len(), 2);
            assert_eq!(fold.train.len(), 8);
            for ex in fold.validation.examples() {
                seen.push(ex.features.iter().map(|v| v.to_bits()).collect());
            }
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 10, "validation folds partition the dataset");
        // determinism
        let again = kfold(&ds, 5, RngSeed(13)).unwrap();
        for (a, b) in folds.iter().zip(&again) {
            assert_eq!(a.validation, b.validation);
        }
    }

    #[test]
    fn kfold_rejects_k_larger_than_dataset() {
        let ds = flat_ds(&[0, 1, 0], 2);
        assert!(kfold(&ds, 4, RngSeed(0)).is_err());
        assert!(kfold(&ds, 1, RngSeed(0)).is_err());
    }

    #[test]
    fn dedup_keeps_first_occurrence() {
        let examples = vec![
            Example {
                features: vec![1.0, 2.0],
                label: 0,
            },
            Example {
                features: vec![1.0, 2.0],
                label: 1,
            },
            Example {
                features: vec![3.0, 4.0],
                label: 1,
            },
        ];
        let out = dedup_exact(examples);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].label, 0);
    }
}
