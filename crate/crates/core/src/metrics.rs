//! Confusion matrices and the accuracy pair (naive precision, Matthews
//! coefficient) reported for every experiment.
//!
//! The Matthews coefficient is computed from the Pearson chi-squared of
//! the confusion matrix against the independence model and normalized as
//! `phi = sqrt(chi2 / (N * (n - 1)))` with `N` the validation count and
//! `n` the label arity (Cramer's V). This normalization reaches 1.0 on
//! perfect n-ary classification and, for `n = 2`, equals the classical
//! binary MCC in absolute value; the binary sign is restored from
//! `TP*TN - FP*FN`. Cells whose expected count is zero are skipped.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::float;
use crate::Result;

/// Counts of (actual, predicted) label pairs; entry `(i, j)` is the
/// number of validation examples with actual label `i` predicted as `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    counts: Vec<u64>,
    n: usize,
}

impl ConfusionMatrix {
    /// Builds the matrix from parallel lists of actual and predicted labels.
    pub fn from_labels(actual: &[usize], predicted: &[usize], n: usize) -> Result<Self> {
        if actual.len() != predicted.len() {
            return Err(Error::DimensionMismatch {
                expected: actual.len(),
                got: predicted.len(),
            });
        }
        if actual.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut counts = vec![0u64; n * n];
        for (&a, &p) in actual.iter().zip(predicted) {
            if a >= n || p >= n {
                return Err(Error::InvalidData(format!(
                    "label out of range [0, {n}): actual {a}, predicted {p}"
                )));
            }
            counts[a * n + p] += 1;
        }
        Ok(ConfusionMatrix { counts, n })
    }

    /// Builds the matrix directly from counts (row-major, `n * n` entries).
    pub fn from_counts(counts: Vec<u64>, n: usize) -> Result<Self> {
        if counts.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: counts.len(),
            });
        }
        Ok(ConfusionMatrix { counts, n })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn get(&self, actual: usize, predicted: usize) -> u64 {
        self.counts[actual * self.n + predicted]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.counts[i * self.n..(i + 1) * self.n].iter().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.counts[i * self.n + j]).sum())
            .collect()
    }

    fn trace(&self) -> u64 {
        (0..self.n).map(|i| self.counts[i * self.n + i]).sum()
    }
}

/// The reported accuracy measure: (naive precision, Matthews phi).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AccuracyPair {
    pub precision: f64,
    pub phi: f64,
}

/// Fraction of validation examples predicted exactly correctly.
pub fn naive_precision(m: &ConfusionMatrix) -> Result<f64> {
    let total = m.total();
    if total == 0 {
        return Err(Error::InvalidData("confusion matrix has zero total".into()));
    }
    Ok(m.trace() as f64 / total as f64)
}

/// Matthews coefficient; see the module docs for the normalization.
pub fn matthews_phi(m: &ConfusionMatrix) -> Result<f64> {
    let total = m.total();
    if total == 0 {
        return Err(Error::InvalidData("confusion matrix has zero total".into()));
    }
    let n = m.arity();
    if n < 2 {
        return Ok(1.0);
    }
    let rows = m.row_sums();
    let cols = m.col_sums();
    let total_f = total as f64;
    let mut chi2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let expected = rows[i] as f64 * cols[j] as f64 / total_f;
            if expected > 0.0 {
                let diff = m.get(i, j) as f64 - expected;
                chi2 += diff * diff / expected;
            }
        }
    }
    let value = float::sqrt(chi2 / (total_f * (n as f64 - 1.0)));
    if n == 2 {
        // restore the sign of the classical binary MCC
        let tp = m.get(1, 1) as f64;
        let tn = m.get(0, 0) as f64;
        let fp = m.get(0, 1) as f64;
        let fn_ = m.get(1, 0) as f64;
        if tp * tn - fp * fn_ < 0.0 {
            return Ok(-value);
        }
    }
    Ok(value)
}

/// Computes the full accuracy pair from actual/predicted label lists.
pub fn accuracy_pair(actual: &[usize], predicted: &[usize], n: usize) -> Result<AccuracyPair> {
    let m = ConfusionMatrix::from_labels(actual, predicted, n)?;
    Ok(AccuracyPair {
        precision: naive_precision(&m)?,
        phi: matthews_phi(&m)?,
    })
}

/// Per-fold accuracy pairs with their sample mean and population
/// standard deviation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CvSummary {
    pub per_fold: Vec<AccuracyPair>,
    pub mean_precision: f64,
    pub std_precision: f64,
    pub mean_phi: f64,
    pub std_phi: f64,
}

/// Aggregates cross-validation folds into mean and population standard
/// deviation of each accuracy component.
pub fn cross_val_aggregate(pairs: &[AccuracyPair]) -> Result<CvSummary> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("no folds to aggregate".into()));
    }
    let k = pairs.len() as f64;
    let mean_precision = pairs.iter().map(|p| p.precision).sum::<f64>() / k;
    let mean_phi = pairs.iter().map(|p| p.phi).sum::<f64>() / k;
    let var_p = pairs
        .iter()
        .map(|p| (p.precision - mean_precision) * (p.precision - mean_precision))
        .sum::<f64>()
        / k;
    let var_phi = pairs
        .iter()
        .map(|p| (p.phi - mean_phi) * (p.phi - mean_phi))
        .sum::<f64>()
        / k;
    Ok(CvSummary {
        per_fold: pairs.to_vec(),
        mean_precision,
        std_precision: float::sqrt(var_p),
        mean_phi,
        std_phi: float::sqrt(var_phi),
    })
}
