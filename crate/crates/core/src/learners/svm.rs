//! Soft-margin support vector machine (linear and Gaussian kernel)
//! trained by sequential minimal optimization on the dual.
//!
//! The solver keeps the full dual gradient, picks the first index of the
//! working pair by maximal violation and the second by the best
//! second-order objective decrease, and stops when the violation drops
//! below `tol` (or at `max_iter`, whichever comes first). Kernel rows
//! are cached as `f32` in a least-recently-used store with a byte
//! budget. Multiclass problems train one-vs-rest with the highest
//! decision value winning and ties going to the lowest label.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::float;
use crate::rng::RngSeed;
use crate::Result;

use super::{check_positive, TrainMatrix};

/// Gaussian-kernel width policy.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Gamma {
    /// `1 / d` (the default).
    Dim,
    /// `1 / (d * var)` with `var` the variance of all training entries,
    /// suited to raw integer matrices whose scale grows with size.
    Scale,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SvmKernel {
    Linear,
    Gaussian { gamma: Gamma },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SvmConfig {
    pub kernel: SvmKernel,
    pub c: f64,
    pub tol: f64,
    /// Iteration cap; 0 means `max(100_000, 10 n)`.
    pub max_iter: usize,
    /// Kernel row cache budget in MiB.
    pub cache_mb: usize,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            kernel: SvmKernel::Gaussian { gamma: Gamma::Dim },
            c: 1.0,
            tol: 1e-3,
            max_iter: 0,
            cache_mb: 512,
        }
    }
}

impl SvmConfig {
    pub fn linear() -> Self {
        SvmConfig {
            kernel: SvmKernel::Linear,
            ..SvmConfig::default()
        }
    }

    pub fn gaussian(gamma: Gamma) -> Self {
        SvmConfig {
            kernel: SvmKernel::Gaussian { gamma },
            ..SvmConfig::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_positive(self.c, "C")?;
        check_positive(self.tol, "tolerance")?;
        if let SvmKernel::Gaussian {
            gamma: Gamma::Fixed(g),
        } = self.kernel
        {
            check_positive(g, "gamma")?;
        }
        if self.cache_mb == 0 {
            return Err(Error::InvalidArgument("cache budget must be positive".into()));
        }
        Ok(())
    }
}

/// Kernel with its gamma resolved against the training data.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ResolvedKernel {
    Linear,
    Gaussian { gamma: f64 },
}

/// One trained binary margin: either a collapsed linear weight vector or
/// the kernelized support-vector expansion.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BinaryMargin {
    Linear {
        weights: Vec<f64>,
        rho: f64,
    },
    Kernelized {
        /// `alpha_s * y_s` per support vector.
        coeffs: Vec<f64>,
        /// Support vectors, row-major `n_sv` x `d`.
        support: Vec<f64>,
        rho: f64,
        gamma: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SvmParams {
    /// One margin for binary problems; one per class (one-vs-rest)
    /// otherwise.
    pub margins: Vec<BinaryMargin>,
    pub arity: usize,
    pub d: usize,
}

fn resolve_kernel(kernel: SvmKernel, train: &TrainMatrix) -> ResolvedKernel {
    match kernel {
        SvmKernel::Linear => ResolvedKernel::Linear,
        SvmKernel::Gaussian { gamma } => {
            let g = match gamma {
                Gamma::Fixed(g) => g,
                Gamma::Dim => 1.0 / train.d as f64,
                Gamma::Scale => {
                    let n = train.x.len() as f64;
                    let mean = train.x.iter().sum::<f64>() / n;
                    let var = train.x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
                    if var > 0.0 {
                        1.0 / (train.d as f64 * var)
                    } else {
                        1.0 / train.d as f64
                    }
                }
            };
            ResolvedKernel::Gaussian { gamma: g }
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

struct KernelEval<'a> {
    x: &'a [f64],
    n: usize,
    d: usize,
    kernel: ResolvedKernel,
    sq_norms: Vec<f64>,
}

impl<'a> KernelEval<'a> {
    fn new(train: &'a TrainMatrix, kernel: ResolvedKernel) -> Self {
        let sq_norms = (0..train.n)
            .map(|i| dot(train.row(i), train.row(i)))
            .collect();
        KernelEval {
            x: &train.x,
            n: train.n,
            d: train.d,
            kernel,
            sq_norms,
        }
    }

    #[inline]
    fn row_of(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    fn diag(&self, i: usize) -> f64 {
        match self.kernel {
            ResolvedKernel::Linear => self.sq_norms[i],
            ResolvedKernel::Gaussian { .. } => 1.0,
        }
    }

    /// Fills `out[t] = K(i, t)` for all training points.
    fn compute_row(&self, i: usize, out: &mut [f32]) {
        let xi = self.row_of(i);
        let body = |(t, slot): (usize, &mut f32)| {
            let p = dot(xi, self.row_of(t));
            let k = match self.kernel {
                ResolvedKernel::Linear => p,
                ResolvedKernel::Gaussian { gamma } => {
                    float::exp(-gamma * (self.sq_norms[i] + self.sq_norms[t] - 2.0 * p))
                }
            };
            *slot = k as f32;
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            // per-element writes; bit-identical to the serial order
            out.par_iter_mut().enumerate().with_min_len(4096).for_each(|(t, s)| body((t, s)));
        }
        #[cfg(not(feature = "parallel"))]
        out.iter_mut().enumerate().for_each(body);
        debug_assert_eq!(out.len(), self.n);
    }
}

/// Fixed-budget row cache with least-recently-used eviction.
struct RowCache {
    rows: Vec<Vec<f32>>,
    owner: Vec<usize>,
    last_used: Vec<u64>,
    map: BTreeMap<usize, usize>,
    clock: u64,
    n: usize,
    hits: u64,
    misses: u64,
}

const NO_OWNER: usize = usize::MAX;

impl RowCache {
    fn new(capacity_rows: usize, n: usize) -> Self {
        let cap = capacity_rows.max(2).min(n);
        RowCache {
            rows: Vec::with_capacity(cap),
            owner: vec![NO_OWNER; cap],
            last_used: vec![0; cap],
            map: BTreeMap::new(),
            clock: 0,
            n,
            hits: 0,
            misses: 0,
        }
    }

    /// Returns the slot holding row `i`, computing it on a miss.
    fn fetch(&mut self, i: usize, eval: &KernelEval<'_>) -> usize {
        self.clock += 1;
        if let Some(&slot) = self.map.get(&i) {
            self.last_used[slot] = self.clock;
            self.hits += 1;
            return slot;
        }
        self.misses += 1;
        let slot = if self.rows.len() < self.owner.len() {
            self.rows.push(vec![0.0_f32; self.n]);
            self.rows.len() - 1
        } else {
            // evict the least recently used slot
            let mut oldest = 0;
            for s in 1..self.last_used.len() {
                if self.last_used[s] < self.last_used[oldest] {
                    oldest = s;
                }
            }
            self.map.remove(&self.owner[oldest]);
            oldest
        };
        eval.compute_row(i, &mut self.rows[slot]);
        self.owner[slot] = i;
        self.last_used[slot] = self.clock;
        self.map.insert(i, slot);
        slot
    }

    fn row(&self, slot: usize) -> &[f32] {
        &self.rows[slot]
    }
}

struct SmoOutcome {
    alpha: Vec<f64>,
    rho: f64,
    converged: bool,
}

/// Solves the binary C-SVC dual for labels `y` in {-1, +1}.
fn smo_solve(
    eval: &KernelEval<'_>,
    y: &[f64],
    c: f64,
    tol: f64,
    max_iter: usize,
    cache: &mut RowCache,
) -> SmoOutcome {
    let n = y.len();
    let mut alpha = vec![0.0_f64; n];
    // gradient of 1/2 a'Qa - e'a, so G = Qa - 1
    let mut grad = vec![-1.0_f64; n];
    let diag: Vec<f64> = (0..n).map(|t| eval.diag(t)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        // first index: the most violating one among the "up" set
        let mut gmax = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        for t in 0..n {
            let up = (y[t] > 0.0 && alpha[t] < c) || (y[t] < 0.0 && alpha[t] > 0.0);
            if up {
                let v = -y[t] * grad[t];
                if v > gmax {
                    gmax = v;
                    i = t;
                }
            }
        }
        if i == usize::MAX {
            converged = true;
            break;
        }

        let slot_i = cache.fetch(i, eval);

        // second index: best second-order decrease among the "down" set
        let mut gmax2 = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut best_obj = f64::INFINITY;
        {
            let row_i = cache.row(slot_i);
            for t in 0..n {
                let down = (y[t] > 0.0 && alpha[t] > 0.0) || (y[t] < 0.0 && alpha[t] < c);
                if !down {
                    continue;
                }
                let yg = y[t] * grad[t];
                if yg > gmax2 {
                    gmax2 = yg;
                }
                let grad_diff = gmax + yg;
                if grad_diff > 0.0 {
                    let a = (diag[i] + diag[t] - 2.0 * f64::from(row_i[t])).max(1e-12);
                    let obj = -(grad_diff * grad_diff) / a;
                    if obj < best_obj {
                        best_obj = obj;
                        j = t;
                    }
                }
            }
        }
        if gmax - (-gmax2) < tol || j == usize::MAX {
            converged = true;
            break;
        }

        let slot_j = cache.fetch(j, eval);
        let k_ii = diag[i];
        let k_jj = diag[j];
        let k_ij = f64::from(cache.row(cache.map[&i])[j]);
        let old_ai = alpha[i];
        let old_aj = alpha[j];

        // two-variable analytic update with box clipping;
        // in kernel space the curvature is K_ii + K_jj - 2 K_ij for
        // both label combinations
        if y[i] != y[j] {
            let quad = (k_ii + k_jj - 2.0 * k_ij).max(1e-12);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else {
                if alpha[i] < 0.0 {
                    alpha[i] = 0.0;
                    alpha[j] = -diff;
                }
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = c + diff;
                }
            }
        } else {
            let quad = (k_ii + k_jj - 2.0 * k_ij).max(1e-12);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
                if alpha[i] < 0.0 {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }
        }

        let delta_i = (alpha[i] - old_ai) * y[i];
        let delta_j = (alpha[j] - old_aj) * y[j];
        {
            let (row_i, row_j) = (cache.map[&i], cache.map[&j]);
            debug_assert_ne!(row_i, row_j);
            let ri = &cache.rows[row_i];
            let rj = &cache.rows[row_j];
            let update = |(t, g): (usize, &mut f64)| {
                *g += y[t] * (delta_i * f64::from(ri[t]) + delta_j * f64::from(rj[t]));
            };
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                grad.par_iter_mut()
                    .enumerate()
                    .with_min_len(8192)
                    .for_each(|(t, g)| update((t, g)));
            }
            #[cfg(not(feature = "parallel"))]
            grad.iter_mut().enumerate().for_each(update);
        }
        let _ = slot_j;
        iterations += 1;
    }

    // bias from the free support vectors, or the bound midpoint
    let mut ub = f64::INFINITY;
    let mut lb = f64::NEG_INFINITY;
    let mut sum_free = 0.0;
    let mut nr_free = 0usize;
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            nr_free += 1;
            sum_free += yg;
        }
    }
    let rho = if nr_free > 0 {
        sum_free / nr_free as f64
    } else {
        (ub + lb) / 2.0
    };

    let _ = iterations;
    SmoOutcome {
        alpha,
        rho,
        converged,
    }
}

fn train_margin(
    eval: &KernelEval<'_>,
    train: &TrainMatrix,
    positive_class: usize,
    config: &SvmConfig,
    cache: &mut RowCache,
) -> Result<BinaryMargin> {
    let y: Vec<f64> = train
        .labels
        .iter()
        .map(|&l| if l == positive_class { 1.0 } else { -1.0 })
        .collect();
    let max_iter = if config.max_iter == 0 {
        (10 * train.n).max(100_000)
    } else {
        config.max_iter
    };
    let out = smo_solve(eval, &y, config.c, config.tol, max_iter, cache);
    let _ = out.converged; // capped runs still give a usable margin

    let sv: Vec<usize> = (0..train.n).filter(|&t| out.alpha[t] > 0.0).collect();
    match eval.kernel {
        ResolvedKernel::Linear => {
            let mut weights = vec![0.0; train.d];
            for &t in &sv {
                let coef = out.alpha[t] * y[t];
                for (w, v) in weights.iter_mut().zip(train.row(t)) {
                    *w += coef * v;
                }
            }
            Ok(BinaryMargin::Linear {
                weights,
                rho: out.rho,
            })
        }
        ResolvedKernel::Gaussian { gamma } => {
            let mut coeffs = Vec::with_capacity(sv.len());
            let mut support = Vec::with_capacity(sv.len() * train.d);
            for &t in &sv {
                coeffs.push(out.alpha[t] * y[t]);
                support.extend_from_slice(train.row(t));
            }
            Ok(BinaryMargin::Kernelized {
                coeffs,
                support,
                rho: out.rho,
                gamma,
            })
        }
    }
}

pub(crate) fn fit(config: &SvmConfig, train: &TrainMatrix, _seed: RngSeed) -> Result<SvmParams> {
    let kernel = resolve_kernel(config.kernel, train);
    let eval = KernelEval::new(train, kernel);
    let capacity_rows = (config.cache_mb * 1024 * 1024) / (4 * train.n.max(1));
    let mut cache = RowCache::new(capacity_rows, train.n);

    let margins = if train.arity <= 2 {
        vec![train_margin(&eval, train, 1, config, &mut cache)?]
    } else {
        let mut margins = Vec::with_capacity(train.arity);
        for class in 0..train.arity {
            margins.push(train_margin(&eval, train, class, config, &mut cache)?);
        }
        margins
    };

    Ok(SvmParams {
        margins,
        arity: train.arity,
        d: train.d,
    })
}

/// Decision value of one margin at `x`.
pub fn decision_value(margin: &BinaryMargin, x: &[f64]) -> f64 {
    match margin {
        BinaryMargin::Linear { weights, rho } => dot(weights, x) - rho,
        BinaryMargin::Kernelized {
            coeffs,
            support,
            rho,
            gamma,
        } => {
            let d = x.len();
            let xx = dot(x, x);
            let mut f = -rho;
            for (s, coef) in coeffs.iter().enumerate() {
                let sv = &support[s * d..(s + 1) * d];
                let dist = xx + dot(sv, sv) - 2.0 * dot(sv, x);
                f += coef * float::exp(-gamma * dist);
            }
            f
        }
    }
}

pub(crate) fn predict(params: &SvmParams, x: &[f64]) -> usize {
    if params.arity <= 2 {
        let f = decision_value(&params.margins[0], x);
        usize::from(f > 0.0)
    } else {
        let mut best = 0;
        let mut best_f = f64::NEG_INFINITY;
        for (class, margin) in params.margins.iter().enumerate() {
            let f = decision_value(margin, x);
            if f > best_f {
                best_f = f;
                best = class;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Example, FeatureShape, LabeledDataset};
    use crate::learners::{fit as model_fit, LearnerKind, LearnerSpec, ModelParams};

    fn ring_ds() -> LabeledDataset {
        // class 0 inside the unit circle, class 1 on a ring of radius 3:
        // not linearly separable, easy for a Gaussian kernel
        let mut examples = Vec::new();
        for k in 0..40 {
            let t = k as f64 * core::f64::consts::TAU / 40.0;
            examples.push(Example {
                features: vec![0.5 * libm::cos(t), 0.5 * libm::sin(t)],
                label: 0,
            });
            examples.push(Example {
                features: vec![3.0 * libm::cos(t), 3.0 * libm::sin(t)],
                label: 1,
            });
        }
        LabeledDataset::new(examples, FeatureShape::Flat(2), 2, "ring").unwrap()
    }

    #[test]
    fn gaussian_svm_separates_hard_separable_data() {
        let ds = ring_ds();
        let spec = LearnerSpec::new(
            LearnerKind::Svm(SvmConfig::gaussian(Gamma::Dim)),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        for (p, e) in preds.iter().zip(ds.examples()) {
            assert_eq!(*p, e.label, "all training points must be classified correctly");
        }
    }

    #[test]
    fn decision_sign_flips_under_label_swap() {
        let ds = ring_ds();
        let swapped = ds
            .with_examples(
                ds.examples()
                    .iter()
                    .map(|e| Example {
                        features: e.features.clone(),
                        label: 1 - e.label,
                    })
                    .collect(),
            )
            .unwrap();
        let spec = LearnerSpec::new(
            LearnerKind::Svm(SvmConfig::gaussian(Gamma::Dim)),
            RngSeed(0),
        );
        let a = model_fit(&spec, &ds).unwrap();
        let b = model_fit(&spec, &swapped).unwrap();
        let (ModelParams::Svm(pa), ModelParams::Svm(pb)) = (a.params(), b.params()) else {
            panic!("expected svm params");
        };
        for ex in ds.examples() {
            let x = match a.standardizer() {
                Some(s) => s.transform(&ex.features),
                None => ex.features.clone(),
            };
            let fa = decision_value(&pa.margins[0], &x);
            let fb = decision_value(&pb.margins[0], &x);
            assert!(
                fa * fb <= 1e-9,
                "sign must flip: fa = {fa}, fb = {fb}"
            );
        }
    }

    #[test]
    fn linear_svm_on_separable_blobs() {
        let ds = crate::learners::test_support::blob_dataset(40, 21);
        let spec = LearnerSpec::new(LearnerKind::Svm(SvmConfig::linear()), RngSeed(0));
        let model = model_fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        for (p, e) in preds.iter().zip(ds.examples()) {
            assert_eq!(*p, e.label);
        }
    }

    #[test]
    fn multiclass_one_vs_rest() {
        let mut examples = Vec::new();
        for (label, center) in [(-5.0_f64, 0.0), (5.0, 0.0), (0.0, 5.0)].iter().enumerate() {
            for k in 0..20 {
                examples.push(Example {
                    features: vec![center.0 + (k % 5) as f64 * 0.1, center.1 + (k / 5) as f64 * 0.1],
                    label,
                });
            }
        }
        let ds = LabeledDataset::new(examples, FeatureShape::Flat(2), 3, "triple").unwrap();
        let spec = LearnerSpec::new(
            LearnerKind::Svm(SvmConfig::gaussian(Gamma::Dim)),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        let preds = model.predict_batch(&ds).unwrap();
        let correct = preds
            .iter()
            .zip(ds.examples())
            .filter(|(p, e)| **p == e.label)
            .count();
        assert_eq!(correct, ds.len());
    }

    #[test]
    fn invalid_hyperparameters_rejected() {
        assert!(SvmConfig {
            c: 0.0,
            ..SvmConfig::default()
        }
        .validate()
        .is_err());
        assert!(SvmConfig {
            kernel: SvmKernel::Gaussian {
                gamma: Gamma::Fixed(-1.0)
            },
            ..SvmConfig::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn gamma_scale_resolves_from_data_variance() {
        let ds = ring_ds();
        let spec = LearnerSpec::new(
            LearnerKind::Svm(SvmConfig::gaussian(Gamma::Scale)),
            RngSeed(0),
        );
        let model = model_fit(&spec, &ds).unwrap();
        if let ModelParams::Svm(p) = model.params() {
            if let BinaryMargin::Kernelized { gamma, .. } = &p.margins[0] {
                assert!(*gamma > 0.0 && gamma.is_finite());
            } else {
                panic!("expected kernelized margin");
            }
        }
    }
}
