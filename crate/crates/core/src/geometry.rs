//! Geometric tasks: quadratic root multiplicity (complex and real
//! coefficients), the even/odd parity-function task, and the
//! configuration-matrix Hodge-number task.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::{
    augment_permutations, balance_downsample, dedup_exact, pad_ragged_to_shape, Example,
    FeatureShape, LabeledDataset, PermutationMode,
};
use crate::error::Error;
use crate::rng::{Rng, RngSeed};
use crate::Result;

/// A Gaussian integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn mul(self, other: GaussianInt) -> GaussianInt {
        GaussianInt {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }

    fn sub(self, other: GaussianInt) -> GaussianInt {
        GaussianInt {
            re: self.re - other.re,
            im: self.im - other.im,
        }
    }

    fn scale(self, k: i64) -> GaussianInt {
        GaussianInt {
            re: self.re * k,
            im: self.im * k,
        }
    }
}

/// Discriminant `b^2 - 4ac` of the quadratic `a z^2 + b z + c`.
fn discriminant(a: GaussianInt, b: GaussianInt, c: GaussianInt) -> GaussianInt {
    b.mul(b).sub(a.mul(c).scale(4))
}

/// Root multiplicity of a complex quadratic with Gaussian-integer
/// coefficients in the box `|Re|, |Im| <= bound`, `a != 0`. Features
/// are `(Re a, Im a, Re b, Im b, Re c, Im c)`; label 0 means a repeated
/// root (discriminant zero), label 1 two distinct roots.
///
/// The repeated-root class is the thin surface `b^2 = 4ac` (a few
/// thousand triples at bound 10), which uniform draws essentially never
/// collect, so that class is enumerated exactly while `count` uniform
/// draws populate the distinct-root class. Duplicates removed, classes
/// balanced.
pub fn gen_quadratic_multiplicity(
    count: usize,
    bound: i64,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if count < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    if bound < 1 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    let mut examples = Vec::new();
    let push = |examples: &mut Vec<Example>, a: GaussianInt, b: GaussianInt, c: GaussianInt| {
        let label = usize::from(!discriminant(a, b, c).is_zero());
        examples.push(Example {
            features: vec![
                a.re as f64,
                a.im as f64,
                b.re as f64,
                b.im as f64,
                c.re as f64,
                c.im as f64,
            ],
            label,
        });
    };

    // enumerate b^2 = 4ac exactly: index the squares of the box by value
    let mut squares: alloc::collections::BTreeMap<(i64, i64), Vec<GaussianInt>> =
        alloc::collections::BTreeMap::new();
    let box_values = || {
        (-bound..=bound)
            .flat_map(move |re| (-bound..=bound).map(move |im| GaussianInt { re, im }))
    };
    for b in box_values() {
        let sq = b.mul(b);
        squares.entry((sq.re, sq.im)).or_default().push(b);
    }
    for a in box_values().filter(|a| !a.is_zero()) {
        for c in box_values() {
            let w = a.mul(c).scale(4);
            if let Some(bs) = squares.get(&(w.re, w.im)) {
                for &b in bs {
                    push(&mut examples, a, b, c);
                }
            }
        }
    }

    // sample the distinct-root class
    let mut rng = Rng::from_seed(seed.derive("quadratic-complex"));
    for _ in 0..count {
        let mut draw = |nonzero: bool| loop {
            let g = GaussianInt {
                re: rng.range_i64(-bound, bound),
                im: rng.range_i64(-bound, bound),
            };
            if !nonzero || !g.is_zero() {
                return g;
            }
        };
        let a = draw(true);
        let b = draw(false);
        let c = draw(false);
        if !discriminant(a, b, c).is_zero() {
            push(&mut examples, a, b, c);
        }
    }

    let examples = dedup_exact(examples);
    let ds = LabeledDataset::new(examples, FeatureShape::Flat(6), 2, "quadratic-multiplicity")?;
    if ds.class_counts().iter().any(|&c| c == 0) {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} left a class empty; raise the bound or the sample count"
        )));
    }
    balance_downsample(&ds, seed)
}

/// Number of distinct real roots of a real integer quadratic: label 0,
/// 1 or 2 by the sign of the discriminant. The discriminant-zero class
/// is enumerated exactly (it is a thin surface, like the complex case);
/// the others are sampled. Balanced three-way.
pub fn gen_quadratic_real_roots(count: usize, bound: i64, seed: RngSeed) -> Result<LabeledDataset> {
    if count < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    if bound < 1 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    let label_of = |a: i64, b: i64, c: i64| match (b * b - 4 * a * c).cmp(&0) {
        core::cmp::Ordering::Less => 0,
        core::cmp::Ordering::Equal => 1,
        core::cmp::Ordering::Greater => 2,
    };
    let mut examples = Vec::new();
    // enumerate b^2 = 4ac over the box
    for a in -bound..=bound {
        if a == 0 {
            continue;
        }
        for c in -bound..=bound {
            let w = 4 * a * c;
            if w < 0 {
                continue;
            }
            let root = crate::float::sqrt(w as f64) as i64;
            for b in [root - 1, root, root + 1] {
                if b >= 0 && b <= bound && b * b == w {
                    for sign in [1i64, -1] {
                        if b == 0 && sign < 0 {
                            continue;
                        }
                        examples.push(Example {
                            features: vec![a as f64, (sign * b) as f64, c as f64],
                            label: 1,
                        });
                    }
                }
            }
        }
    }
    // sample the open classes
    let mut rng = Rng::from_seed(seed.derive("quadratic-real"));
    for _ in 0..count {
        let a = loop {
            let v = rng.range_i64(-bound, bound);
            if v != 0 {
                break v;
            }
        };
        let b = rng.range_i64(-bound, bound);
        let c = rng.range_i64(-bound, bound);
        let label = label_of(a, b, c);
        if label != 1 {
            examples.push(Example {
                features: vec![a as f64, b as f64, c as f64],
                label,
            });
        }
    }
    let examples = dedup_exact(examples);
    let ds = LabeledDataset::new(examples, FeatureShape::Flat(3), 3, "quadratic-real-roots")?;
    if ds.class_counts().iter().any(|&c| c == 0) {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} left a root-count class empty"
        )));
    }
    balance_downsample(&ds, seed)
}

/// Even/odd function probes: samples `(x, y)` uniform on
/// `[0, pi] x [-1, 1]` and emits `(x, y, -x, y) -> 1` (even pattern) and
/// `(x, y, -x, -y) -> 0` (odd pattern), half each. Samples with
/// `|y| < 1e-6` are excluded so the two classes stay disjoint.
pub fn gen_parity_functions(count: usize, seed: RngSeed) -> Result<LabeledDataset> {
    if count < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let mut rng = Rng::from_seed(seed.derive("parity"));
    let half = count / 2;
    let mut examples = Vec::with_capacity(2 * half);
    for label in [1usize, 0] {
        for _ in 0..half {
            let x = rng.range_f64(0.0, core::f64::consts::PI);
            let y = loop {
                let v = rng.range_f64(-1.0, 1.0);
                if crate::float::abs(v) >= 1e-6 {
                    break v;
                }
            };
            let y4 = if label == 1 { y } else { -y };
            examples.push(Example {
                features: vec![x, y, -x, y4],
                label,
            });
        }
    }
    let mut rng = Rng::from_seed(seed.derive("parity-shuffle"));
    rng.shuffle(&mut examples);
    LabeledDataset::new(examples, FeatureShape::Flat(4), 2, "parity-functions")
}

/// Integer matrix describing a family of complete-intersection
/// varieties: one row per projective-space factor, one column per
/// polynomial, entries the multi-degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationMatrix {
    pub ambient_dims: Vec<u32>,
    /// Row-major `m x k` degree matrix.
    pub degrees: Vec<u32>,
    pub h11: Option<u8>,
}

/// Shape caps of the classified list: at most 12 rows, 15 columns,
/// entries in 0..=5.
pub const CONFIG_MAX_ROWS: usize = 12;
pub const CONFIG_MAX_COLS: usize = 15;
pub const CONFIG_MAX_ENTRY: u32 = 5;

impl ConfigurationMatrix {
    pub fn new(ambient_dims: Vec<u32>, degrees: Vec<u32>, h11: Option<u8>) -> Result<Self> {
        let cfg = ConfigurationMatrix {
            ambient_dims,
            degrees,
            h11,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn rows(&self) -> usize {
        self.ambient_dims.len()
    }

    pub fn cols(&self) -> usize {
        if self.ambient_dims.is_empty() {
            0
        } else {
            self.degrees.len() / self.ambient_dims.len()
        }
    }

    /// Checks the two defining conditions: the column count equals the
    /// total ambient dimension minus three (complete intersection of a
    /// threefold), and each row sums to its ambient dimension plus one
    /// (vanishing first Chern class), along with the shape caps.
    pub fn validate(&self) -> Result<()> {
        let m = self.rows();
        if m == 0 || m > CONFIG_MAX_ROWS {
            return Err(Error::InvalidData(format!(
                "configuration needs 1..={CONFIG_MAX_ROWS} rows, got {m}"
            )));
        }
        if self.degrees.len() % m != 0 {
            return Err(Error::InvalidData("ragged degree matrix".into()));
        }
        let k = self.cols();
        if k == 0 || k > CONFIG_MAX_COLS {
            return Err(Error::InvalidData(format!(
                "configuration needs 1..={CONFIG_MAX_COLS} columns, got {k}"
            )));
        }
        let total_dim: u32 = self.ambient_dims.iter().sum();
        if total_dim < 3 || k as u32 != total_dim - 3 {
            return Err(Error::InvalidData(format!(
                "column count {k} does not equal total dimension {total_dim} minus 3"
            )));
        }
        for (r, &n_r) in self.ambient_dims.iter().enumerate() {
            let row = &self.degrees[r * k..(r + 1) * k];
            if let Some(&bad) = row.iter().find(|&&q| q > CONFIG_MAX_ENTRY) {
                return Err(Error::InvalidData(format!(
                    "entry {bad} in row {r} exceeds {CONFIG_MAX_ENTRY}"
                )));
            }
            let sum: u32 = row.iter().sum();
            if sum != n_r + 1 {
                return Err(Error::InvalidData(format!(
                    "row {r} sums to {sum}, expected ambient dimension {n_r} + 1"
                )));
            }
        }
        if let Some(h) = self.h11 {
            if !(1..=19).contains(&h) {
                return Err(Error::InvalidData(format!("h11 = {h} outside [1, 19]")));
            }
        }
        Ok(())
    }

    /// The degree matrix as row-major floats (the dimension column is
    /// redundant given the row sums and is not part of the features).
    pub fn features(&self) -> Vec<f64> {
        self.degrees.iter().map(|&q| f64::from(q)).collect()
    }
}

/// Builds the Hodge-number classification task: degree matrices padded
/// to 12 x 15 and augmented with independent row/column permutations;
/// the label is `h11 - 1` in a fixed 19-category head.
pub fn gen_cicy_hodge_task(
    configs: &[ConfigurationMatrix],
    copies: usize,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if configs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut ragged = Vec::with_capacity(configs.len());
    for (i, cfg) in configs.iter().enumerate() {
        cfg.validate()
            .map_err(|e| Error::InvalidData(format!("record {i}: {e}")))?;
        let Some(h11) = cfg.h11 else {
            return Err(Error::InvalidData(format!("record {i} has no h11 label")));
        };
        ragged.push((cfg.features(), (cfg.rows(), cfg.cols()), usize::from(h11) - 1));
    }
    let padded = pad_ragged_to_shape(&ragged, CONFIG_MAX_ROWS, CONFIG_MAX_COLS, 19, "cicy-h11")?;
    augment_permutations(
        &padded,
        PermutationMode::IndependentRowsCols,
        copies,
        seed,
    )
}

/// A task id suffix describing corpus provenance for reports.
pub fn quadratic_task_provenance(bound: i64, count: usize) -> String {
    format!("gaussian integers in +-{bound}, {count} raw draws, dedup + balance")
}
